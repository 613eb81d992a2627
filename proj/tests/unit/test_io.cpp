#include "eqcheck/atm.hpp"
#include "eqcheck/random.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace eqcheck;
using namespace test_support;

TEST_CASE("game files round-trip") {
    for (const char* name : {"coin.game", "detour.game", "pennies.game", "relay.game"}) {
        CAPTURE(name);
        GameSystem g = game(name);
        const std::string text = serialize_game(g);
        CHECK(parse_game(text) == g);
        CHECK(serialize_game(parse_game(text)) == text);
    }
}

TEST_CASE("generated and compiled instances round-trip") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        Instance inst = gen_random_instance(seed);
        GameSystem g = parse_game(serialize_game(inst.game));
        CHECK(g == inst.game);
        for (const auto& t : inst.profile) CHECK(parse_transducer(serialize_transducer(t, g), g) == t);
    }
    ATM atm = parse_atm(read_file(fixture("forall.atm")));
    CHECK(parse_atm(serialize_atm(atm)) == atm);
    CompiledInstance inst = compile(atm, 2);
    GameSystem g = parse_game(serialize_game(inst.game));
    CHECK(g == inst.game);
    for (const auto& t : inst.profile) CHECK(parse_transducer(serialize_transducer(t, g), g) == t);
}

TEST_CASE("horizons in decimal or binary") {
    CHECK(parse_horizon("12") == 12);
    CHECK(parse_horizon("0b1100") == 12);
    CHECK_THROWS(parse_horizon("0b102"));
    CHECK_THROWS(parse_horizon(""));
    GameSystem g = parse_game("game lbits=1 horizon=0b11 bound=1\nstates a\ninit a\nagent 1 actions x goal a\n"
                              "play a: -\ntrans a [] -> a:2\n");
    CHECK(g.horizon == 3);
}

TEST_CASE("parse errors carry positions") {
    const std::string coin = read_file(fixture("coin.game"));
    GameSystem g = game("coin.game");

    auto error_of = [](auto fn) -> std::string {
        try {
            fn();
        } catch (const ParseError& e) {
            return e.message();
        }
        return "";
    };
    CHECK(error_of([&] {
              parse_transducer("transducer agent=1 lbits=3\ntstates s\ninit s\nstep s u -> s\nstep s g -> s\n"
                               "step s d -> s\nout s u -> a:8\n",
                               g);
          }) == "lbits mismatch");
    CHECK(error_of([&] {
              parse_transducer("transducer agent=1 lbits=2\ntstates s\ninit s\nstep s u -> s\nstep s g -> s\n"
                               "step s d -> s\nout s u -> a:5\n",
                               g);
          }) == "probability out of range");

    std::string bad = coin;
    bad.replace(bad.find("g:3"), 3, "g:9");
    try {
        parse_game(bad);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.message() == "probability out of range");
        CHECK(e.line() == 9);
        CHECK(e.column() == 16);
    }
    CHECK(error_of([] { parse_game("game lbits=1 horizon=1 bound=1\nstates a\ninit b\n"); }).find("unknown state") == 0);
    CHECK(error_of([] { parse_game("gam lbits=1\n"); }) == "expected 'game' header");
    CHECK(error_of([] { parse_game("game lbits=1 horizon=2 bound=1\nstates a\ninit a\nagent 1 actions x goal a\n"); })
              .find("no play declaration") == 0);
}

TEST_CASE("machine files") {
    ATM atm = parse_atm(read_file(fixture("bounce.atm")));
    CHECK(atm.mstates.size() == 4);
    CHECK(atm.alphabet[atm.blank] == "0");
    CHECK(atm.moves(0, 0).size() == 1);
    CHECK_THROWS_AS(parse_atm("atm\nmstates q:det\ninit q\nalphabet 0 blank=0\nrule q 0 -> q 0 R | q 0 L\n"), ParseError);
    CHECK_THROWS_AS(parse_atm("atm\nmstates q-1:det\ninit q-1\nalphabet 0 blank=0\n"), ParseError);
}

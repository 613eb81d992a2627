#include "eqcheck/atm.hpp"
#include "eqcheck/oracle.hpp"
#include "eqcheck/verify.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace eqcheck;
using namespace test_support;

namespace {
ATM machine(const std::string& name) { return parse_atm(read_file(fixture(name))); }
}

TEST_CASE("direct simulation") {
    CHECK(atm_accepts(machine("accept.atm"), 1));
    CHECK_FALSE(atm_accepts(machine("reject.atm"), 1));
    CHECK(atm_accepts(machine("exists.atm"), 2));
    CHECK_FALSE(atm_accepts(machine("forall.atm"), 2));
    // Every move leaves a one-cell tape.
    CHECK_FALSE(atm_accepts(machine("exists.atm"), 1));
    CHECK(atm_accepts(machine("bounce.atm"), 2));
    CHECK_FALSE(atm_accepts(machine("bounce.atm"), 1));
    CHECK_THROWS_AS(atm_accepts(machine("bounce.atm"), 2, 1), IdSpaceExceeded);
}

TEST_CASE("compiled instances are well formed") {
    for (const char* name : {"accept.atm", "reject.atm", "exists.atm", "forall.atm", "bounce.atm"}) {
        for (std::size_t n : {1u, 2u}) {
            CAPTURE(name);
            CAPTURE(n);
            ATM atm = machine(name);
            CompiledInstance inst = compile(atm, n);
            const auto& g = inst.game;
            CHECK(validate_game(g).empty());
            CHECK(validate_profile(g, inst.profile).empty());
            CHECK(g.lbits == 3);
            CHECK(g.bound == 1);
            CHECK(g.num_agents() == n + 1);
            for (const auto& p : g.playing) CHECK(p.size() <= 1);
            CHECK(g.horizon == reduction_horizon(atm, n));
            CHECK(g.num_states() == 2 * n + n * atm.alphabet.size() * 2 * atm.mstates.size() + 2 * n + 4);
            CHECK(inst.provenance.size() == g.num_states());
        }
    }
    ATM forall = machine("forall.atm");
    // (3 * |alphabet| * |states|)^n + 1 = (3 * 2 * 3)^2 + 1
    CHECK(reduction_horizon(forall, 2) == 325);
}

TEST_CASE("accepting start reaches the goal through the simulation") {
    CompiledInstance inst = compile(machine("accept.atm"), 1, BigInt(8));
    const auto& g = inst.game;
    const std::size_t start = *g.state_index("start"), head = *g.state_index("h1.none"), goal = *g.state_index("goal");
    // beta at start enters the simulation at cell 1.
    CHECK(g.row(start, 1) == StateRow{{head, BigInt(8)}});
    // Agent 1 outputs * there.
    const auto& out = inst.profile[0].out(inst.profile[0].init, head);
    REQUIRE(out.size() == 1);
    CHECK(g.actions[0][out[0].action] == "*");
    CHECK(g.row(head, out[0].action) == StateRow{{goal, BigInt(8)}});
}

TEST_CASE("moving off the tape sinks") {
    CompiledInstance inst = compile(machine("exists.atm"), 1, BigInt(8));
    const auto& g = inst.game;
    const std::size_t v = *g.state_index("w1.1.R.yes");
    CHECK(g.row(v, 0) == StateRow{{*g.state_index("sink"), BigInt(8)}});
    CompiledInstance two = compile(machine("exists.atm"), 2, BigInt(8));
    CHECK(two.game.row(*two.game.state_index("w1.1.R.yes"), 0) ==
          StateRow{{*two.game.state_index("h2.none"), BigInt(8)}});
}

TEST_CASE("the profile's fixed-payoff branch") {
    // The chooser's goal is missed only by looping at base for times 2..F.
    for (unsigned long f : {3ul, 5ul, 8ul}) {
        CompiledInstance inst = compile(machine("reject.atm"), 1, BigInt(f));
        Rat expected = 1 - Rat(1, 1) / Rat(pow2(2 * (f - 2)));
        CHECK(oracle_payoff(inst.game, inst.profile, 1) == expected);
        CHECK(oracle_payoff(inst.game, inst.profile, 0) == 1);
    }
}

TEST_CASE("reduction verdicts follow acceptance") {
    struct Case {
        const char* name;
        std::size_t cells;
    };
    for (Case c : {Case{"accept.atm", 1}, Case{"reject.atm", 1}, Case{"exists.atm", 2}, Case{"forall.atm", 2},
                   Case{"bounce.atm", 2}}) {
        CAPTURE(c.name);
        ATM atm = machine(c.name);
        CompiledInstance inst = compile(atm, c.cells, BigInt(10));
        Verdict v = verify_nash(inst.game, inst.profile);
        CHECK((v.kind == VerdictKind::NeYes) == !atm_accepts(atm, c.cells));
        if (v.kind == VerdictKind::NeNo) {
            CHECK(v.witnesses.front().agent == c.cells);
            CHECK(v.witnesses.front().deviation == 1);
        }
    }
}

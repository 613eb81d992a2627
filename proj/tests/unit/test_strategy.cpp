#include "eqcheck/random.hpp"
#include "eqcheck/strategy.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace eqcheck;
using namespace test_support;

TEST_CASE("fixture transducers validate") {
    GameSystem coin = game("coin.game");
    CHECK(validate_profile(coin, profile(coin, {"coin_a.tr"})).empty());
    GameSystem pennies = game("pennies.game");
    CHECK(validate_profile(pennies, profile(pennies, {"pennies_half1.tr", "pennies_half2.tr"})).empty());
    GameSystem relay = game("relay.game");
    CHECK(validate_profile(relay, profile(relay, {"relay1.tr", "relay2.tr"})).empty());
}

TEST_CASE("transducer violations") {
    GameSystem g = game("coin.game");
    StrategyTransducer t = profile(g, {"coin_a.tr"}).front();
    SUBCASE("lbits") {
        t.lbits = 3;
        auto v = validate_transducer(g, t);
        REQUIRE_FALSE(v.empty());
        CHECK(v.front().message == "lbits mismatch");
    }
    SUBCASE("output where not playing") {
        t.output[1] = ActionDist{{0, BigInt(4)}};
        CHECK_FALSE(validate_transducer(g, t).empty());
    }
    SUBCASE("missing output") {
        t.output[0].reset();
        CHECK_FALSE(validate_transducer(g, t).empty());
    }
    SUBCASE("bottom is not consultable") {
        CHECK_THROWS_AS(t.out(0, 1), std::logic_error);
    }
}

TEST_CASE("substrategy reads all of the history except its last state") {
    GameSystem g = game("relay.game");
    StrategyTransducer t = profile(g, {"relay1.tr"}).front();
    std::vector<std::size_t> h1{0};
    std::vector<std::size_t> h2{0, 0};
    CHECK(substrategy(t, h1).init == t.init);
    CHECK(t.tstates[substrategy(t, h2).init] == "later");
    CHECK_THROWS(substrategy(t, std::vector<std::size_t>{}));
}

TEST_CASE("substrategy composes over concatenated histories") {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        Instance inst = gen_random_instance(seed);
        const auto& g = inst.game;
        for (const auto& t : inst.profile) {
            // h1 = [v0, a], h2 = [b, c]: reading h1 then h2 minus last equals
            // the substrategy for h1 (with its last state read) followed by h2.
            const std::size_t nv = g.num_states();
            std::vector<std::size_t> h1{g.init, seed % nv}, h2{(seed + 1) % nv, (seed + 2) % nv};
            std::vector<std::size_t> whole = h1;
            whole.insert(whole.end(), h2.begin(), h2.end());
            StrategyTransducer first = substrategy(t, h1);
            first.init = first.next(first.init, h1.back());
            CHECK(substrategy(t, whole).init == substrategy(first, h2).init);
        }
    }
}

TEST_CASE("product transducer probabilities") {
    GameSystem g = game("pennies.game");
    ProductTransducer pt(g, profile(g, {"pennies_heads1.tr", "pennies_half2.tr"}));
    const auto s = pt.initial();
    std::vector<std::size_t> hh{0, 0}, th{1, 0};
    CHECK(pt.joint_action_prob(s, 0, hh) == Rat(1, 2));
    CHECK(pt.joint_action_prob(s, 0, th) == 0);
    CHECK(pt.joint_action_prob(s, 1, std::vector<std::size_t>{}) == 1);
    CHECK(pt.size() == 1);
}

#include "eqcheck/oracle.hpp"
#include "eqcheck/random.hpp"
#include "eqcheck/values.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace eqcheck;
using namespace test_support;

TEST_CASE("coin game values") {
    GameSystem g = game("coin.game");
    CHECK(payoff(g, profile(g, {"coin_a.tr"}), 0) == Rat(3, 4));
    CHECK(payoff(g, profile(g, {"coin_b.tr"}), 0) == Rat(1, 4));

    Profile pb = profile(g, {"coin_b.tr"});
    ChainModel model(g, pb);
    ReachSet reach = explore_deviation(model, 0);
    PolicyTable best = best_response_values(model, 0, reach);
    CHECK(best.at(0).value == Rat(3, 4));
    CHECK(best.at(0).action == 0u);
}

TEST_CASE("value dump is ordered by state, product state and time") {
    GameSystem g = game("coin.game");
    ChainModel model(g, profile(g, {"coin_a.tr"}));
    ReachSet reach = explore_chain(model);
    ValueTable values = hitting_probabilities(model, 0, reach);
    CHECK(dump_values(model, reach, values) ==
          "state u (s0) 1 = 3/4\n"
          "state g (s0) 2 = 1/1\n"
          "state d (s0) 2 = 0/1\n");
}

TEST_CASE("bit bound of the coin game") {
    // F * (ceil(log2(3 * 1)) + ceil(log2(2^1)) + 2 * 2) = 2 * (2 + 1 + 4)
    GameSystem g = game("coin.game");
    CHECK(bit_bound(g, profile(g, {"coin_a.tr"})) == 14);
}

TEST_CASE("payoff agrees with play enumeration") {
    for (std::uint64_t seed = 1; seed <= 80; ++seed) {
        Instance inst = gen_random_instance(seed);
        for (std::size_t i = 0; i < inst.game.num_agents(); ++i) {
            CAPTURE(seed);
            CHECK(payoff(inst.game, inst.profile, i) == oracle_payoff(inst.game, inst.profile, i));
        }
    }
}

TEST_CASE("the policy transducer attains the best-response value") {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        Instance inst = gen_random_instance(seed);
        const auto& g = inst.game;
        for (std::size_t i = 0; i < g.num_agents(); ++i) {
            ChainModel model(g, inst.profile);
            ReachSet reach = explore_deviation(model, i);
            PolicyTable best = best_response_values(model, i, reach);
            Profile deviated = inst.profile;
            deviated[i] = policy_transducer(model, reach, best);
            CAPTURE(seed);
            CHECK(validate_transducer(g, deviated[i]).empty());
            CHECK(payoff(g, deviated, i) == best.at(0).value);
        }
    }
}

TEST_CASE("values are dyadic within the bit bound") {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        Instance inst = gen_random_instance(seed);
        const BigInt bound = bit_bound(inst.game, inst.profile);
        ChainModel model(inst.game, inst.profile);
        for (std::size_t i = 0; i < inst.game.num_agents(); ++i) {
            ReachSet reach = explore_deviation(model, i);
            const ValueTable table = hitting_probabilities(model, i, reach);
            for (const Rat& r : table.values()) {
                auto e = dyadic_exponent(r);
                REQUIRE(e.has_value());
                CHECK(BigInt(*e) <= bound);
            }
        }
    }
}

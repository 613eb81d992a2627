#include "eqcheck/io.hpp"
#include "eqcheck/random.hpp"
#include "eqcheck/values.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>

using namespace eqcheck;
using namespace test_support;

TEST_CASE("generation is deterministic and valid") {
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        Instance a = gen_random_instance(seed), b = gen_random_instance(seed);
        CHECK(a.game == b.game);
        CHECK(a.profile == b.profile);
        CHECK(validate_game(a.game).empty());
        CHECK(validate_profile(a.game, a.profile).empty());
        CHECK(a.game.num_states() <= 5);
        CHECK(a.game.num_agents() <= 3);
        CHECK(a.game.horizon <= 5);
    }
    CHECK(serialize_game(gen_random_instance(1).game) != serialize_game(gen_random_instance(2).game));
}

TEST_CASE("largest remainder normalization") {
    CHECK(dyadic_normalize({1, 1, 1}, 2) == std::vector<BigInt>{2, 1, 1});
    CHECK(dyadic_normalize({0, 3}, 3) == std::vector<BigInt>{0, 8});
    CHECK(dyadic_normalize({1, 2}, 1) == std::vector<BigInt>{1, 1});
    CHECK_THROWS(dyadic_normalize({0, 0}, 1));
}

TEST_CASE("simulation") {
    GameSystem g = game("coin.game");
    Profile a = profile(g, {"coin_a.tr"});
    CHECK(simulate(g, a, 5, 0).plays.empty());
    SimulationReport r = simulate(g, a, 11, 10000);
    // Within five standard errors of 3/4.
    const double freq = r.goal_hits[0] / 10000.0;
    CHECK(std::abs(freq - 0.75) <= 5 * std::sqrt(0.75 * 0.25 / 10000));
    CHECK(simulate(g, a, 11, 50).plays == simulate(g, a, 11, 50).plays);

    GameSystem det = game("detour.game");
    SimulationReport d = simulate(det, profile(det, {"detour.tr"}), 3, 20);
    for (const auto& play : d.plays) CHECK(play == d.plays.front());
}

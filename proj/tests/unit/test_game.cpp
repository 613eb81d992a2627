#include "eqcheck/game.hpp"
#include "support.hpp"

#include <doctest.h>

#include <algorithm>

using namespace eqcheck;
using namespace test_support;

TEST_CASE("fixture games are well formed") {
    for (const char* name : {"coin.game", "detour.game", "pennies.game", "relay.game"}) {
        CAPTURE(name);
        CHECK(validate_game(game(name)).empty());
    }
}

TEST_CASE("joint actions are indexed lexicographically") {
    GameSystem g = game("pennies.game");
    const std::size_t m = *g.state_index("m");
    CHECK(g.joint_action_count(m) == 4);
    CHECK(g.decode_joint(m, 1) == std::vector<std::size_t>{0, 1});
    CHECK(g.decode_joint(m, 2) == std::vector<std::size_t>{1, 0});
    for (std::size_t t = 0; t < 4; ++t) CHECK(g.encode_joint(m, g.decode_joint(m, t)) == t);
    std::vector<std::size_t> bad{0, 2};
    CHECK_THROWS_AS(g.encode_joint(m, bad), std::out_of_range);
    CHECK(g.joint_action_count(*g.state_index("same")) == 1);
}

TEST_CASE("structural violations are reported") {
    GameSystem g = game("coin.game");
    SUBCASE("row sum") {
        g.trans[0][0][0].numerator = 2;
        CHECK_FALSE(validate_game(g).empty());
    }
    SUBCASE("bound") {
        g.bound = 0;
        auto v = validate_game(g);
        REQUIRE(v.size() == 1);
        CHECK(v[0].message == "bound must be at least 1");
        GameSystem p = game("pennies.game");
        p.bound = 1;
        auto w = validate_game(p);
        CHECK(std::any_of(w.begin(), w.end(), [](const Violation& x) { return x.message == "bound exceeded"; }));
    }
    SUBCASE("missing row") {
        g.trans[0].pop_back();
        CHECK_FALSE(validate_game(g).empty());
    }
}

TEST_CASE("payoff of a play and history conditions") {
    GameSystem g = game("coin.game");
    const std::size_t u = 0, gs = 1, d = 2;
    std::vector<std::size_t> win{u, gs}, lose{u, d}, short_play{u};
    CHECK(payoff_of_play(g, win, 0) == 1);
    CHECK(payoff_of_play(g, lose, 0) == 0);
    CHECK_THROWS_AS(payoff_of_play(g, short_play, 0), std::invalid_argument);
    CHECK(is_history(g, win));
    CHECK(is_history(g, short_play));
    std::vector<std::size_t> wrong_start{gs, gs}, too_long{u, gs, gs}, broken{u, u};
    CHECK_FALSE(is_history(g, wrong_start));
    CHECK_FALSE(is_history(g, too_long));
    CHECK_FALSE(is_history(g, broken));
    CHECK(possible_successors(g, u) == std::vector<std::size_t>{gs, d});
    CHECK(edge_possible(g, u, d));
    CHECK_FALSE(edge_possible(g, gs, d));
}

#include "eqcheck/product.hpp"
#include "eqcheck/random.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace eqcheck;
using namespace test_support;

TEST_CASE("coin chain") {
    GameSystem g = game("coin.game");
    ChainModel model(g, profile(g, {"coin_a.tr"}));
    ReachSet reach = explore_chain(model);
    CHECK(reach.size() == 3);
    CHECK(reach.max_time() == 2);
    const ChainState start{0, {0}, 1}, win{1, {0}, 2}, lose{2, {0}, 2};
    CHECK(chain_prob(model, start, win) == Rat(3, 4));
    CHECK(chain_prob(model, start, lose) == Rat(1, 4));
    CHECK(chain_prob(model, start, ChainState{1, {0}, 1}) == 0);
    CHECK_THROWS_AS(chain_prob(model, win, win), std::invalid_argument);

    auto rows = mdp_actions(model, start, 0);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].action == 0u);
    CHECK(rows[0].successors.size() == 2);
    CHECK(rows[0].successors[0].second == Rat(3, 4));
    CHECK(rows[1].successors[0].second == Rat(1, 4));
    CHECK(rows[1].successors[1].second == Rat(3, 4));
}

TEST_CASE("exploration budget") {
    GameSystem g = game("relay.game");
    ChainModel model(g, profile(g, {"relay1.tr", "relay2.tr"}));
    CHECK_THROWS_AS(explore_chain(model, 2), CapExceeded);
    CHECK_NOTHROW(explore_chain(model, 1000));
}

TEST_CASE("relevant states exclude goal endpoints") {
    GameSystem g = game("coin.game");
    ChainModel model(g, profile(g, {"coin_a.tr"}));
    ReachSet r = relevant_reachable(model, 0);
    CHECK(r.size() == 2);
    for (const auto& node : r.nodes()) CHECK_FALSE(g.in_goal(0, node.v));
}

TEST_CASE("histories are witnessing paths") {
    GameSystem g = game("relay.game");
    ChainModel model(g, profile(g, {"relay1.tr", "relay2.tr"}));
    ReachSet reach = explore(model, ExploreMode::AnyAction, std::nullopt, false, kDefaultCap);
    for (std::size_t i = 0; i < reach.size(); ++i) {
        auto h = reach.history(i);
        CHECK(h.size() == reach.node(i).n);
        CHECK(is_history(g, h));
        CHECK(h.back() == reach.node(i).v);
    }
}

TEST_CASE("rows of explored states sum to one") {
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        Instance inst = gen_random_instance(seed);
        ChainModel model(inst.game, inst.profile);
        for (std::size_t agent = 0; agent < inst.game.num_agents(); ++agent) {
            ReachSet reach = explore_deviation(model, agent);
            for (const auto& node : reach.nodes()) {
                if (model.is_terminal(node.n)) continue;
                Rat total = 0;
                for (const auto& [w, p] : model.profile_row(node.sid, node.v)) total += p;
                CHECK(total == 1);
                for (const auto& row : model.action_rows(node.sid, node.v, agent)) {
                    Rat sum = 0;
                    for (const auto& [w, p] : row.row) sum += p;
                    CHECK(sum == 1);
                }
            }
        }
    }
}

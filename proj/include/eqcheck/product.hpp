#pragma once

#include "eqcheck/strategy.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace eqcheck {

inline constexpr std::size_t kDefaultCap = 10'000'000;

/// Raised when an explicit exploration would exceed its state budget.
class CapExceeded : public std::runtime_error {
public:
    explicit CapExceeded(std::size_t cap)
        : std::runtime_error("explored state count exceeds cap " + std::to_string(cap)), cap_(cap) {}
    std::size_t cap() const { return cap_; }

private:
    std::size_t cap_;
};

/// A state <v, s, n> of the chain G x pi. The transducer state s has not yet read v.
struct ChainState {
    std::size_t v = 0;
    ProductState s;
    std::uint64_t n = 1;

    auto operator<=>(const ChainState&) const = default;
};

/// Successor game states with their (positive) probabilities, ascending by state.
using GameRow = std::vector<std::pair<std::size_t, Rat>>;

/// One deterministic choice of the deviating agent. `action` is empty when
/// the agent does not play at the state and the row is the profile's own.
struct ActionRow {
    std::optional<std::size_t> action;
    GameRow row;
};

/// The chain G x pi with interned product states and cached rows.
///
/// Holds a reference to the game; the game must outlive the model. Not
/// thread-safe: caches fill lazily.
class ChainModel {
public:
    ChainModel(const GameSystem& game, Profile profile);

    const GameSystem& game() const { return *game_; }
    const ProductTransducer& transducer() const { return pt_; }
    const std::optional<std::uint64_t>& horizon() const { return horizon_; }
    bool is_terminal(std::uint64_t n) const { return horizon_ && n >= *horizon_; }

    std::size_t intern(const ProductState& s);
    const ProductState& product_state(std::size_t sid) const { return products_[sid]; }
    std::size_t num_product_states() const { return products_.size(); }
    std::size_t initial_sid() const { return 0; }

    std::size_t advance(std::size_t sid, std::size_t v);

    /// p_v row: successor game states of v when every agent follows the profile.
    const GameRow& profile_row(std::size_t sid, std::size_t v);
    /// One row per action of `agent` when it plays at v (others follow the
    /// profile), otherwise the single profile row.
    const std::vector<ActionRow>& action_rows(std::size_t sid, std::size_t v, std::size_t agent);
    /// Game states reachable from v under some joint action.
    const std::vector<std::size_t>& any_successors(std::size_t v);

private:
    struct VecHash {
        std::size_t operator()(const ProductState& s) const noexcept;
    };

    const GameSystem* game_;
    ProductTransducer pt_;
    std::optional<std::uint64_t> horizon_;
    std::vector<ProductState> products_;
    std::unordered_map<ProductState, std::size_t, VecHash> product_ids_;
    std::unordered_map<std::uint64_t, std::size_t> advance_cache_;
    std::unordered_map<std::uint64_t, GameRow> profile_rows_;
    std::vector<std::unordered_map<std::uint64_t, std::vector<ActionRow>>> action_rows_;
    std::vector<std::optional<std::vector<std::size_t>>> any_successors_;
};

/// Transition probability p_v * p_s * p_n between two chain states. Throws
/// std::invalid_argument when `from` is terminal (n = F).
Rat chain_prob(ChainModel& model, const ChainState& from, const ChainState& to);

struct MdpChoice {
    std::optional<std::size_t> action;
    std::vector<std::pair<ChainState, Rat>> successors;
};

/// Deviation-MDP rows at a non-terminal chain state for `agent`.
std::vector<MdpChoice> mdp_actions(ChainModel& model, const ChainState& state, std::size_t agent);

enum class ExploreMode {
    Profile,    ///< successors with positive probability under the profile
    Deviation,  ///< one agent unconstrained, the others follow the profile
    AnyAction,  ///< every agent unconstrained (history semantics)
};

struct ChainNode {
    std::size_t v = 0;
    std::size_t sid = 0;
    std::uint64_t n = 1;
    std::size_t pred = kNoPred;

    static constexpr std::size_t kNoPred = static_cast<std::size_t>(-1);
};

/// An explicitly explored fragment of G x pi, in BFS order from <v0, s0, 1>.
/// Each node keeps the predecessor through which it was first discovered.
class ReachSet {
public:
    ExploreMode mode() const { return mode_; }
    std::optional<std::size_t> agent() const { return agent_; }

    std::size_t size() const { return nodes_.size(); }
    bool empty() const { return nodes_.empty(); }
    const ChainNode& node(std::size_t i) const { return nodes_[i]; }
    const std::vector<ChainNode>& nodes() const { return nodes_; }

    std::optional<std::size_t> find(std::size_t v, std::size_t sid, std::uint64_t n) const;
    bool contains(const ChainModel& model, const ChainState& s) const;

    std::uint64_t max_time() const { return nodes_.empty() ? 0 : nodes_.back().n; }
    /// Node indices with time index n, in discovery order.
    std::span<const std::size_t> slice(std::uint64_t n) const;

    /// Game states along the witnessing path from the root to node i.
    std::vector<std::size_t> history(std::size_t i) const;

    ChainState state(const ChainModel& model, std::size_t i) const;

private:
    friend ReachSet explore(ChainModel&, ExploreMode, std::optional<std::size_t>, bool, std::size_t);

    struct KeyHash {
        std::size_t operator()(const std::tuple<std::size_t, std::size_t, std::uint64_t>& k) const noexcept;
    };

    ExploreMode mode_ = ExploreMode::Profile;
    std::optional<std::size_t> agent_;
    std::vector<ChainNode> nodes_;
    std::vector<std::size_t> by_time_;
    std::vector<std::size_t> slice_start_;
    std::unordered_map<std::tuple<std::size_t, std::size_t, std::uint64_t>, std::size_t, KeyHash> index_;
};

/// BFS exploration from <v0, s0, 1>. When `prune_goal` is set, nodes whose game
/// state lies in the agent's goal are neither admitted nor expanded.
ReachSet explore(ChainModel& model, ExploreMode mode, std::optional<std::size_t> agent, bool prune_goal,
                 std::size_t cap);

/// States reachable with positive probability under the profile.
ReachSet explore_chain(ChainModel& model, std::size_t cap = kDefaultCap);

/// States reachable when `agent` may deviate; closed under every MDP row.
ReachSet explore_deviation(ChainModel& model, std::size_t agent, std::size_t cap = kDefaultCap);

/// Relevant history-reachable states for `agent`: reachable through arbitrary
/// positive-probability joint actions, with every state on the path (endpoint
/// included) outside the agent's goal.
ReachSet relevant_reachable(ChainModel& model, std::size_t agent, std::size_t cap = kDefaultCap);

using RelevantSet = ReachSet;

} // namespace eqcheck

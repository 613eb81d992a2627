#pragma once

#include "eqcheck/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace eqcheck {

/// One entry of a transition row: probability numerator / 2^lbits of moving to `target`.
struct Outcome {
    std::size_t target = 0;
    BigInt numerator;

    bool operator==(const Outcome&) const = default;
};

/// Distribution over successor states, sorted by target, zero entries omitted.
using StateRow = std::vector<Outcome>;

/// A b-bounded concurrent game with reachability goals and finite horizon.
///
/// Agents are 0-based here and 1-based in files and reports. A joint action
/// at state v is a tuple over playing[v] (ascending agent order), encoded as a
/// mixed-radix index with the first active agent most significant, so index
/// order is lexicographic tuple order. Uncontrolled states have exactly one
/// row, indexed by the empty tuple.
struct GameSystem {
    std::vector<std::string> states;
    std::size_t init = 0;
    std::vector<std::vector<std::string>> actions;
    std::vector<std::vector<std::size_t>> playing;
    std::vector<std::vector<StateRow>> trans;
    unsigned lbits = 1;
    std::vector<std::vector<bool>> goals;
    BigInt horizon = 1;
    std::size_t bound = 1;

    std::size_t num_states() const { return states.size(); }
    std::size_t num_agents() const { return actions.size(); }

    bool in_goal(std::size_t agent, std::size_t v) const { return goals[agent][v]; }
    bool is_active(std::size_t agent, std::size_t v) const;

    std::size_t joint_action_count(std::size_t v) const;
    std::vector<std::size_t> decode_joint(std::size_t v, std::size_t index) const;
    std::size_t encode_joint(std::size_t v, std::span<const std::size_t> theta) const;

    /// Row for joint action `theta_index` at v; empty when the row is missing.
    const StateRow& row(std::size_t v, std::size_t theta_index) const { return trans[v][theta_index]; }

    std::optional<std::size_t> state_index(std::string_view name) const;
    std::optional<std::size_t> action_index(std::size_t agent, std::string_view name) const;

    /// Horizon as a machine word, or nullopt when F does not fit.
    std::optional<std::uint64_t> horizon_u64() const;

    bool operator==(const GameSystem&) const = default;
};

struct Violation {
    std::string location;
    std::string message;
};

/// Every structural problem with `g`; empty means the game is well formed.
std::vector<Violation> validate_game(const GameSystem& g);

/// True when some joint action at `from` reaches `to` with positive probability.
bool edge_possible(const GameSystem& g, std::size_t from, std::size_t to);

/// States reachable from `from` in one step under some joint action, ascending.
std::vector<std::size_t> possible_successors(const GameSystem& g, std::size_t from);

/// 1 iff some state of the play lies in the agent's goal. Throws
/// std::invalid_argument when the play does not have exactly F states.
int payoff_of_play(const GameSystem& g, std::span<const std::size_t> play, std::size_t agent);

/// Checks the history conditions: starts at v0, consecutive states connected
/// under some joint action, 1 <= |h| <= F.
bool is_history(const GameSystem& g, std::span<const std::size_t> h);

} // namespace eqcheck

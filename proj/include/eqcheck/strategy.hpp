#pragma once

#include "eqcheck/game.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace eqcheck {

struct ActionProb {
    std::size_t action = 0;
    BigInt numerator;

    bool operator==(const ActionProb&) const = default;
};

/// Distribution over an agent's actions, sorted by action, zero entries omitted.
using ActionDist = std::vector<ActionProb>;

/// Finite-state strategy with deterministic state updates and L-bit outputs.
///
/// Tables are dense over (tstate, game state). An output of nullopt is the
/// bottom symbol: the agent is not playing at that game state.
struct StrategyTransducer {
    std::size_t agent = 0;
    unsigned lbits = 1;
    std::size_t num_game_states = 0;
    std::vector<std::string> tstates;
    std::size_t init = 0;
    std::vector<std::size_t> step;
    std::vector<std::optional<ActionDist>> output;

    std::size_t next(std::size_t t, std::size_t v) const { return step[t * num_game_states + v]; }
    bool is_bottom(std::size_t t, std::size_t v) const { return !output[t * num_game_states + v].has_value(); }
    /// Output at (t, v). Consulting a bottom entry is a logic error.
    const ActionDist& out(std::size_t t, std::size_t v) const;
    /// State after reading `word` from `from`.
    std::size_t run(std::size_t from, std::span<const std::size_t> word) const;

    bool operator==(const StrategyTransducer&) const = default;
};

using Profile = std::vector<StrategyTransducer>;

std::vector<Violation> validate_transducer(const GameSystem& g, const StrategyTransducer& t);
std::vector<Violation> validate_profile(const GameSystem& g, const Profile& profile);

/// The strategy after history h: same machine, initial state moved to the
/// state reached after reading every element of h except the last. The last
/// element is the first state of the subgame and is read there, exactly as
/// a chain state <v, s, n> holds a transducer state that has not yet read v.
StrategyTransducer substrategy(const StrategyTransducer& t, std::span<const std::size_t> history);

/// One component state per agent.
using ProductState = std::vector<std::size_t>;

/// Component-wise product of a profile's transducers.
class ProductTransducer {
public:
    ProductTransducer(const GameSystem& game, Profile profile);

    const GameSystem& game() const { return *game_; }
    const Profile& profile() const { return profile_; }
    std::size_t num_agents() const { return profile_.size(); }

    ProductState initial() const;
    ProductState advance(const ProductState& s, std::size_t v) const;

    /// Probability that the active agents at v jointly play theta (one action
    /// per agent of playing[v], ascending agent order). 1 for uncontrolled v.
    Rat joint_action_prob(const ProductState& s, std::size_t v, std::span<const std::size_t> theta) const;

    /// Number of product states, |S_1| * ... * |S_k|.
    BigInt size() const;

private:
    const GameSystem* game_;
    Profile profile_;
};

/// Probability numerator that distribution d assigns to action a.
const BigInt& prob_of(const ActionDist& d, std::size_t a);

} // namespace eqcheck

#pragma once

// Brute-force references for small instances. Nothing here uses the chain
// model or the value computations; only the game and transducer types.

#include "eqcheck/game.hpp"
#include "eqcheck/strategy.hpp"

#include <stdexcept>
#include <vector>

namespace eqcheck {

class OracleCapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct WeightedPlay {
    std::vector<std::size_t> states;
    Rat probability;
};

/// Every positive-probability play of length F under the profile.
struct PlayTree {
    std::vector<WeightedPlay> plays;

    Rat total() const;
};

inline constexpr std::size_t kOracleCap = 200'000;

PlayTree enumerate_plays(const GameSystem& g, const Profile& profile, std::size_t cap = kOracleCap);

/// Sum of P(play) * Payoff(play, agent) over the enumerated plays.
Rat oracle_payoff(const GameSystem& g, const Profile& profile, std::size_t agent, std::size_t cap = kOracleCap);

/// Best value `agent` can reach against the others' transducers, maximizing
/// over deterministic strategies that see the whole history (expectimax over
/// the history tree).
Rat oracle_best_response(const GameSystem& g, const Profile& profile, std::size_t agent,
                         std::size_t cap = kOracleCap);

/// Same quantity by listing every deterministic policy over the reachable
/// (history-determined) decision points and scoring each with play
/// enumeration. Exponential; only for tiny instances.
Rat oracle_best_response_enumerated(const GameSystem& g, const Profile& profile, std::size_t agent,
                                    std::size_t max_policies = 4096);

bool oracle_is_nash(const GameSystem& g, const Profile& profile, std::size_t cap = kOracleCap);

/// The subgame after history h: starts at h's last state, horizon F - |h| + 1,
/// and agents whose goal was already visited earlier in h get goal V.
GameSystem oracle_subgame(const GameSystem& g, const std::vector<std::size_t>& history);

/// All histories of length 1..F (consecutive states connected under some joint action).
std::vector<std::vector<std::size_t>> enumerate_histories(const GameSystem& g, std::size_t cap = kOracleCap);

/// NE check on every subgame with the corresponding substrategy profile.
bool oracle_is_spe(const GameSystem& g, const Profile& profile, std::size_t cap = kOracleCap);

class SynthesisRefused : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Markovian subgame-perfect profile by backwards induction over (state, time)
/// stage games. Picks the first pure equilibrium in lexicographic order of
/// joint actions, else a fully mixed one for two agents with two actions when
/// its probabilities fit in L bits. Throws SynthesisRefused otherwise, and
/// when F is too large for a time-counting transducer.
Profile synthesize_spe(const GameSystem& g, std::size_t max_horizon = 64);

} // namespace eqcheck

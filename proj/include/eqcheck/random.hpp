#pragma once

#include "eqcheck/game.hpp"
#include "eqcheck/strategy.hpp"

#include <cstdint>
#include <vector>

namespace eqcheck {

struct InstanceLimits {
    std::size_t states = 5;
    std::size_t agents = 3;
    std::size_t bound = 2;
    std::size_t actions = 2;
    std::size_t horizon = 5;
    std::size_t tstates = 3;
    unsigned lbits = 3;
};

struct Instance {
    GameSystem game;
    Profile profile;
};

/// Deterministic in (seed, limits). Every sampled size lies in [1, limit].
Instance gen_random_instance(std::uint64_t seed, const InstanceLimits& limits = {});

/// Spreads 2^lbits over the weights proportionally, rounding by largest
/// remainder (ties to the lower index). Weights must not all be zero.
std::vector<BigInt> dyadic_normalize(const std::vector<std::uint64_t>& weights, unsigned lbits);

struct SimulationReport {
    std::vector<std::vector<std::size_t>> plays;
    /// Per agent, the number of sampled plays that visit its goal.
    std::vector<std::size_t> goal_hits;
};

/// `count` independent plays sampled exactly on the dyadic grid.
SimulationReport simulate(const GameSystem& g, const Profile& profile, std::uint64_t seed, std::size_t count);

} // namespace eqcheck

#pragma once

#include "eqcheck/product.hpp"

#include <optional>
#include <string>
#include <vector>

namespace eqcheck {

/// Hitting probabilities of T = {<v,s,n> : v in G_i}, one per node of a ReachSet.
class ValueTable {
public:
    ValueTable(std::size_t agent, std::vector<Rat> values) : agent_(agent), values_(std::move(values)) {}

    std::size_t agent() const { return agent_; }
    std::size_t size() const { return values_.size(); }
    const Rat& at(std::size_t node) const { return values_[node]; }
    const std::vector<Rat>& values() const { return values_; }

private:
    std::size_t agent_;
    std::vector<Rat> values_;
};

struct PolicyEntry {
    Rat value;
    /// Maximizing action when the agent plays at a non-terminal, non-goal node.
    std::optional<std::size_t> action;
};

/// Optimal values of the deviation MDP with a maximizing action per node.
class PolicyTable {
public:
    PolicyTable(std::size_t agent, std::vector<PolicyEntry> entries) : agent_(agent), entries_(std::move(entries)) {}

    std::size_t agent() const { return agent_; }
    std::size_t size() const { return entries_.size(); }
    const PolicyEntry& at(std::size_t node) const { return entries_[node]; }
    const std::vector<PolicyEntry>& entries() const { return entries_; }

private:
    std::size_t agent_;
    std::vector<PolicyEntry> entries_;
};

/// Backwards induction over time slices, n = F down to 1. `reach` must be
/// closed under profile successors (any explored mode is).
ValueTable hitting_probabilities(ChainModel& model, std::size_t agent, const ReachSet& reach);

/// Expected payoff of `agent` under the profile. Throws CapExceeded.
Rat payoff(const GameSystem& g, const Profile& profile, std::size_t agent, std::size_t cap = kDefaultCap);

/// Finite-horizon dynamic programming on the deviation MDP. `reach` must be
/// closed under every action row of `agent` (explore_deviation or AnyAction).
/// Ties go to the smallest action index.
PolicyTable best_response_values(ChainModel& model, std::size_t agent, const ReachSet& reach);

/// One-step backup of `row` against `values`, with successors at (next_sid, n+1).
Rat backup(const GameRow& row, const ReachSet& reach, const std::vector<Rat>& values, std::size_t next_sid,
           std::uint64_t n);

/// Ceiling on the denominator exponent of every hitting probability:
/// F * (ceil(log2(|V| * |S|)) + ceil(log2(|A|^b)) + (b + 1) * L), with |A| the
/// largest action set.
BigInt bit_bound(const GameSystem& g, const Profile& profile);

/// Lines "state <v> <s-tuple> <n> = <num>/<den>", ordered by (v, s, n).
std::string dump_values(const ChainModel& model, const ReachSet& reach, const ValueTable& values);

/// A transducer for `agent` that plays the policy's maximizing actions. Its
/// states are the (product state, time) pairs of `reach` plus one idle state.
StrategyTransducer policy_transducer(ChainModel& model, const ReachSet& reach, const PolicyTable& policy);

} // namespace eqcheck

#include "eqcheck/game.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace eqcheck {

bool GameSystem::is_active(std::size_t agent, std::size_t v) const {
    const auto& p = playing[v];
    return std::binary_search(p.begin(), p.end(), agent);
}

std::size_t GameSystem::joint_action_count(std::size_t v) const {
    std::size_t count = 1;
    for (std::size_t agent : playing[v]) count *= actions[agent].size();
    return count;
}

std::vector<std::size_t> GameSystem::decode_joint(std::size_t v, std::size_t index) const {
    const auto& p = playing[v];
    std::vector<std::size_t> theta(p.size());
    for (std::size_t j = p.size(); j-- > 0;) {
        std::size_t radix = actions[p[j]].size();
        theta[j] = index % radix;
        index /= radix;
    }
    return theta;
}

std::size_t GameSystem::encode_joint(std::size_t v, std::span<const std::size_t> theta) const {
    const auto& p = playing[v];
    if (theta.size() != p.size()) throw std::invalid_argument("joint action has wrong arity");
    std::size_t index = 0;
    for (std::size_t j = 0; j < p.size(); ++j) {
        std::size_t radix = actions[p[j]].size();
        if (theta[j] >= radix) throw std::out_of_range("action not in agent's action set");
        index = index * radix + theta[j];
    }
    return index;
}

std::optional<std::size_t> GameSystem::state_index(std::string_view name) const {
    auto it = std::find(states.begin(), states.end(), name);
    if (it == states.end()) return std::nullopt;
    return static_cast<std::size_t>(it - states.begin());
}

std::optional<std::size_t> GameSystem::action_index(std::size_t agent, std::string_view name) const {
    const auto& a = actions[agent];
    auto it = std::find(a.begin(), a.end(), name);
    if (it == a.end()) return std::nullopt;
    return static_cast<std::size_t>(it - a.begin());
}

std::optional<std::uint64_t> GameSystem::horizon_u64() const {
    if (horizon < 0 || mpz_sizeinbase(horizon.get_mpz_t(), 2) > 63) return std::nullopt;
    return static_cast<std::uint64_t>(mpz_get_ui(horizon.get_mpz_t()));
}

std::vector<Violation> validate_game(const GameSystem& g) {
    std::vector<Violation> out;
    auto add = [&](std::string where, std::string what) { out.push_back({std::move(where), std::move(what)}); };

    const std::size_t nv = g.num_states();
    const std::size_t k = g.num_agents();
    if (nv == 0) add("states", "no states declared");
    if (g.init >= nv) add("init", "initial state out of range");
    if (k == 0) add("agents", "no agents declared");
    if (g.lbits == 0) add("header", "lbits must be positive");
    if (g.bound == 0) add("header", "bound must be at least 1");
    if (g.bound > k && k > 0) add("header", "bound exceeds number of agents");
    if (g.horizon < 1) add("header", "horizon must be at least 1");
    for (std::size_t i = 0; i < k; ++i) {
        if (g.actions[i].empty()) add("agent " + std::to_string(i + 1), "empty action set");
    }
    if (g.goals.size() != k) add("goals", "goal sets do not match agent count");
    for (std::size_t i = 0; i < g.goals.size(); ++i) {
        if (g.goals[i].size() != nv) add("agent " + std::to_string(i + 1), "goal set has wrong size");
    }
    if (g.playing.size() != nv || g.trans.size() != nv) {
        add("states", "playing function or transition table does not cover all states");
        return out;
    }
    if (!out.empty()) return out;

    const BigInt one = pow2(g.lbits);
    for (std::size_t v = 0; v < nv; ++v) {
        const std::string where = "state " + g.states[v];
        const auto& p = g.playing[v];
        if (!std::is_sorted(p.begin(), p.end()) || std::adjacent_find(p.begin(), p.end()) != p.end()) {
            add(where, "playing set not strictly ascending");
        }
        if (std::any_of(p.begin(), p.end(), [&](std::size_t a) { return a >= k; })) {
            add(where, "playing set names unknown agent");
            continue;
        }
        if (p.size() > g.bound) add(where, "bound exceeded");
        const std::size_t rows = g.joint_action_count(v);
        if (g.trans[v].size() != rows) {
            add(where, "expected " + std::to_string(rows) + " transition rows, found " +
                           std::to_string(g.trans[v].size()));
            continue;
        }
        for (std::size_t t = 0; t < rows; ++t) {
            const std::string row_where = where + " row " + std::to_string(t);
            const StateRow& row = g.trans[v][t];
            if (row.empty()) {
                add(row_where, "missing transition row");
                continue;
            }
            BigInt sum = 0;
            for (std::size_t j = 0; j < row.size(); ++j) {
                const Outcome& o = row[j];
                if (o.target >= nv) add(row_where, "target out of range");
                if (j > 0 && row[j - 1].target >= o.target) add(row_where, "targets not strictly ascending");
                if (o.numerator <= 0 || o.numerator > one) add(row_where, "probability out of range");
                sum += o.numerator;
            }
            if (sum != one) add(row_where, "row sum ≠ 1");
        }
    }
    return out;
}

bool edge_possible(const GameSystem& g, std::size_t from, std::size_t to) {
    for (const StateRow& row : g.trans[from]) {
        for (const Outcome& o : row) {
            if (o.target == to && o.numerator > 0) return true;
        }
    }
    return false;
}

std::vector<std::size_t> possible_successors(const GameSystem& g, std::size_t from) {
    std::vector<bool> seen(g.num_states(), false);
    for (const StateRow& row : g.trans[from]) {
        for (const Outcome& o : row) {
            if (o.numerator > 0) seen[o.target] = true;
        }
    }
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < seen.size(); ++v) {
        if (seen[v]) out.push_back(v);
    }
    return out;
}

int payoff_of_play(const GameSystem& g, std::span<const std::size_t> play, std::size_t agent) {
    if (BigInt(static_cast<unsigned long>(play.size())) != g.horizon) {
        throw std::invalid_argument("play length differs from horizon");
    }
    for (std::size_t v : play) {
        if (g.in_goal(agent, v)) return 1;
    }
    return 0;
}

bool is_history(const GameSystem& g, std::span<const std::size_t> h) {
    if (h.empty() || h.front() != g.init) return false;
    if (BigInt(static_cast<unsigned long>(h.size())) > g.horizon) return false;
    for (std::size_t j = 0; j + 1 < h.size(); ++j) {
        if (h[j] >= g.num_states() || h[j + 1] >= g.num_states()) return false;
        if (!edge_possible(g, h[j], h[j + 1])) return false;
    }
    return true;
}

} // namespace eqcheck

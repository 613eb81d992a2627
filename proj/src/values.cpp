#include "eqcheck/values.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace eqcheck {

namespace {

unsigned long ceil_log2(const BigInt& x) {
    if (x <= 1) return 0;
    BigInt y = x - 1;
    return static_cast<unsigned long>(mpz_sizeinbase(y.get_mpz_t(), 2));
}

std::size_t successor(const ReachSet& reach, std::size_t v, std::size_t sid, std::uint64_t n) {
    auto found = reach.find(v, sid, n);
    if (!found) throw std::logic_error("reach set is not closed under the rows being evaluated");
    return *found;
}

} // namespace

Rat backup(const GameRow& row, const ReachSet& reach, const std::vector<Rat>& values, std::size_t next_sid,
           std::uint64_t n) {
    Rat sum = 0;
    for (const auto& [v, p] : row) sum += p * values[successor(reach, v, next_sid, n + 1)];
    return sum;
}

ValueTable hitting_probabilities(ChainModel& model, std::size_t agent, const ReachSet& reach) {
    const GameSystem& g = model.game();
    std::vector<Rat> values(reach.size());
    for (std::uint64_t n = reach.max_time(); n >= 1; --n) {
        for (std::size_t i : reach.slice(n)) {
            const ChainNode& node = reach.node(i);
            if (g.in_goal(agent, node.v)) {
                values[i] = 1;
            } else if (model.is_terminal(node.n)) {
                values[i] = 0;
            } else {
                values[i] = backup(model.profile_row(node.sid, node.v), reach, values,
                                   model.advance(node.sid, node.v), node.n);
            }
        }
    }
    return ValueTable(agent, std::move(values));
}

Rat payoff(const GameSystem& g, const Profile& profile, std::size_t agent, std::size_t cap) {
    if (g.in_goal(agent, g.init)) return Rat(1);
    ChainModel model(g, profile);
    ReachSet reach = explore_chain(model, cap);
    return hitting_probabilities(model, agent, reach).at(0);
}

PolicyTable best_response_values(ChainModel& model, std::size_t agent, const ReachSet& reach) {
    const GameSystem& g = model.game();
    std::vector<Rat> values(reach.size());
    std::vector<PolicyEntry> entries(reach.size());
    for (std::uint64_t n = reach.max_time(); n >= 1; --n) {
        for (std::size_t i : reach.slice(n)) {
            const ChainNode& node = reach.node(i);
            PolicyEntry& e = entries[i];
            if (g.in_goal(agent, node.v)) {
                e.value = 1;
            } else if (model.is_terminal(node.n)) {
                e.value = 0;
            } else {
                const std::size_t next_sid = model.advance(node.sid, node.v);
                bool first = true;
                for (const ActionRow& r : model.action_rows(node.sid, node.v, agent)) {
                    Rat q = backup(r.row, reach, values, next_sid, node.n);
                    if (first || q > e.value) {
                        e.value = std::move(q);
                        e.action = r.action;
                        first = false;
                    }
                }
            }
            values[i] = e.value;
        }
    }
    return PolicyTable(agent, std::move(entries));
}

BigInt bit_bound(const GameSystem& g, const Profile& profile) {
    BigInt product_size = 1;
    for (const auto& t : profile) product_size *= static_cast<unsigned long>(t.tstates.size());
    std::size_t max_actions = 1;
    for (const auto& a : g.actions) max_actions = std::max(max_actions, a.size());
    BigInt joint;
    mpz_ui_pow_ui(joint.get_mpz_t(), max_actions, g.bound);
    const BigInt per_step = BigInt(static_cast<unsigned long>(ceil_log2(joint))) +
                            BigInt(static_cast<unsigned long>(g.bound + 1)) * g.lbits;
    const BigInt width = BigInt(static_cast<unsigned long>(ceil_log2(product_size * static_cast<unsigned long>(g.num_states()))));
    return g.horizon * (width + per_step);
}

std::string dump_values(const ChainModel& model, const ReachSet& reach, const ValueTable& values) {
    const GameSystem& g = model.game();
    const Profile& profile = model.transducer().profile();
    std::vector<std::size_t> order(reach.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const ChainNode& x = reach.node(a);
        const ChainNode& y = reach.node(b);
        if (x.v != y.v) return x.v < y.v;
        if (x.sid != y.sid) return model.product_state(x.sid) < model.product_state(y.sid);
        return x.n < y.n;
    });
    std::ostringstream os;
    for (std::size_t i : order) {
        const ChainNode& node = reach.node(i);
        os << "state " << g.states[node.v] << " (";
        const ProductState& s = model.product_state(node.sid);
        for (std::size_t k = 0; k < s.size(); ++k) os << (k ? "," : "") << profile[k].tstates[s[k]];
        os << ") " << node.n << " = " << to_string(values.at(i)) << "\n";
    }
    return os.str();
}

StrategyTransducer policy_transducer(ChainModel& model, const ReachSet& reach, const PolicyTable& policy) {
    const GameSystem& g = model.game();
    const std::size_t agent = policy.agent();
    const std::size_t nv = g.num_states();

    std::map<std::pair<std::size_t, std::uint64_t>, std::size_t> ids;
    for (const ChainNode& node : reach.nodes()) ids.try_emplace({node.sid, node.n}, 0);
    std::size_t next_id = 0;
    for (auto& [key, id] : ids) id = next_id++;
    const std::size_t idle = next_id;

    StrategyTransducer t;
    t.agent = agent;
    t.lbits = g.lbits;
    t.num_game_states = nv;
    t.tstates.resize(idle + 1);
    t.step.assign(t.tstates.size() * nv, idle);
    t.output.assign(t.tstates.size() * nv, std::nullopt);
    const BigInt one = pow2(g.lbits);

    auto point_mass = [&](std::size_t a) { return ActionDist{ActionProb{a, one}}; };
    for (const auto& [key, id] : ids) {
        const auto [sid, n] = key;
        t.tstates[id] = "p" + std::to_string(sid) + "n" + std::to_string(n);
        for (std::size_t v = 0; v < nv; ++v) {
            auto target = ids.find({model.advance(sid, v), n + 1});
            t.step[id * nv + v] = target == ids.end() ? idle : target->second;
            if (!g.is_active(agent, v)) continue;
            std::size_t action = 0;
            if (auto node = reach.find(v, sid, n); node && policy.at(*node).action) action = *policy.at(*node).action;
            t.output[id * nv + v] = point_mass(action);
        }
    }
    t.tstates[idle] = "idle";
    for (std::size_t v = 0; v < nv; ++v) {
        if (g.is_active(agent, v)) t.output[idle * nv + v] = point_mass(0);
    }
    auto root = ids.find({model.initial_sid(), 1});
    t.init = root == ids.end() ? idle : root->second;
    return t;
}

} // namespace eqcheck

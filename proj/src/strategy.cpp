#include "eqcheck/strategy.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace eqcheck {

namespace {
const BigInt kZero = 0;
}

const ActionDist& StrategyTransducer::out(std::size_t t, std::size_t v) const {
    const auto& o = output[t * num_game_states + v];
    if (!o) throw std::logic_error("consulted bottom output of agent " + std::to_string(agent + 1));
    return *o;
}

std::size_t StrategyTransducer::run(std::size_t from, std::span<const std::size_t> word) const {
    std::size_t t = from;
    for (std::size_t v : word) t = next(t, v);
    return t;
}

const BigInt& prob_of(const ActionDist& d, std::size_t a) {
    for (const ActionProb& p : d) {
        if (p.action == a) return p.numerator;
    }
    return kZero;
}

std::vector<Violation> validate_transducer(const GameSystem& g, const StrategyTransducer& t) {
    std::vector<Violation> out;
    const std::string who = "transducer agent " + std::to_string(t.agent + 1);
    auto add = [&](std::string what) { out.push_back({who, std::move(what)}); };

    if (t.agent >= g.num_agents()) {
        add("agent index out of range");
        return out;
    }
    if (t.lbits != g.lbits) add("lbits mismatch");
    if (t.tstates.empty()) add("no transducer states");
    if (t.init >= t.tstates.size()) add("initial state out of range");
    const std::size_t cells = t.tstates.size() * g.num_states();
    if (t.num_game_states != g.num_states() || t.step.size() != cells || t.output.size() != cells) {
        add("tables do not cover S x V");
        return out;
    }
    const BigInt one = pow2(g.lbits);
    const std::size_t num_actions = g.actions[t.agent].size();
    for (std::size_t s = 0; s < t.tstates.size(); ++s) {
        for (std::size_t v = 0; v < g.num_states(); ++v) {
            const std::string where = t.tstates[s] + " " + g.states[v];
            if (t.next(s, v) >= t.tstates.size()) add("step target out of range at " + where);
            const bool active = g.is_active(t.agent, v);
            const auto& o = t.output[s * g.num_states() + v];
            if (active && !o) {
                add("missing output at " + where);
                continue;
            }
            if (!active && o) {
                add("output defined where agent is not playing at " + where);
                continue;
            }
            if (!o) continue;
            BigInt sum = 0;
            for (std::size_t j = 0; j < o->size(); ++j) {
                const ActionProb& p = (*o)[j];
                if (p.action >= num_actions) add("unknown action at " + where);
                if (j > 0 && (*o)[j - 1].action >= p.action) add("actions not strictly ascending at " + where);
                if (p.numerator <= 0 || p.numerator > one) add("probability out of range at " + where);
                sum += p.numerator;
            }
            if (sum != one) add("output sum ≠ 1 at " + where);
        }
    }
    return out;
}

std::vector<Violation> validate_profile(const GameSystem& g, const Profile& profile) {
    std::vector<Violation> out;
    if (profile.size() != g.num_agents()) {
        out.push_back({"profile", "expected " + std::to_string(g.num_agents()) + " transducers, got " +
                                      std::to_string(profile.size())});
        return out;
    }
    for (std::size_t i = 0; i < profile.size(); ++i) {
        if (profile[i].agent != i) out.push_back({"profile", "transducer " + std::to_string(i + 1) + " is for another agent"});
        auto v = validate_transducer(g, profile[i]);
        out.insert(out.end(), v.begin(), v.end());
    }
    return out;
}

StrategyTransducer substrategy(const StrategyTransducer& t, std::span<const std::size_t> history) {
    if (history.empty()) throw std::invalid_argument("history must be non-empty");
    StrategyTransducer out = t;
    out.init = t.run(t.init, history.first(history.size() - 1));
    return out;
}

ProductTransducer::ProductTransducer(const GameSystem& game, Profile profile)
    : game_(&game), profile_(std::move(profile)) {
    if (profile_.size() != game.num_agents()) throw std::invalid_argument("profile size differs from agent count");
}

ProductState ProductTransducer::initial() const {
    ProductState s(profile_.size());
    for (std::size_t i = 0; i < profile_.size(); ++i) s[i] = profile_[i].init;
    return s;
}

ProductState ProductTransducer::advance(const ProductState& s, std::size_t v) const {
    ProductState out(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) out[i] = profile_[i].next(s[i], v);
    return out;
}

Rat ProductTransducer::joint_action_prob(const ProductState& s, std::size_t v,
                                         std::span<const std::size_t> theta) const {
    const auto& active = game_->playing[v];
    if (theta.size() != active.size()) throw std::invalid_argument("joint action has wrong arity");
    BigInt num = 1;
    for (std::size_t j = 0; j < active.size(); ++j) {
        const std::size_t agent = active[j];
        if (theta[j] >= game_->actions[agent].size()) throw std::out_of_range("action not in agent's action set");
        num *= prob_of(profile_[agent].out(s[agent], v), theta[j]);
        if (num == 0) return Rat(0);
    }
    Rat out(num, pow2(static_cast<unsigned long>(game_->lbits) * active.size()));
    out.canonicalize();
    return out;
}

BigInt ProductTransducer::size() const {
    BigInt n = 1;
    for (const auto& t : profile_) n *= static_cast<unsigned long>(t.tstates.size());
    return n;
}

} // namespace eqcheck

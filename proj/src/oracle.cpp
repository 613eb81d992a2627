#include "eqcheck/oracle.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace eqcheck {

namespace {

std::uint64_t small_horizon(const GameSystem& g) {
    auto f = g.horizon_u64();
    if (!f || *f > 4096) throw OracleCapExceeded("horizon too large for enumeration");
    return *f;
}

Rat action_prob(const GameSystem& g, const StrategyTransducer& t, std::size_t ts, std::size_t v, std::size_t a) {
    return dyadic_to_rat({prob_of(t.out(ts, v), a), g.lbits});
}

/// Joint actions at v with positive probability. With a deviator, its
/// component is fixed to `forced` and contributes factor 1.
std::vector<std::pair<std::size_t, Rat>> joint_distribution(const GameSystem& g, const Profile& profile,
                                                            const std::vector<std::size_t>& ts, std::size_t v,
                                                            std::optional<std::size_t> deviator = std::nullopt,
                                                            std::size_t forced = 0) {
    std::vector<std::pair<std::size_t, Rat>> out;
    const auto& active = g.playing[v];
    for (std::size_t theta = 0; theta < g.joint_action_count(v); ++theta) {
        const auto tuple = g.decode_joint(v, theta);
        Rat p = 1;
        for (std::size_t j = 0; j < active.size() && p != 0; ++j) {
            const std::size_t agent = active[j];
            if (deviator && agent == *deviator) p *= tuple[j] == forced ? 1 : 0;
            else p *= action_prob(g, profile[agent], ts[agent], v, tuple[j]);
        }
        if (p != 0) out.emplace_back(theta, p);
    }
    return out;
}

std::vector<std::size_t> advance_all(const Profile& profile, const std::vector<std::size_t>& ts, std::size_t v) {
    std::vector<std::size_t> next(ts.size());
    for (std::size_t k = 0; k < ts.size(); ++k) next[k] = profile[k].next(ts[k], v);
    return next;
}

std::vector<std::size_t> initial_states(const Profile& profile) {
    std::vector<std::size_t> ts;
    for (const auto& t : profile) ts.push_back(t.init);
    return ts;
}

Rat outcome_prob(const GameSystem& g, const Outcome& o) { return dyadic_to_rat({o.numerator, g.lbits}); }

/// Play enumeration where `choose` (if set) fixes the deviator's action at a
/// history, given the transducer states reached.
PlayTree plays_with(const GameSystem& g, const Profile& profile, std::size_t cap, std::optional<std::size_t> deviator,
                    const std::function<std::size_t(const std::vector<std::size_t>&, const std::vector<std::size_t>&)>&
                        choose) {
    const std::uint64_t f = small_horizon(g);
    PlayTree tree;
    std::size_t nodes = 0;
    std::vector<std::size_t> play{g.init};
    std::function<void(const std::vector<std::size_t>&, const Rat&)> walk = [&](const std::vector<std::size_t>& ts,
                                                                                const Rat& p) {
        if (++nodes > cap) throw OracleCapExceeded("play enumeration exceeds cap " + std::to_string(cap));
        if (play.size() == f) {
            tree.plays.push_back({play, p});
            return;
        }
        const std::size_t v = play.back();
        std::optional<std::size_t> forced;
        if (deviator && g.is_active(*deviator, v)) forced = choose(play, ts);
        const auto next = advance_all(profile, ts, v);
        for (const auto& [theta, q] : joint_distribution(g, profile, ts, v, forced ? deviator : std::nullopt,
                                                         forced.value_or(0))) {
            for (const Outcome& o : g.row(v, theta)) {
                play.push_back(o.target);
                walk(next, p * q * outcome_prob(g, o));
                play.pop_back();
            }
        }
    };
    walk(initial_states(profile), Rat(1));
    return tree;
}

Rat payoff_over(const GameSystem& g, const PlayTree& tree, std::size_t agent) {
    Rat sum = 0;
    for (const auto& play : tree.plays) {
        if (payoff_of_play(g, play.states, agent) == 1) sum += play.probability;
    }
    return sum;
}

} // namespace

Rat PlayTree::total() const {
    Rat sum = 0;
    for (const auto& p : plays) sum += p.probability;
    return sum;
}

PlayTree enumerate_plays(const GameSystem& g, const Profile& profile, std::size_t cap) {
    return plays_with(g, profile, cap, std::nullopt, {});
}

Rat oracle_payoff(const GameSystem& g, const Profile& profile, std::size_t agent, std::size_t cap) {
    return payoff_over(g, enumerate_plays(g, profile, cap), agent);
}

Rat oracle_best_response(const GameSystem& g, const Profile& profile, std::size_t agent, std::size_t cap) {
    const std::uint64_t f = small_horizon(g);
    std::size_t nodes = 0;
    std::function<Rat(std::size_t, std::uint64_t, const std::vector<std::size_t>&)> value =
        [&](std::size_t v, std::uint64_t n, const std::vector<std::size_t>& ts) -> Rat {
        if (++nodes > cap) throw OracleCapExceeded("history tree exceeds cap " + std::to_string(cap));
        if (g.in_goal(agent, v)) return 1;
        if (n == f) return 0;
        const auto next = advance_all(profile, ts, v);
        auto expect = [&](const std::vector<std::pair<std::size_t, Rat>>& joint) {
            Rat sum = 0;
            for (const auto& [theta, q] : joint) {
                for (const Outcome& o : g.row(v, theta)) sum += q * outcome_prob(g, o) * value(o.target, n + 1, next);
            }
            return sum;
        };
        if (!g.is_active(agent, v)) return expect(joint_distribution(g, profile, ts, v));
        Rat best = -1;
        for (std::size_t a = 0; a < g.actions[agent].size(); ++a) {
            best = std::max(best, expect(joint_distribution(g, profile, ts, v, agent, a)));
        }
        return best;
    };
    return value(g.init, 1, initial_states(profile));
}

Rat oracle_best_response_enumerated(const GameSystem& g, const Profile& profile, std::size_t agent,
                                    std::size_t max_policies) {
    const std::uint64_t f = small_horizon(g);
    // Decision points keyed like chain states: (v, transducer states, time).
    using Key = std::tuple<std::size_t, std::vector<std::size_t>, std::uint64_t>;
    std::map<Key, std::size_t> points;
    std::function<void(std::size_t, std::uint64_t, const std::vector<std::size_t>&)> collect =
        [&](std::size_t v, std::uint64_t n, const std::vector<std::size_t>& ts) {
            if (g.in_goal(agent, v) || n == f) return;
            if (points.size() > 64) throw OracleCapExceeded("too many decision points");
            const auto next = advance_all(profile, ts, v);
            if (g.is_active(agent, v)) points.emplace(Key{v, ts, n}, points.size());
            const std::size_t choices = g.is_active(agent, v) ? g.actions[agent].size() : 1;
            for (std::size_t a = 0; a < choices; ++a) {
                auto joint = g.is_active(agent, v) ? joint_distribution(g, profile, ts, v, agent, a)
                                                   : joint_distribution(g, profile, ts, v);
                for (const auto& [theta, q] : joint) {
                    for (const Outcome& o : g.row(v, theta)) collect(o.target, n + 1, next);
                }
            }
        };
    collect(g.init, 1, initial_states(profile));

    const std::size_t arity = g.actions[agent].size();
    std::size_t total = 1;
    for (std::size_t k = 0; k < points.size(); ++k) {
        total *= arity;
        if (total > max_policies) throw OracleCapExceeded("too many policies");
    }
    Rat best = -1;
    std::vector<std::size_t> policy(points.size(), 0);
    for (std::size_t index = 0; index < total; ++index) {
        std::size_t rest = index;
        for (auto& a : policy) {
            a = rest % arity;
            rest /= arity;
        }
        auto tree = plays_with(g, profile, kOracleCap, agent,
                               [&](const std::vector<std::size_t>& play, const std::vector<std::size_t>& ts) {
                                   auto it = points.find(Key{play.back(), ts, play.size()});
                                   return it == points.end() ? std::size_t{0} : policy[it->second];
                               });
        best = std::max(best, payoff_over(g, tree, agent));
    }
    return best;
}

bool oracle_is_nash(const GameSystem& g, const Profile& profile, std::size_t cap) {
    for (std::size_t i = 0; i < g.num_agents(); ++i) {
        if (oracle_best_response(g, profile, i, cap) > oracle_payoff(g, profile, i, cap)) return false;
    }
    return true;
}

GameSystem oracle_subgame(const GameSystem& g, const std::vector<std::size_t>& history) {
    if (history.empty()) throw std::invalid_argument("empty history");
    GameSystem sub = g;
    sub.init = history.back();
    sub.horizon = g.horizon - BigInt(static_cast<unsigned long>(history.size())) + 1;
    for (std::size_t i = 0; i < g.num_agents(); ++i) {
        bool satisfied = false;
        for (std::size_t j = 0; j + 1 < history.size(); ++j) satisfied = satisfied || g.in_goal(i, history[j]);
        if (satisfied) sub.goals[i].assign(g.num_states(), true);
    }
    return sub;
}

std::vector<std::vector<std::size_t>> enumerate_histories(const GameSystem& g, std::size_t cap) {
    const std::uint64_t f = small_horizon(g);
    std::vector<std::vector<std::size_t>> out{{g.init}};
    for (std::size_t k = 0; k < out.size(); ++k) {
        if (out[k].size() == f) continue;
        for (std::size_t w : possible_successors(g, out[k].back())) {
            if (out.size() >= cap) throw OracleCapExceeded("history count exceeds cap " + std::to_string(cap));
            auto h = out[k];
            h.push_back(w);
            out.push_back(std::move(h));
        }
    }
    return out;
}

bool oracle_is_spe(const GameSystem& g, const Profile& profile, std::size_t cap) {
    for (const auto& h : enumerate_histories(g, cap)) {
        GameSystem sub = oracle_subgame(g, h);
        Profile subprofile;
        for (const auto& t : profile) subprofile.push_back(substrategy(t, h));
        if (!oracle_is_nash(sub, subprofile, cap)) return false;
    }
    return true;
}

Profile synthesize_spe(const GameSystem& g, std::size_t max_horizon) {
    auto fh = g.horizon_u64();
    if (!fh || *fh > max_horizon) throw SynthesisRefused("horizon too large for a time-counting transducer");
    const std::size_t f = *fh;
    const std::size_t k = g.num_agents();
    const std::size_t nv = g.num_states();
    const BigInt one = pow2(g.lbits);

    // w[v][i]: value of agent i from v at the current time, goal not yet visited.
    std::vector<std::vector<Rat>> w(nv, std::vector<Rat>(k, 0));
    for (std::size_t v = 0; v < nv; ++v) {
        for (std::size_t i = 0; i < k; ++i) w[v][i] = g.in_goal(i, v) ? 1 : 0;
    }
    // choice[n][v][j]: distribution of the j-th active agent at (v, n).
    std::vector<std::vector<std::vector<ActionDist>>> choice(f + 1, std::vector<std::vector<ActionDist>>(nv));

    for (std::size_t n = f - 1; n >= 1; --n) {
        std::vector<std::vector<Rat>> next_w(nv, std::vector<Rat>(k));
        for (std::size_t v = 0; v < nv; ++v) {
            const auto& active = g.playing[v];
            const std::size_t joint = g.joint_action_count(v);
            std::vector<std::vector<Rat>> u(joint, std::vector<Rat>(k, 0));
            for (std::size_t theta = 0; theta < joint; ++theta) {
                for (std::size_t i = 0; i < k; ++i) {
                    if (g.in_goal(i, v)) {
                        u[theta][i] = 1;
                        continue;
                    }
                    for (const Outcome& o : g.row(v, theta)) u[theta][i] += outcome_prob(g, o) * w[o.target][i];
                }
            }
            auto pure_equilibrium = [&](std::size_t theta) {
                auto tuple = g.decode_joint(v, theta);
                for (std::size_t j = 0; j < active.size(); ++j) {
                    auto alt = tuple;
                    for (std::size_t a = 0; a < g.actions[active[j]].size(); ++a) {
                        alt[j] = a;
                        if (u[g.encode_joint(v, alt)][active[j]] > u[theta][active[j]]) return false;
                    }
                }
                return true;
            };
            std::optional<std::size_t> pure;
            for (std::size_t theta = 0; theta < joint && !pure; ++theta) {
                if (pure_equilibrium(theta)) pure = theta;
            }
            auto& dists = choice[n][v];
            if (pure) {
                auto tuple = g.decode_joint(v, *pure);
                for (std::size_t a : tuple) dists.push_back({{a, one}});
                next_w[v] = u[*pure];
                continue;
            }
            if (active.size() != 2 || g.actions[active[0]].size() != 2 || g.actions[active[1]].size() != 2) {
                throw SynthesisRefused("no pure stage equilibrium at " + g.states[v]);
            }
            // Each agent mixes so that the other is indifferent.
            const std::size_t x = active[0], y = active[1];
            auto U = [&](std::size_t a, std::size_t b, std::size_t who) -> const Rat& { return u[a * 2 + b][who]; };
            const Rat dp = U(0, 0, y) - U(1, 0, y) - U(0, 1, y) + U(1, 1, y);
            const Rat dq = U(0, 0, x) - U(0, 1, x) - U(1, 0, x) + U(1, 1, x);
            if (dp == 0 || dq == 0) throw SynthesisRefused("degenerate stage game at " + g.states[v]);
            const Rat p = (U(1, 1, y) - U(1, 0, y)) / dp;
            const Rat q = (U(1, 1, x) - U(0, 1, x)) / dq;
            auto grid = [&](const Rat& r) -> std::optional<BigInt> {
                if (r <= 0 || r >= 1) return std::nullopt;
                Rat scaled = r * Rat(one);
                scaled.canonicalize();
                if (scaled.get_den() != 1) return std::nullopt;
                return scaled.get_num();
            };
            auto pn = grid(p), qn = grid(q);
            if (!pn || !qn) throw SynthesisRefused("stage equilibrium not representable at " + g.states[v]);
            dists.push_back({{0, *pn}, {1, one - *pn}});
            dists.push_back({{0, *qn}, {1, one - *qn}});
            const Rat probs[2][2] = {{p * q, p * (1 - q)}, {(1 - p) * q, (1 - p) * (1 - q)}};
            for (std::size_t i = 0; i < k; ++i) {
                Rat sum = 0;
                for (std::size_t a = 0; a < 2; ++a) {
                    for (std::size_t b = 0; b < 2; ++b) sum += probs[a][b] * U(a, b, i);
                }
                next_w[v][i] = sum;
            }
        }
        w = std::move(next_w);
        if (n == 1) break;
    }

    Profile profile;
    for (std::size_t i = 0; i < k; ++i) {
        StrategyTransducer t;
        t.agent = i;
        t.lbits = g.lbits;
        t.num_game_states = nv;
        for (std::size_t n = 1; n <= f; ++n) t.tstates.push_back("n" + std::to_string(n));
        t.init = 0;
        t.step.resize(f * nv);
        t.output.assign(f * nv, std::nullopt);
        for (std::size_t s = 0; s < f; ++s) {
            for (std::size_t v = 0; v < nv; ++v) {
                t.step[s * nv + v] = std::min(s + 1, f - 1);
                const auto& active = g.playing[v];
                auto pos = std::find(active.begin(), active.end(), i);
                if (pos == active.end()) continue;
                const auto& dists = choice[s + 1][v];
                t.output[s * nv + v] =
                    dists.empty() ? ActionDist{{0, one}} : dists[static_cast<std::size_t>(pos - active.begin())];
            }
        }
        profile.push_back(std::move(t));
    }
    return profile;
}

} // namespace eqcheck

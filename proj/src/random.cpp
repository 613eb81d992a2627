#include "eqcheck/random.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

namespace eqcheck {

namespace {

// Own range mapping so instances do not depend on the standard library's
// distribution implementations.
std::size_t pick(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
    return lo + static_cast<std::size_t>(rng() % (hi - lo + 1));
}

std::vector<std::uint64_t> random_weights(std::mt19937_64& rng, std::size_t count) {
    std::vector<std::uint64_t> w(count);
    for (auto& x : w) x = pick(rng, 0, 3);
    if (std::all_of(w.begin(), w.end(), [](std::uint64_t x) { return x == 0; })) w[pick(rng, 0, count - 1)] = 1;
    return w;
}

/// Uniform integer in [0, 2^bits).
BigInt uniform_bits(std::mt19937_64& rng, unsigned bits) {
    BigInt out = 0;
    unsigned filled = 0;
    while (filled < bits) {
        out <<= 64;
        out += BigInt(std::to_string(rng()));
        filled += 64;
    }
    out >>= (filled - bits);
    return out;
}

} // namespace

std::vector<BigInt> dyadic_normalize(const std::vector<std::uint64_t>& weights, unsigned lbits) {
    const std::uint64_t sum = std::accumulate(weights.begin(), weights.end(), std::uint64_t{0});
    if (sum == 0) throw std::invalid_argument("all weights are zero");
    const BigInt one = pow2(lbits);
    std::vector<BigInt> out(weights.size());
    std::vector<BigInt> rem(weights.size());
    BigInt assigned = 0;
    for (std::size_t j = 0; j < weights.size(); ++j) {
        BigInt scaled = one * BigInt(std::to_string(weights[j]));
        mpz_fdiv_qr_ui(out[j].get_mpz_t(), rem[j].get_mpz_t(), scaled.get_mpz_t(), sum);
        assigned += out[j];
    }
    std::vector<std::size_t> order(weights.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return rem[a] > rem[b]; });
    for (std::size_t j = 0; assigned < one; ++j) {
        out[order[j]] += 1;
        assigned += 1;
    }
    return out;
}

Instance gen_random_instance(std::uint64_t seed, const InstanceLimits& limits) {
    std::mt19937_64 rng(seed);
    Instance inst;
    GameSystem& g = inst.game;
    const std::size_t nv = pick(rng, 1, limits.states);
    const std::size_t k = pick(rng, 1, limits.agents);
    g.bound = pick(rng, 1, std::min(k, limits.bound));
    g.lbits = static_cast<unsigned>(pick(rng, 1, limits.lbits));
    g.horizon = static_cast<unsigned long>(pick(rng, 1, limits.horizon));
    for (std::size_t v = 0; v < nv; ++v) g.states.push_back("v" + std::to_string(v));
    g.init = 0;
    g.actions.resize(k);
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t na = pick(rng, 1, limits.actions);
        for (std::size_t a = 0; a < na; ++a) g.actions[i].push_back(std::string(1, static_cast<char>('a' + a)));
    }
    g.goals.assign(k, std::vector<bool>(nv, false));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t v = 0; v < nv; ++v) g.goals[i][v] = pick(rng, 0, 2) == 0;
    }
    g.playing.resize(nv);
    for (std::size_t v = 0; v < nv; ++v) {
        const std::size_t size = pick(rng, 0, g.bound);
        std::vector<std::size_t> agents(k);
        std::iota(agents.begin(), agents.end(), 0);
        // Partial Fisher-Yates with the same range mapping.
        for (std::size_t j = 0; j < size; ++j) std::swap(agents[j], agents[pick(rng, j, k - 1)]);
        agents.resize(size);
        std::sort(agents.begin(), agents.end());
        g.playing[v] = std::move(agents);
    }
    g.trans.resize(nv);
    for (std::size_t v = 0; v < nv; ++v) {
        for (std::size_t theta = 0; theta < g.joint_action_count(v); ++theta) {
            const auto nums = dyadic_normalize(random_weights(rng, nv), g.lbits);
            StateRow row;
            for (std::size_t w = 0; w < nv; ++w) {
                if (nums[w] > 0) row.push_back({w, nums[w]});
            }
            g.trans[v].push_back(std::move(row));
        }
    }
    for (std::size_t i = 0; i < k; ++i) {
        StrategyTransducer t;
        t.agent = i;
        t.lbits = g.lbits;
        t.num_game_states = nv;
        const std::size_t ns = pick(rng, 1, limits.tstates);
        for (std::size_t s = 0; s < ns; ++s) t.tstates.push_back("s" + std::to_string(s));
        t.init = 0;
        t.step.resize(ns * nv);
        t.output.assign(ns * nv, std::nullopt);
        for (std::size_t s = 0; s < ns; ++s) {
            for (std::size_t v = 0; v < nv; ++v) {
                t.step[s * nv + v] = pick(rng, 0, ns - 1);
                if (!g.is_active(i, v)) continue;
                const auto nums = dyadic_normalize(random_weights(rng, g.actions[i].size()), g.lbits);
                ActionDist dist;
                for (std::size_t a = 0; a < nums.size(); ++a) {
                    if (nums[a] > 0) dist.push_back({a, nums[a]});
                }
                t.output[s * nv + v] = std::move(dist);
            }
        }
        inst.profile.push_back(std::move(t));
    }
    return inst;
}

SimulationReport simulate(const GameSystem& g, const Profile& profile, std::uint64_t seed, std::size_t count) {
    auto f = g.horizon_u64();
    if (!f) throw std::invalid_argument("horizon too large to simulate");
    std::mt19937_64 rng(seed);
    SimulationReport report;
    report.goal_hits.assign(g.num_agents(), 0);
    auto sample = [&](auto begin, auto end, auto weight) {
        BigInt u = uniform_bits(rng, g.lbits);
        for (auto it = begin; it != end; ++it) {
            if (u < weight(*it)) return it;
            u -= weight(*it);
        }
        throw std::logic_error("distribution does not sum to one");
    };
    for (std::size_t c = 0; c < count; ++c) {
        std::vector<std::size_t> ts;
        for (const auto& t : profile) ts.push_back(t.init);
        std::vector<std::size_t> play{g.init};
        while (play.size() < *f) {
            const std::size_t v = play.back();
            std::vector<std::size_t> tuple;
            for (std::size_t agent : g.playing[v]) {
                const ActionDist& d = profile[agent].out(ts[agent], v);
                tuple.push_back(sample(d.begin(), d.end(), [](const ActionProb& p) { return p.numerator; })->action);
            }
            const StateRow& row = g.row(v, g.encode_joint(v, tuple));
            const std::size_t w = sample(row.begin(), row.end(), [](const Outcome& o) { return o.numerator; })->target;
            for (std::size_t k = 0; k < ts.size(); ++k) ts[k] = profile[k].next(ts[k], v);
            play.push_back(w);
        }
        for (std::size_t i = 0; i < g.num_agents(); ++i) {
            if (std::any_of(play.begin(), play.end(), [&](std::size_t v) { return g.in_goal(i, v); })) {
                ++report.goal_hits[i];
            }
        }
        report.plays.push_back(std::move(play));
    }
    return report;
}

} // namespace eqcheck

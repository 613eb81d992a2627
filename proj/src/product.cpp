#include "eqcheck/product.hpp"

#include <algorithm>
#include <functional>

namespace eqcheck {

namespace {

std::uint64_t pack(std::size_t sid, std::size_t v, std::size_t num_states) {
    return static_cast<std::uint64_t>(sid) * num_states + v;
}

std::size_t mix(std::size_t seed, std::size_t value) {
    return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

GameRow to_row(const std::vector<BigInt>& acc, const BigInt& den) {
    GameRow row;
    for (std::size_t v = 0; v < acc.size(); ++v) {
        if (acc[v] == 0) continue;
        Rat p(acc[v], den);
        p.canonicalize();
        row.emplace_back(v, std::move(p));
    }
    return row;
}

} // namespace

std::size_t ChainModel::VecHash::operator()(const ProductState& s) const noexcept {
    std::size_t h = s.size();
    for (std::size_t x : s) h = mix(h, x);
    return h;
}

ChainModel::ChainModel(const GameSystem& game, Profile profile)
    : game_(&game),
      pt_(game, std::move(profile)),
      horizon_(game.horizon_u64()),
      action_rows_(game.num_agents()),
      any_successors_(game.num_states()) {
    intern(pt_.initial());
}

std::size_t ChainModel::intern(const ProductState& s) {
    auto [it, inserted] = product_ids_.try_emplace(s, products_.size());
    if (inserted) products_.push_back(s);
    return it->second;
}

std::size_t ChainModel::advance(std::size_t sid, std::size_t v) {
    const std::uint64_t key = pack(sid, v, game_->num_states());
    if (auto it = advance_cache_.find(key); it != advance_cache_.end()) return it->second;
    const std::size_t next = intern(pt_.advance(products_[sid], v));
    advance_cache_.emplace(key, next);
    return next;
}

const GameRow& ChainModel::profile_row(std::size_t sid, std::size_t v) {
    const std::uint64_t key = pack(sid, v, game_->num_states());
    if (auto it = profile_rows_.find(key); it != profile_rows_.end()) return it->second;

    const GameSystem& g = *game_;
    const ProductState& s = products_[sid];
    const auto& active = g.playing[v];
    std::vector<BigInt> acc(g.num_states());
    const std::size_t count = g.joint_action_count(v);
    for (std::size_t t = 0; t < count; ++t) {
        const auto theta = g.decode_joint(v, t);
        BigInt w = 1;
        for (std::size_t j = 0; j < active.size() && w != 0; ++j) {
            w *= prob_of(pt_.profile()[active[j]].out(s[active[j]], v), theta[j]);
        }
        if (w == 0) continue;
        for (const Outcome& o : g.row(v, t)) acc[o.target] += w * o.numerator;
    }
    const BigInt den = pow2(static_cast<unsigned long>(g.lbits) * (active.size() + 1));
    return profile_rows_.emplace(key, to_row(acc, den)).first->second;
}

const std::vector<ActionRow>& ChainModel::action_rows(std::size_t sid, std::size_t v, std::size_t agent) {
    auto& cache = action_rows_[agent];
    const std::uint64_t key = pack(sid, v, game_->num_states());
    if (auto it = cache.find(key); it != cache.end()) return it->second;

    const GameSystem& g = *game_;
    std::vector<ActionRow> rows;
    if (!g.is_active(agent, v)) {
        rows.push_back({std::nullopt, profile_row(sid, v)});
        return cache.emplace(key, std::move(rows)).first->second;
    }
    const ProductState& s = products_[sid];
    const auto& active = g.playing[v];
    const std::size_t pos = static_cast<std::size_t>(std::find(active.begin(), active.end(), agent) - active.begin());
    const std::size_t num_actions = g.actions[agent].size();
    std::vector<std::vector<BigInt>> acc(num_actions, std::vector<BigInt>(g.num_states()));
    const std::size_t count = g.joint_action_count(v);
    for (std::size_t t = 0; t < count; ++t) {
        const auto theta = g.decode_joint(v, t);
        BigInt w = 1;
        for (std::size_t j = 0; j < active.size() && w != 0; ++j) {
            if (j == pos) continue;
            w *= prob_of(pt_.profile()[active[j]].out(s[active[j]], v), theta[j]);
        }
        if (w == 0) continue;
        for (const Outcome& o : g.row(v, t)) acc[theta[pos]][o.target] += w * o.numerator;
    }
    const BigInt den = pow2(static_cast<unsigned long>(g.lbits) * active.size());
    for (std::size_t a = 0; a < num_actions; ++a) rows.push_back({a, to_row(acc[a], den)});
    return cache.emplace(key, std::move(rows)).first->second;
}

const std::vector<std::size_t>& ChainModel::any_successors(std::size_t v) {
    auto& slot = any_successors_[v];
    if (!slot) slot = possible_successors(*game_, v);
    return *slot;
}

Rat chain_prob(ChainModel& model, const ChainState& from, const ChainState& to) {
    if (model.is_terminal(from.n)) throw std::invalid_argument("chain_prob from a terminal state");
    if (to.n != from.n + 1) return Rat(0);
    if (to.s != model.transducer().advance(from.s, from.v)) return Rat(0);
    const GameRow& row = model.profile_row(model.intern(from.s), from.v);
    for (const auto& [v, p] : row) {
        if (v == to.v) return p;
    }
    return Rat(0);
}

std::vector<MdpChoice> mdp_actions(ChainModel& model, const ChainState& state, std::size_t agent) {
    if (model.is_terminal(state.n)) throw std::invalid_argument("mdp_actions at a terminal state");
    const std::size_t sid = model.intern(state.s);
    const ProductState next = model.transducer().advance(state.s, state.v);
    std::vector<MdpChoice> out;
    for (const ActionRow& r : model.action_rows(sid, state.v, agent)) {
        MdpChoice choice{r.action, {}};
        for (const auto& [v, p] : r.row) choice.successors.push_back({ChainState{v, next, state.n + 1}, p});
        out.push_back(std::move(choice));
    }
    return out;
}

std::size_t ReachSet::KeyHash::operator()(const std::tuple<std::size_t, std::size_t, std::uint64_t>& k) const noexcept {
    return mix(mix(std::get<0>(k), std::get<1>(k)), static_cast<std::size_t>(std::get<2>(k)));
}

std::optional<std::size_t> ReachSet::find(std::size_t v, std::size_t sid, std::uint64_t n) const {
    auto it = index_.find({v, sid, n});
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

bool ReachSet::contains(const ChainModel& model, const ChainState& s) const {
    for (const ChainNode& node : nodes_) {
        if (node.v == s.v && node.n == s.n && model.product_state(node.sid) == s.s) return true;
    }
    return false;
}

std::span<const std::size_t> ReachSet::slice(std::uint64_t n) const {
    if (n == 0 || n >= slice_start_.size()) return {};
    const std::size_t begin = slice_start_[n - 1];
    const std::size_t end = slice_start_[n];
    return std::span<const std::size_t>(by_time_).subspan(begin, end - begin);
}

std::vector<std::size_t> ReachSet::history(std::size_t i) const {
    std::vector<std::size_t> out;
    for (std::size_t cur = i; cur != ChainNode::kNoPred; cur = nodes_[cur].pred) out.push_back(nodes_[cur].v);
    std::reverse(out.begin(), out.end());
    return out;
}

ChainState ReachSet::state(const ChainModel& model, std::size_t i) const {
    const ChainNode& node = nodes_[i];
    return ChainState{node.v, model.product_state(node.sid), node.n};
}

ReachSet explore(ChainModel& model, ExploreMode mode, std::optional<std::size_t> agent, bool prune_goal,
                 std::size_t cap) {
    if (cap == 0) throw std::invalid_argument("cap must be at least 1");
    if ((mode == ExploreMode::Deviation || prune_goal) && !agent) {
        throw std::invalid_argument("exploration mode needs an agent");
    }
    const GameSystem& g = model.game();
    ReachSet out;
    out.mode_ = mode;
    out.agent_ = agent;

    auto pruned = [&](std::size_t v) { return prune_goal && g.in_goal(*agent, v); };
    auto admit = [&](std::size_t v, std::size_t sid, std::uint64_t n, std::size_t pred) {
        auto [it, inserted] = out.index_.try_emplace({v, sid, n}, out.nodes_.size());
        if (!inserted) return;
        if (out.nodes_.size() >= cap) throw CapExceeded(cap);
        out.nodes_.push_back(ChainNode{v, sid, n, pred});
    };

    if (!pruned(g.init)) admit(g.init, model.initial_sid(), 1, ChainNode::kNoPred);

    std::vector<std::size_t> targets;
    for (std::size_t i = 0; i < out.nodes_.size(); ++i) {
        const ChainNode node = out.nodes_[i];
        if (model.is_terminal(node.n)) continue;
        targets.clear();
        switch (mode) {
        case ExploreMode::Profile:
            for (const auto& [v, p] : model.profile_row(node.sid, node.v)) targets.push_back(v);
            break;
        case ExploreMode::Deviation:
            for (const ActionRow& r : model.action_rows(node.sid, node.v, *agent)) {
                for (const auto& [v, p] : r.row) targets.push_back(v);
            }
            std::sort(targets.begin(), targets.end());
            targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
            break;
        case ExploreMode::AnyAction:
            targets = model.any_successors(node.v);
            break;
        }
        const std::size_t next_sid = model.advance(node.sid, node.v);
        for (std::size_t v : targets) {
            if (pruned(v)) continue;
            admit(v, next_sid, node.n + 1, i);
        }
    }

    // BFS from a single root visits time indices in nondecreasing order.
    out.by_time_.resize(out.nodes_.size());
    for (std::size_t i = 0; i < out.nodes_.size(); ++i) out.by_time_[i] = i;
    const std::uint64_t last = out.max_time();
    out.slice_start_.assign(static_cast<std::size_t>(last) + 1, out.nodes_.size());
    for (std::size_t i = out.nodes_.size(); i-- > 0;) {
        out.slice_start_[static_cast<std::size_t>(out.nodes_[i].n) - 1] = i;
    }
    if (!out.slice_start_.empty()) out.slice_start_[0] = 0;
    return out;
}

ReachSet explore_chain(ChainModel& model, std::size_t cap) {
    return explore(model, ExploreMode::Profile, std::nullopt, false, cap);
}

ReachSet explore_deviation(ChainModel& model, std::size_t agent, std::size_t cap) {
    return explore(model, ExploreMode::Deviation, agent, false, cap);
}

ReachSet relevant_reachable(ChainModel& model, std::size_t agent, std::size_t cap) {
    return explore(model, ExploreMode::AnyAction, agent, true, cap);
}

} // namespace eqcheck

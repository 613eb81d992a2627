#include "eqcheck/atm.hpp"

#include <algorithm>
#include <map>

namespace eqcheck {

namespace {

constexpr unsigned kLbits = 3;
constexpr unsigned long kOne = 8;
constexpr std::size_t kNone = static_cast<std::size_t>(-1);

const char* dir_name(Direction d) { return d == Direction::Right ? "R" : "L"; }

/// Index layout of the compiled game, in construction order.
struct Layout {
    std::size_t n, gamma, rcount;

    std::size_t head(std::size_t i) const { return 2 * i; }
    std::size_t head_exists(std::size_t i) const { return 2 * i + 1; }
    std::size_t v2_base() const { return 2 * n; }
    std::size_t v2_count() const { return n * gamma * 2 * rcount; }
    std::size_t written(std::size_t i, std::size_t g, Direction d, std::size_t r) const {
        return v2_base() + ((i * gamma + g) * 2 + (d == Direction::Right ? 0 : 1)) * rcount + r;
    }
    std::size_t v3_base() const { return v2_base() + v2_count(); }
    std::size_t choice(std::size_t i, std::size_t beta) const { return v3_base() + 2 * i + beta; }
    std::size_t start() const { return v3_base() + 2 * n; }
    std::size_t base() const { return start() + 1; }
    std::size_t goal() const { return start() + 2; }
    std::size_t sink() const { return start() + 3; }
    std::size_t size() const { return start() + 4; }

    // Simulator actions: V2 labels first, then * and X.
    std::size_t accept_action() const { return v2_count(); }
    std::size_t reject_action() const { return v2_count() + 1; }

    struct Written {
        std::size_t cell, symbol;
        Direction dir;
        std::size_t state;
    };
    Written decode(std::size_t v) const {
        std::size_t x = v - v2_base();
        Written w{};
        w.state = x % rcount;
        x /= rcount;
        w.dir = x % 2 == 0 ? Direction::Right : Direction::Left;
        x /= 2;
        w.symbol = x % gamma;
        w.cell = x / gamma;
        return w;
    }
    /// Cell the head lands on, or nullopt when it leaves the tape.
    std::optional<std::size_t> landing(const Written& w) const {
        if (w.dir == Direction::Left) return w.cell == 0 ? std::nullopt : std::optional(w.cell - 1);
        return w.cell + 1 >= n ? std::nullopt : std::optional(w.cell + 1);
    }
};

StateRow point(std::size_t target) { return {Outcome{target, BigInt(kOne)}}; }

/// Simulator transducer state <g, r or none, choice>, choice 0 = none, 1 = alpha, 2 = beta.
struct SimLayout {
    std::size_t gamma, rcount;
    std::size_t index(std::size_t g, std::size_t r, std::size_t c) const { return (g * (rcount + 1) + r) * 3 + c; }
    std::size_t count() const { return gamma * (rcount + 1) * 3; }
};

} // namespace

std::vector<Violation> validate_atm(const ATM& atm) {
    std::vector<Violation> out;
    if (atm.mstates.empty()) out.push_back({"mstates", "no machine states"});
    if (atm.labels.size() != atm.mstates.size()) out.push_back({"mstates", "label count differs from state count"});
    if (atm.init >= atm.mstates.size()) out.push_back({"init", "initial state out of range"});
    if (atm.alphabet.empty() || atm.blank >= atm.alphabet.size()) out.push_back({"alphabet", "blank symbol missing"});
    if (atm.rules.size() != atm.mstates.size() * atm.alphabet.size()) {
        out.push_back({"rules", "rule table has wrong size"});
        return out;
    }
    for (std::size_t r = 0; r < atm.mstates.size() && r < atm.labels.size(); ++r) {
        for (std::size_t g = 0; g < atm.alphabet.size(); ++g) {
            const auto& moves = atm.moves(r, g);
            const std::string where = "rule " + atm.mstates[r] + " " + atm.alphabet[g];
            for (const AtmMove& m : moves) {
                if (m.state >= atm.mstates.size() || m.symbol >= atm.alphabet.size()) {
                    out.push_back({where, "successor out of range"});
                }
            }
            if (moves.empty()) continue;
            switch (atm.labels[r]) {
            case AtmLabel::Det:
                if (moves.size() != 1) out.push_back({where, "deterministic state needs exactly one successor"});
                break;
            case AtmLabel::Exists:
            case AtmLabel::Forall:
                if (moves.size() != 2) out.push_back({where, "branching state needs exactly two successors"});
                break;
            default:
                break;
            }
        }
    }
    return out;
}

BigInt reduction_horizon(const ATM& atm, std::size_t cells) {
    BigInt base = 3 * atm.alphabet.size() * atm.mstates.size();
    BigInt f;
    mpz_pow_ui(f.get_mpz_t(), base.get_mpz_t(), cells);
    return f + 1;
}

CompiledInstance compile(const ATM& atm, std::size_t cells, std::optional<BigInt> horizon_override) {
    if (cells == 0) throw std::invalid_argument("cell bound must be at least 1");
    if (auto problems = validate_atm(atm); !problems.empty()) {
        throw std::invalid_argument(problems.front().location + ": " + problems.front().message);
    }
    const std::size_t n = cells;
    const Layout L{n, atm.alphabet.size(), atm.mstates.size()};
    const std::size_t chooser = n;
    auto existential = [&](std::size_t r) { return atm.labels[r] == AtmLabel::Exists; };

    CompiledInstance out;
    GameSystem& g = out.game;
    g.lbits = kLbits;
    g.bound = 1;
    g.horizon = horizon_override ? *horizon_override : reduction_horizon(atm, n);
    if (g.horizon < 1) throw std::invalid_argument("horizon must be at least 1");

    g.states.resize(L.size());
    out.provenance.resize(L.size());
    for (std::size_t i = 0; i < n; ++i) {
        const std::string cell = std::to_string(i + 1);
        g.states[L.head(i)] = "h" + cell + ".none";
        g.states[L.head_exists(i)] = "h" + cell + ".or";
        out.provenance[L.head(i)] = Role::Head;
        out.provenance[L.head_exists(i)] = Role::HeadExists;
        for (std::size_t sym = 0; sym < L.gamma; ++sym) {
            for (Direction d : {Direction::Right, Direction::Left}) {
                for (std::size_t r = 0; r < L.rcount; ++r) {
                    const std::size_t v = L.written(i, sym, d, r);
                    g.states[v] = "w" + cell + "." + atm.alphabet[sym] + "." + dir_name(d) + "." + atm.mstates[r];
                    out.provenance[v] = Role::Written;
                }
            }
        }
        g.states[L.choice(i, 0)] = "e" + cell + ".alpha";
        g.states[L.choice(i, 1)] = "e" + cell + ".beta";
        out.provenance[L.choice(i, 0)] = Role::Choice;
        out.provenance[L.choice(i, 1)] = Role::Choice;
    }
    g.states[L.start()] = "start";
    g.states[L.base()] = "base";
    g.states[L.goal()] = "goal";
    g.states[L.sink()] = "sink";
    out.provenance[L.start()] = Role::Start;
    out.provenance[L.base()] = Role::Base;
    out.provenance[L.goal()] = Role::Goal;
    out.provenance[L.sink()] = Role::Sink;
    g.init = L.start();

    // Every simulator has the full V2 label set plus * and X.
    std::vector<std::string> sim_actions;
    for (std::size_t v = L.v2_base(); v < L.v3_base(); ++v) sim_actions.push_back(g.states[v]);
    sim_actions.push_back("*");
    sim_actions.push_back("X");
    g.actions.assign(n, sim_actions);
    g.actions.push_back({"alpha", "beta"});
    g.goals.assign(n, std::vector<bool>(L.size(), true));
    g.goals.emplace_back(L.size(), false);
    g.goals[chooser][L.goal()] = true;

    g.playing.assign(L.size(), {});
    for (std::size_t i = 0; i < n; ++i) {
        g.playing[L.head(i)] = {i};
        g.playing[L.head_exists(i)] = {chooser};
        g.playing[L.choice(i, 0)] = {i};
        g.playing[L.choice(i, 1)] = {i};
    }
    g.playing[L.start()] = {chooser};

    g.trans.assign(L.size(), {});
    auto simulator_rows = [&] {
        std::vector<StateRow> rows;
        for (std::size_t v = L.v2_base(); v < L.v3_base(); ++v) rows.push_back(point(v));
        rows.push_back(point(L.goal()));
        rows.push_back(point(L.sink()));
        return rows;
    };
    const std::size_t first_head = existential(atm.init) ? L.head_exists(0) : L.head(0);
    for (std::size_t i = 0; i < n; ++i) {
        g.trans[L.head(i)] = simulator_rows();
        g.trans[L.head_exists(i)] = {point(L.choice(i, 0)), point(L.choice(i, 1))};
        g.trans[L.choice(i, 0)] = simulator_rows();
        g.trans[L.choice(i, 1)] = simulator_rows();
    }
    for (std::size_t v = L.v2_base(); v < L.v3_base(); ++v) {
        const auto w = L.decode(v);
        const auto to = L.landing(w);
        if (!to) g.trans[v] = {point(L.sink())};
        else g.trans[v] = {point(existential(w.state) ? L.head_exists(*to) : L.head(*to))};
    }
    g.trans[L.start()] = {point(L.base()), point(first_head)};
    g.trans[L.base()] = {{{L.base(), BigInt(2)}, {L.goal(), BigInt(6)}}};
    g.trans[L.goal()] = {point(L.goal())};
    g.trans[L.sink()] = {point(L.sink())};

    // Simulator transducers track one ID cell each.
    const SimLayout S{L.gamma, L.rcount};
    auto move_action = [&](std::size_t i, const AtmMove& m) { return L.written(i, m.symbol, m.dir, m.state) - L.v2_base(); };
    for (std::size_t i = 0; i < n; ++i) {
        StrategyTransducer t;
        t.agent = i;
        t.lbits = kLbits;
        t.num_game_states = L.size();
        t.tstates.resize(S.count());
        t.step.assign(S.count() * L.size(), 0);
        t.output.assign(S.count() * L.size(), std::nullopt);
        for (std::size_t sym = 0; sym < L.gamma; ++sym) {
            for (std::size_t r = 0; r <= L.rcount; ++r) {
                for (std::size_t c = 0; c < 3; ++c) {
                    const std::size_t s = S.index(sym, r, c);
                    static const char* choice_names[] = {"~", "alpha", "beta"};
                    t.tstates[s] = "t." + atm.alphabet[sym] + "." + (r == L.rcount ? "~" : atm.mstates[r]) + "." +
                                   choice_names[c];
                    for (std::size_t v = 0; v < L.size(); ++v) {
                        std::size_t next = s;
                        if (v >= L.v2_base() && v < L.v3_base()) {
                            const auto w = L.decode(v);
                            const std::size_t new_sym = w.cell == i ? w.symbol : sym;
                            const auto to = L.landing(w);
                            const std::size_t new_r = to && *to == i ? w.state : L.rcount;
                            next = S.index(new_sym, new_r, 0);
                        } else if (v == L.choice(i, 0)) {
                            next = S.index(sym, r, 1);
                        } else if (v == L.choice(i, 1)) {
                            next = S.index(sym, r, 2);
                        }
                        t.step[s * L.size() + v] = next;
                    }
                    // Outputs are needed only where agent i plays.
                    for (std::size_t v : {L.head(i), L.choice(i, 0), L.choice(i, 1)}) {
                        ActionDist dist;
                        auto put = [&](std::size_t a, unsigned long num) {
                            for (auto& p : dist) {
                                if (p.action == a) {
                                    p.numerator += num;
                                    return;
                                }
                            }
                            dist.push_back({a, BigInt(num)});
                        };
                        if (r == L.rcount) {
                            put(L.reject_action(), kOne);
                        } else {
                            const auto& moves = atm.moves(r, sym);
                            switch (atm.labels[r]) {
                            case AtmLabel::Accept:
                                put(L.accept_action(), kOne);
                                break;
                            case AtmLabel::Reject:
                                put(L.reject_action(), kOne);
                                break;
                            case AtmLabel::Det:
                                if (moves.empty()) put(L.reject_action(), kOne);
                                else put(move_action(i, moves[0]), kOne);
                                break;
                            case AtmLabel::Forall:
                                if (moves.empty()) {
                                    put(L.reject_action(), kOne);
                                } else {
                                    put(move_action(i, moves[0]), kOne / 2);
                                    put(move_action(i, moves[1]), kOne / 2);
                                }
                                break;
                            case AtmLabel::Exists: {
                                // The choice is announced by the state being played at,
                                // before the transducer has read it.
                                std::size_t pick = v == L.choice(i, 1) ? 1 : v == L.choice(i, 0) ? 0 : c == 2 ? 1 : 0;
                                if (moves.empty() || (v == L.head(i) && c == 0)) put(L.reject_action(), kOne);
                                else put(move_action(i, moves[pick]), kOne);
                                break;
                            }
                            }
                        }
                        std::sort(dist.begin(), dist.end(),
                                  [](const ActionProb& a, const ActionProb& b) { return a.action < b.action; });
                        t.output[s * L.size() + v] = std::move(dist);
                    }
                }
            }
        }
        t.init = S.index(atm.blank, i == 0 ? atm.init : L.rcount, 0);
        out.profile.push_back(std::move(t));
    }

    StrategyTransducer last;
    last.agent = chooser;
    last.lbits = kLbits;
    last.num_game_states = L.size();
    last.tstates = {"t0"};
    last.step.assign(L.size(), 0);
    last.output.assign(L.size(), std::nullopt);
    for (std::size_t v = 0; v < L.size(); ++v) {
        if (g.is_active(chooser, v)) last.output[v] = ActionDist{{0, BigInt(kOne)}};
    }
    out.profile.push_back(std::move(last));
    return out;
}

bool atm_accepts(const ATM& atm, std::size_t cells, std::size_t cap) {
    if (cells == 0) throw std::invalid_argument("cell bound must be at least 1");
    if (auto problems = validate_atm(atm); !problems.empty()) {
        throw std::invalid_argument(problems.front().location + ": " + problems.front().message);
    }
    struct Id {
        std::vector<std::size_t> tape;
        std::size_t head;
        std::size_t state;
        auto operator<=>(const Id&) const = default;
    };
    std::map<Id, std::size_t> index;
    std::vector<Id> ids;
    // succ[k] lists successor ids; kNone marks a rejecting move (off the tape).
    std::vector<std::vector<std::size_t>> succ;
    auto intern = [&](Id id) {
        auto [it, fresh] = index.emplace(id, ids.size());
        if (fresh) {
            if (ids.size() >= cap) throw IdSpaceExceeded("configuration count exceeds cap " + std::to_string(cap));
            ids.push_back(std::move(id));
            succ.emplace_back();
        }
        return it->second;
    };
    intern(Id{std::vector<std::size_t>(cells, atm.blank), 0, atm.init});
    for (std::size_t k = 0; k < ids.size(); ++k) {
        const AtmLabel label = atm.labels[ids[k].state];
        if (label == AtmLabel::Accept || label == AtmLabel::Reject) continue;
        const auto moves = atm.moves(ids[k].state, ids[k].tape[ids[k].head]);
        for (const AtmMove& m : moves) {
            const Id& cur = ids[k];
            const bool off = m.dir == Direction::Left ? cur.head == 0 : cur.head + 1 >= cells;
            if (off) {
                succ[k].push_back(kNone);
                continue;
            }
            Id next = cur;
            next.tape[cur.head] = m.symbol;
            next.head = m.dir == Direction::Left ? cur.head - 1 : cur.head + 1;
            next.state = m.state;
            std::size_t to = intern(std::move(next));
            succ[k].push_back(to);
        }
    }
    // Least fixed point: an id accepts once its connective is satisfied by
    // already-accepting successors.
    std::vector<bool> acc(ids.size(), false);
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t k = 0; k < ids.size(); ++k) {
            if (acc[k]) continue;
            auto ok = [&](std::size_t s) { return s != kNone && acc[s]; };
            bool now = false;
            switch (atm.labels[ids[k].state]) {
            case AtmLabel::Accept: now = true; break;
            case AtmLabel::Reject: now = false; break;
            case AtmLabel::Det: now = !succ[k].empty() && ok(succ[k][0]); break;
            case AtmLabel::Exists: now = std::any_of(succ[k].begin(), succ[k].end(), ok); break;
            case AtmLabel::Forall:
                now = !succ[k].empty() && std::all_of(succ[k].begin(), succ[k].end(), ok);
                break;
            }
            if (now) {
                acc[k] = true;
                changed = true;
            }
        }
    }
    return acc[0];
}

} // namespace eqcheck

#include "eqcheck/verify.hpp"

#include <algorithm>
#include <sstream>

namespace eqcheck {

namespace {

std::vector<std::size_t> agents_to_check(const GameSystem& g, const VerifyOptions& options) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < g.num_agents(); ++i) {
        if (options.agent && *options.agent != i) continue;
        out.push_back(i);
    }
    return out;
}

std::optional<Witness> nash_deviation(ChainModel& model, std::size_t agent, std::size_t cap) {
    const GameSystem& g = model.game();
    if (g.in_goal(agent, g.init)) return std::nullopt;
    // The deviation fragment contains every profile-reachable state, so both
    // values can be read off one exploration.
    ReachSet reach = explore_deviation(model, agent, cap);
    ValueTable values = hitting_probabilities(model, agent, reach);
    PolicyTable best = best_response_values(model, agent, reach);
    const Rat& p = values.at(0);
    const Rat& q = best.at(0).value;
    if (q > p) return Witness{agent, p, q, std::nullopt};
    return std::nullopt;
}

std::optional<Witness> spe_improvement(ChainModel& model, const ReachSet& all, std::size_t agent, std::size_t cap) {
    const GameSystem& g = model.game();
    ReachSet relevant = relevant_reachable(model, agent, cap);
    if (relevant.empty()) return std::nullopt;
    ValueTable values = hitting_probabilities(model, agent, all);

    std::vector<std::size_t> slice;
    for (std::uint64_t n = relevant.max_time(); n >= 1; --n) {
        auto span = relevant.slice(n);
        slice.assign(span.begin(), span.end());
        std::sort(slice.begin(), slice.end(), [&](std::size_t a, std::size_t b) {
            const ChainNode& x = relevant.node(a);
            const ChainNode& y = relevant.node(b);
            if (x.v != y.v) return x.v < y.v;
            return model.product_state(x.sid) < model.product_state(y.sid);
        });
        for (std::size_t r : slice) {
            const ChainNode& node = relevant.node(r);
            if (model.is_terminal(node.n) || !g.is_active(agent, node.v)) continue;
            const std::size_t u = *all.find(node.v, node.sid, node.n);
            const Rat& old_value = values.at(u);
            const std::size_t next_sid = model.advance(node.sid, node.v);
            std::optional<std::size_t> best_action;
            Rat best_value;
            for (const ActionRow& row : model.action_rows(node.sid, node.v, agent)) {
                Rat q = backup(row.row, all, values.values(), next_sid, node.n);
                if (!best_action || q > best_value) {
                    best_value = std::move(q);
                    best_action = row.action;
                }
            }
            if (best_action && best_value > old_value) {
                SpeWitness spe{relevant.state(model, r), relevant.history(r), *best_action, old_value, best_value};
                return Witness{agent, old_value, best_value, std::move(spe)};
            }
        }
    }
    return std::nullopt;
}

std::string chain_state_label(const GameSystem& g, const Profile& profile, const ChainState& s) {
    std::ostringstream os;
    os << "<" << g.states[s.v] << ",(";
    for (std::size_t k = 0; k < s.s.size(); ++k) os << (k ? "," : "") << profile[k].tstates[s.s[k]];
    os << ")," << s.n << ">";
    return os.str();
}

} // namespace

Verdict verify_nash(const GameSystem& g, const Profile& profile, const VerifyOptions& options) {
    Verdict verdict;
    verdict.cap = options.cap;
    try {
        ChainModel model(g, profile);
        for (std::size_t agent : agents_to_check(g, options)) {
            if (auto w = nash_deviation(model, agent, options.cap)) {
                verdict.witnesses.push_back(std::move(*w));
                if (!options.all_witnesses) break;
            }
        }
    } catch (const CapExceeded&) {
        verdict.kind = VerdictKind::Refused;
        verdict.witnesses.clear();
        return verdict;
    }
    verdict.kind = verdict.witnesses.empty() ? VerdictKind::NeYes : VerdictKind::NeNo;
    return verdict;
}

Verdict verify_spe(const GameSystem& g, const Profile& profile, const VerifyOptions& options) {
    Verdict verdict;
    verdict.cap = options.cap;
    try {
        ChainModel model(g, profile);
        ReachSet all = explore(model, ExploreMode::AnyAction, std::nullopt, false, options.cap);
        for (std::size_t agent : agents_to_check(g, options)) {
            if (auto w = spe_improvement(model, all, agent, options.cap)) {
                verdict.witnesses.push_back(std::move(*w));
                if (!options.all_witnesses) break;
            }
        }
    } catch (const CapExceeded&) {
        verdict.kind = VerdictKind::Refused;
        verdict.witnesses.clear();
        return verdict;
    }
    verdict.kind = verdict.witnesses.empty() ? VerdictKind::SpeYes : VerdictKind::SpeNo;
    return verdict;
}

std::string export_witness(const Verdict& verdict, const GameSystem& g, const Profile& profile,
                           ReportFormat format) {
    // Each report line is a list of key=value fields after the VERDICT tag.
    std::vector<std::vector<std::pair<std::string, std::string>>> lines;
    switch (verdict.kind) {
    case VerdictKind::NeYes:
        lines.push_back({{"verdict", "NE"}});
        break;
    case VerdictKind::SpeYes:
        lines.push_back({{"verdict", "SPE"}});
        break;
    case VerdictKind::Refused:
        lines.push_back({{"verdict", "REFUSED"}, {"cap", std::to_string(verdict.cap)}});
        break;
    case VerdictKind::NeNo:
        for (const Witness& w : verdict.witnesses) {
            lines.push_back({{"verdict", "NOT_NE"},
                             {"agent", std::to_string(w.agent + 1)},
                             {"payoff", to_string(w.payoff)},
                             {"best", to_string(w.deviation)}});
        }
        break;
    case VerdictKind::SpeNo:
        for (const Witness& w : verdict.witnesses) {
            const SpeWitness& spe = *w.spe;
            std::string history;
            for (std::size_t v : spe.history) history += (history.empty() ? "" : " ") + g.states[v];
            lines.push_back({{"verdict", "NOT_SPE"},
                             {"agent", std::to_string(w.agent + 1)},
                             {"state", chain_state_label(g, profile, spe.state)},
                             {"action", g.actions[w.agent][spe.action]},
                             {"old", to_string(spe.old_value)},
                             {"new", to_string(spe.new_value)},
                             {"history", history}});
        }
        break;
    }

    std::ostringstream os;
    for (const auto& fields : lines) {
        if (format == ReportFormat::Structured) {
            for (const auto& [key, value] : fields) os << key << "=" << value << "\n";
            os << "\n";
            continue;
        }
        os << "VERDICT " << fields.front().second;
        for (std::size_t j = 1; j < fields.size(); ++j) os << " " << fields[j].first << "=" << fields[j].second;
        os << "\n";
    }
    return os.str();
}

} // namespace eqcheck

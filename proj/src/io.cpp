#include "eqcheck/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace eqcheck {

namespace {

struct Token {
    std::string text;
    std::size_t column = 0;
};

struct Line {
    std::size_t number = 0;
    std::vector<Token> tokens;
};

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

/// Splits into non-empty lines of whitespace-separated tokens; '#' starts a comment.
std::vector<Line> tokenize(std::string_view text) {
    std::vector<Line> lines;
    std::size_t number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view raw = text.substr(pos, end - pos);
        ++number;
        if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
        Line line{number, {}};
        std::size_t i = 0;
        while (i < raw.size()) {
            while (i < raw.size() && is_space(raw[i])) ++i;
            std::size_t start = i;
            while (i < raw.size() && !is_space(raw[i])) ++i;
            if (i > start) line.tokens.push_back({std::string(raw.substr(start, i - start)), start + 1});
        }
        if (!line.tokens.empty()) lines.push_back(std::move(line));
        if (end == text.size()) break;
        pos = end + 1;
    }
    return lines;
}

[[noreturn]] void fail(const Line& line, const Token& tok, const std::string& msg) {
    throw ParseError(line.number, tok.column, msg);
}

[[noreturn]] void fail_at_end(const Line& line, const std::string& msg) {
    const Token& last = line.tokens.back();
    throw ParseError(line.number, last.column + last.text.size(), msg);
}

const Token& expect_token(const Line& line, std::size_t i, const std::string& expected) {
    if (i >= line.tokens.size()) fail_at_end(line, "expected " + expected);
    return line.tokens[i];
}

std::size_t parse_index(const Line& line, const Token& tok, const std::string& what) {
    const std::string& s = tok.text;
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }) || s.size() > 9) {
        fail(line, tok, "expected " + what);
    }
    return static_cast<std::size_t>(std::stoul(s));
}

/// Parses "key=value" where key must match.
std::string key_value(const Line& line, const Token& tok, const std::string& key) {
    const std::string prefix = key + "=";
    if (tok.text.rfind(prefix, 0) != 0) fail(line, tok, "expected " + prefix + "<value>");
    return tok.text.substr(prefix.size());
}

BigInt parse_numerator(const Line& line, const Token& tok, std::string_view digits, const BigInt& one) {
    BigInt n;
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; }) ||
        n.set_str(std::string(digits), 10) != 0) {
        fail(line, tok, "expected probability numerator");
    }
    if (n > one) fail(line, tok, "probability out of range");
    return n;
}

bool valid_identifier(std::string_view id) {
    if (id.empty() || id == "->" || id == "-" || id == "|" || id == "bot") return false;
    return id.find_first_of(":[],") == std::string_view::npos;
}

void check_identifier(const Line& line, const Token& tok) {
    if (!valid_identifier(tok.text)) fail(line, tok, "invalid identifier '" + tok.text + "'");
}

/// Lines grouped by leading keyword, in file order.
std::map<std::string, std::vector<const Line*>> group(const std::vector<Line>& lines,
                                                      std::initializer_list<std::string> keywords) {
    std::map<std::string, std::vector<const Line*>> out;
    for (const auto& k : keywords) out[k];
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const Line& line = lines[i];
        auto it = out.find(line.tokens[0].text);
        if (it == out.end()) fail(line, line.tokens[0], "unknown keyword '" + line.tokens[0].text + "'");
        it->second.push_back(&line);
    }
    return out;
}

const Line& single(const std::map<std::string, std::vector<const Line*>>& groups, const std::string& key,
                   const Line& header) {
    const auto& v = groups.at(key);
    if (v.empty()) throw ParseError(header.number, 1, "missing '" + key + "' line");
    if (v.size() > 1) fail(*v[1], v[1]->tokens[0], "duplicate '" + key + "' line");
    return *v.front();
}

unsigned parse_lbits(const Line& line, const Token& tok) {
    std::string value = key_value(line, tok, "lbits");
    Token t{value, tok.column + 6};
    std::size_t l = parse_index(line, t, "lbits value");
    if (l == 0 || l > 4096) fail(line, tok, "lbits must be between 1 and 4096");
    return static_cast<unsigned>(l);
}

std::size_t lookup_state(const GameSystem& g, const Line& line, const Token& tok) {
    auto v = g.state_index(tok.text);
    if (!v) fail(line, tok, "unknown state '" + tok.text + "'");
    return *v;
}

const char* direction_name(Direction d) { return d == Direction::Left ? "L" : "R"; }

const char* label_name(AtmLabel l) {
    switch (l) {
    case AtmLabel::Accept: return "acc";
    case AtmLabel::Reject: return "rej";
    case AtmLabel::Exists: return "or";
    case AtmLabel::Forall: return "and";
    case AtmLabel::Det: return "det";
    }
    return "det";
}

} // namespace

BigInt parse_horizon(std::string_view text) {
    BigInt out;
    int rc = -1;
    if (text.rfind("0b", 0) == 0) {
        std::string_view digits = text.substr(2);
        if (!digits.empty() && std::all_of(digits.begin(), digits.end(), [](char c) { return c == '0' || c == '1'; })) {
            rc = out.set_str(std::string(digits), 2);
        }
    } else if (!text.empty() && std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        rc = out.set_str(std::string(text), 10);
    }
    if (rc != 0) throw std::invalid_argument("invalid horizon '" + std::string(text) + "'");
    return out;
}

GameSystem parse_game(std::string_view text) {
    const auto lines = tokenize(text);
    if (lines.empty()) throw ParseError(1, 1, "expected 'game' header");
    const Line& header = lines.front();
    if (header.tokens[0].text != "game") fail(header, header.tokens[0], "expected 'game' header");

    GameSystem g;
    g.lbits = parse_lbits(header, expect_token(header, 1, "lbits=<L>"));
    {
        const Token& tok = expect_token(header, 2, "horizon=<F>");
        try {
            g.horizon = parse_horizon(key_value(header, tok, "horizon"));
        } catch (const std::invalid_argument&) {
            fail(header, tok, "expected horizon in decimal or 0b binary");
        }
        if (g.horizon < 1) fail(header, tok, "horizon must be at least 1");
    }
    {
        const Token& tok = expect_token(header, 3, "bound=<b>");
        Token value{key_value(header, tok, "bound"), tok.column + 6};
        g.bound = parse_index(header, value, "bound value");
    }
    if (header.tokens.size() > 4) fail(header, header.tokens[4], "unexpected token");

    const auto groups = group(lines, {"states", "init", "agent", "play", "trans"});
    const BigInt one = pow2(g.lbits);

    const Line& states = single(groups, "states", header);
    for (std::size_t i = 1; i < states.tokens.size(); ++i) {
        check_identifier(states, states.tokens[i]);
        if (g.state_index(states.tokens[i].text)) fail(states, states.tokens[i], "duplicate state");
        g.states.push_back(states.tokens[i].text);
    }
    if (g.states.empty()) fail_at_end(states, "expected at least one state");
    const std::size_t nv = g.states.size();

    const Line& init = single(groups, "init", header);
    g.init = lookup_state(g, init, expect_token(init, 1, "initial state"));
    if (init.tokens.size() > 2) fail(init, init.tokens[2], "unexpected token");

    // agent <i> actions <a>... goal <v>...
    std::map<std::size_t, const Line*> agent_lines;
    for (const Line* line : groups.at("agent")) {
        const Token& idx = expect_token(*line, 1, "agent index");
        std::size_t i = parse_index(*line, idx, "agent index");
        if (i == 0) fail(*line, idx, "agents are numbered from 1");
        if (!agent_lines.emplace(i, line).second) fail(*line, idx, "duplicate agent");
    }
    if (agent_lines.empty()) throw ParseError(header.number, 1, "missing 'agent' line");
    const std::size_t k = agent_lines.rbegin()->first;
    if (agent_lines.size() != k) throw ParseError(header.number, 1, "agents must be numbered 1..k without gaps");
    g.actions.resize(k);
    g.goals.assign(k, std::vector<bool>(nv, false));
    for (const auto& [i, line] : agent_lines) {
        const Token& kw = expect_token(*line, 2, "'actions'");
        if (kw.text != "actions") fail(*line, kw, "expected 'actions'");
        std::size_t j = 3;
        for (; j < line->tokens.size() && line->tokens[j].text != "goal"; ++j) {
            const Token& tok = line->tokens[j];
            check_identifier(*line, tok);
            if (g.action_index(i - 1, tok.text)) fail(*line, tok, "duplicate action");
            g.actions[i - 1].push_back(tok.text);
        }
        if (g.actions[i - 1].empty()) fail_at_end(*line, "expected at least one action");
        if (j >= line->tokens.size()) fail_at_end(*line, "expected 'goal'");
        for (++j; j < line->tokens.size(); ++j) g.goals[i - 1][lookup_state(g, *line, line->tokens[j])] = true;
    }

    // play <state>: <agents> | -
    g.playing.assign(nv, {});
    std::vector<bool> declared(nv, false);
    for (const Line* line : groups.at("play")) {
        std::vector<Token> rest(line->tokens.begin() + 1, line->tokens.end());
        if (rest.empty()) fail_at_end(*line, "expected '<state>:'");
        Token state = rest.front();
        std::size_t next = 1;
        if (!state.text.empty() && state.text.back() == ':') {
            state.text.pop_back();
        } else if (rest.size() > 1 && rest[1].text == ":") {
            next = 2;
        } else if (auto colon = state.text.find(':'); colon != std::string::npos) {
            rest.insert(rest.begin() + 1, Token{state.text.substr(colon + 1), state.column + colon + 1});
            state.text.resize(colon);
        } else {
            fail(*line, state, "expected '<state>:'");
        }
        const std::size_t v = lookup_state(g, *line, state);
        if (declared[v]) fail(*line, state, "duplicate play declaration");
        declared[v] = true;
        std::vector<std::size_t> agents;
        bool uncontrolled = false;
        for (std::size_t j = next; j < rest.size(); ++j) {
            std::stringstream parts(rest[j].text);
            std::string part;
            while (std::getline(parts, part, ',')) {
                if (part.empty()) continue;
                if (part == "-") {
                    uncontrolled = true;
                    continue;
                }
                Token t{part, rest[j].column};
                std::size_t a = parse_index(*line, t, "agent index or '-'");
                if (a == 0 || a > k) fail(*line, rest[j], "unknown agent " + part);
                agents.push_back(a - 1);
            }
        }
        if (uncontrolled && !agents.empty()) fail(*line, state, "'-' cannot be combined with agents");
        if (!uncontrolled && agents.empty()) fail_at_end(*line, "expected agent list or '-'");
        std::sort(agents.begin(), agents.end());
        if (std::adjacent_find(agents.begin(), agents.end()) != agents.end()) fail(*line, state, "duplicate agent");
        g.playing[v] = std::move(agents);
    }
    for (std::size_t v = 0; v < nv; ++v) {
        if (!declared[v]) throw ParseError(states.number, 1, "no play declaration for state '" + g.states[v] + "'");
    }

    // trans <state> [<actions>] -> <target>:<num> ...
    g.trans.resize(nv);
    for (std::size_t v = 0; v < nv; ++v) g.trans[v].assign(g.joint_action_count(v), {});
    std::vector<std::vector<bool>> seen(nv);
    for (std::size_t v = 0; v < nv; ++v) seen[v].assign(g.trans[v].size(), false);
    for (const Line* line : groups.at("trans")) {
        const Token& st = expect_token(*line, 1, "state");
        const std::size_t v = lookup_state(g, *line, st);
        // Collect the bracketed tuple, which may span several tokens.
        std::string tuple;
        std::size_t j = 2;
        const Token& open = expect_token(*line, j, "'['");
        if (open.text.front() != '[') fail(*line, open, "expected '['");
        for (; j < line->tokens.size(); ++j) {
            tuple += " " + line->tokens[j].text;
            if (line->tokens[j].text.back() == ']') break;
        }
        if (j >= line->tokens.size()) fail_at_end(*line, "expected ']'");
        tuple = tuple.substr(tuple.find('[') + 1);
        tuple.pop_back();
        std::replace(tuple.begin(), tuple.end(), ',', ' ');
        std::vector<std::string> names;
        {
            std::istringstream is(tuple);
            for (std::string name; is >> name;) names.push_back(name);
        }
        const auto& active = g.playing[v];
        if (names.size() != active.size()) {
            fail(*line, open, "expected " + std::to_string(active.size()) + " actions for state '" + g.states[v] + "'");
        }
        std::vector<std::size_t> theta(names.size());
        for (std::size_t a = 0; a < names.size(); ++a) {
            auto idx = g.action_index(active[a], names[a]);
            if (!idx) fail(*line, open, "unknown action '" + names[a] + "' for agent " + std::to_string(active[a] + 1));
            theta[a] = *idx;
        }
        const std::size_t t = g.encode_joint(v, theta);
        if (seen[v][t]) fail(*line, st, "duplicate transition row");
        seen[v][t] = true;
        const Token& arrow = expect_token(*line, j + 1, "'->'");
        if (arrow.text != "->") fail(*line, arrow, "expected '->'");
        StateRow row;
        for (std::size_t m = j + 2; m < line->tokens.size(); ++m) {
            const Token& tok = line->tokens[m];
            auto colon = tok.text.rfind(':');
            if (colon == std::string::npos) fail(*line, tok, "expected '<state>:<numerator>'");
            Token target{tok.text.substr(0, colon), tok.column};
            const std::size_t to = lookup_state(g, *line, target);
            BigInt num = parse_numerator(*line, tok, std::string_view(tok.text).substr(colon + 1), one);
            if (std::any_of(row.begin(), row.end(), [&](const Outcome& o) { return o.target == to; })) {
                fail(*line, tok, "duplicate target");
            }
            if (num > 0) row.push_back({to, std::move(num)});
        }
        if (row.empty() && line->tokens.size() == j + 2) fail_at_end(*line, "expected '<state>:<numerator>'");
        std::sort(row.begin(), row.end(), [](const Outcome& a, const Outcome& b) { return a.target < b.target; });
        g.trans[v][t] = std::move(row);
    }
    return g;
}

std::string serialize_game(const GameSystem& g) {
    std::ostringstream os;
    os << "game lbits=" << g.lbits << " horizon=" << g.horizon.get_str() << " bound=" << g.bound << "\n";
    os << "states";
    for (const auto& s : g.states) os << " " << s;
    os << "\ninit " << g.states[g.init] << "\n";
    for (std::size_t i = 0; i < g.num_agents(); ++i) {
        os << "agent " << i + 1 << " actions";
        for (const auto& a : g.actions[i]) os << " " << a;
        os << " goal";
        for (std::size_t v = 0; v < g.num_states(); ++v) {
            if (g.goals[i][v]) os << " " << g.states[v];
        }
        os << "\n";
    }
    for (std::size_t v = 0; v < g.num_states(); ++v) {
        os << "play " << g.states[v] << ":";
        if (g.playing[v].empty()) os << " -";
        for (std::size_t a : g.playing[v]) os << " " << a + 1;
        os << "\n";
    }
    for (std::size_t v = 0; v < g.num_states(); ++v) {
        for (std::size_t t = 0; t < g.trans[v].size(); ++t) {
            if (g.trans[v][t].empty()) continue;
            os << "trans " << g.states[v] << " [";
            const auto theta = g.decode_joint(v, t);
            for (std::size_t j = 0; j < theta.size(); ++j) {
                os << (j ? " " : "") << g.actions[g.playing[v][j]][theta[j]];
            }
            os << "] ->";
            for (const Outcome& o : g.trans[v][t]) os << " " << g.states[o.target] << ":" << o.numerator.get_str();
            os << "\n";
        }
    }
    return os.str();
}

StrategyTransducer parse_transducer(std::string_view text, const GameSystem& game) {
    const auto lines = tokenize(text);
    if (lines.empty()) throw ParseError(1, 1, "expected 'transducer' header");
    const Line& header = lines.front();
    if (header.tokens[0].text != "transducer") fail(header, header.tokens[0], "expected 'transducer' header");

    StrategyTransducer t;
    {
        const Token& tok = expect_token(header, 1, "agent=<i>");
        Token value{key_value(header, tok, "agent"), tok.column + 6};
        std::size_t i = parse_index(header, value, "agent index");
        if (i == 0 || i > game.num_agents()) fail(header, tok, "unknown agent");
        t.agent = i - 1;
    }
    const Token& lbits_tok = expect_token(header, 2, "lbits=<L>");
    t.lbits = parse_lbits(header, lbits_tok);
    if (t.lbits != game.lbits) fail(header, lbits_tok, "lbits mismatch");
    if (header.tokens.size() > 3) fail(header, header.tokens[3], "unexpected token");

    const auto groups = group(lines, {"tstates", "init", "step", "out"});
    const Line& ts = single(groups, "tstates", header);
    auto tstate_index = [&](const Line& line, const Token& tok) {
        auto it = std::find(t.tstates.begin(), t.tstates.end(), tok.text);
        if (it == t.tstates.end()) fail(line, tok, "unknown transducer state '" + tok.text + "'");
        return static_cast<std::size_t>(it - t.tstates.begin());
    };
    for (std::size_t i = 1; i < ts.tokens.size(); ++i) {
        check_identifier(ts, ts.tokens[i]);
        if (std::find(t.tstates.begin(), t.tstates.end(), ts.tokens[i].text) != t.tstates.end()) {
            fail(ts, ts.tokens[i], "duplicate transducer state");
        }
        t.tstates.push_back(ts.tokens[i].text);
    }
    if (t.tstates.empty()) fail_at_end(ts, "expected at least one transducer state");
    const Line& init = single(groups, "init", header);
    t.init = tstate_index(init, expect_token(init, 1, "initial transducer state"));

    const std::size_t nv = game.num_states();
    t.num_game_states = nv;
    const std::size_t cells = t.tstates.size() * nv;
    constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
    t.step.assign(cells, kUnset);
    t.output.assign(cells, std::nullopt);
    std::vector<bool> out_seen(cells, false);

    for (const Line* line : groups.at("step")) {
        const std::size_t s = tstate_index(*line, expect_token(*line, 1, "transducer state"));
        const std::size_t v = lookup_state(game, *line, expect_token(*line, 2, "game state"));
        const Token& arrow = expect_token(*line, 3, "'->'");
        if (arrow.text != "->") fail(*line, arrow, "expected '->'");
        const std::size_t to = tstate_index(*line, expect_token(*line, 4, "transducer state"));
        if (line->tokens.size() > 5) fail(*line, line->tokens[5], "unexpected token");
        if (t.step[s * nv + v] != kUnset) fail(*line, line->tokens[1], "duplicate step");
        t.step[s * nv + v] = to;
    }
    const BigInt one = pow2(game.lbits);
    for (const Line* line : groups.at("out")) {
        const Token& s_tok = expect_token(*line, 1, "transducer state");
        const std::size_t s = tstate_index(*line, s_tok);
        const std::size_t v = lookup_state(game, *line, expect_token(*line, 2, "game state"));
        const Token& arrow = expect_token(*line, 3, "'->'");
        if (arrow.text != "->") fail(*line, arrow, "expected '->'");
        if (out_seen[s * nv + v]) fail(*line, s_tok, "duplicate output");
        out_seen[s * nv + v] = true;
        const Token& first = expect_token(*line, 4, "'<action>:<numerator>' or 'bot'");
        if (first.text == "bot") {
            if (line->tokens.size() > 5) fail(*line, line->tokens[5], "unexpected token");
            continue;
        }
        ActionDist dist;
        for (std::size_t m = 4; m < line->tokens.size(); ++m) {
            const Token& tok = line->tokens[m];
            auto colon = tok.text.rfind(':');
            if (colon == std::string::npos) fail(*line, tok, "expected '<action>:<numerator>'");
            auto a = game.action_index(t.agent, tok.text.substr(0, colon));
            if (!a) fail(*line, tok, "unknown action '" + tok.text.substr(0, colon) + "'");
            BigInt num = parse_numerator(*line, tok, std::string_view(tok.text).substr(colon + 1), one);
            if (std::any_of(dist.begin(), dist.end(), [&](const ActionProb& p) { return p.action == *a; })) {
                fail(*line, tok, "duplicate action");
            }
            if (num > 0) dist.push_back({*a, std::move(num)});
        }
        std::sort(dist.begin(), dist.end(), [](const ActionProb& a, const ActionProb& b) { return a.action < b.action; });
        t.output[s * nv + v] = std::move(dist);
    }
    for (std::size_t s = 0; s < t.tstates.size(); ++s) {
        for (std::size_t v = 0; v < nv; ++v) {
            if (t.step[s * nv + v] == kUnset) {
                throw ParseError(header.number, 1,
                                 "missing step for (" + t.tstates[s] + ", " + game.states[v] + ")");
            }
        }
    }
    return t;
}

std::string serialize_transducer(const StrategyTransducer& t, const GameSystem& game) {
    std::ostringstream os;
    const std::size_t nv = game.num_states();
    os << "transducer agent=" << t.agent + 1 << " lbits=" << t.lbits << "\n";
    os << "tstates";
    for (const auto& s : t.tstates) os << " " << s;
    os << "\ninit " << t.tstates[t.init] << "\n";
    for (std::size_t s = 0; s < t.tstates.size(); ++s) {
        for (std::size_t v = 0; v < nv; ++v) {
            os << "step " << t.tstates[s] << " " << game.states[v] << " -> " << t.tstates[t.next(s, v)] << "\n";
        }
    }
    for (std::size_t s = 0; s < t.tstates.size(); ++s) {
        for (std::size_t v = 0; v < nv; ++v) {
            const auto& o = t.output[s * nv + v];
            if (!o) continue;
            os << "out " << t.tstates[s] << " " << game.states[v] << " ->";
            for (const ActionProb& p : *o) os << " " << game.actions[t.agent][p.action] << ":" << p.numerator.get_str();
            os << "\n";
        }
    }
    return os.str();
}

ATM parse_atm(std::string_view text) {
    const auto lines = tokenize(text);
    if (lines.empty()) throw ParseError(1, 1, "expected 'atm' header");
    const Line& header = lines.front();
    if (header.tokens[0].text != "atm") fail(header, header.tokens[0], "expected 'atm' header");
    if (header.tokens.size() > 1) fail(header, header.tokens[1], "unexpected token");

    const auto groups = group(lines, {"mstates", "init", "alphabet", "rule"});
    ATM atm;
    auto atm_identifier = [](const Line& line, const Token& tok, const std::string& id) {
        if (id.empty() || !std::all_of(id.begin(), id.end(), [](char c) {
                return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
            })) {
            fail(line, tok, "machine identifiers use letters, digits and '_' only");
        }
    };
    const Line& ms = single(groups, "mstates", header);
    for (std::size_t i = 1; i < ms.tokens.size(); ++i) {
        const Token& tok = ms.tokens[i];
        auto colon = tok.text.find(':');
        if (colon == std::string::npos) fail(ms, tok, "expected '<id>:<label>'");
        std::string id = tok.text.substr(0, colon);
        std::string label = tok.text.substr(colon + 1);
        atm_identifier(ms, tok, id);
        if (std::find(atm.mstates.begin(), atm.mstates.end(), id) != atm.mstates.end()) fail(ms, tok, "duplicate state");
        AtmLabel l;
        if (label == "acc") l = AtmLabel::Accept;
        else if (label == "rej") l = AtmLabel::Reject;
        else if (label == "or") l = AtmLabel::Exists;
        else if (label == "and") l = AtmLabel::Forall;
        else if (label == "det") l = AtmLabel::Det;
        else fail(ms, tok, "expected label acc, rej, or, and or det");
        atm.mstates.push_back(id);
        atm.labels.push_back(l);
    }
    if (atm.mstates.empty()) fail_at_end(ms, "expected at least one machine state");
    auto state_of = [&](const Line& line, const Token& tok) {
        auto it = std::find(atm.mstates.begin(), atm.mstates.end(), tok.text);
        if (it == atm.mstates.end()) fail(line, tok, "unknown machine state '" + tok.text + "'");
        return static_cast<std::size_t>(it - atm.mstates.begin());
    };
    const Line& init = single(groups, "init", header);
    atm.init = state_of(init, expect_token(init, 1, "initial machine state"));

    const Line& al = single(groups, "alphabet", header);
    std::optional<std::string> blank;
    for (std::size_t i = 1; i < al.tokens.size(); ++i) {
        const Token& tok = al.tokens[i];
        if (tok.text.rfind("blank=", 0) == 0) {
            blank = tok.text.substr(6);
            atm_identifier(al, tok, *blank);
            continue;
        }
        atm_identifier(al, tok, tok.text);
        if (std::find(atm.alphabet.begin(), atm.alphabet.end(), tok.text) != atm.alphabet.end()) {
            fail(al, tok, "duplicate symbol");
        }
        atm.alphabet.push_back(tok.text);
    }
    if (!blank) fail_at_end(al, "expected 'blank=<sym>'");
    auto bit = std::find(atm.alphabet.begin(), atm.alphabet.end(), *blank);
    if (bit == atm.alphabet.end()) {
        atm.alphabet.push_back(*blank);
        bit = atm.alphabet.end() - 1;
    }
    atm.blank = static_cast<std::size_t>(bit - atm.alphabet.begin());
    auto symbol_of = [&](const Line& line, const Token& tok) {
        auto it = std::find(atm.alphabet.begin(), atm.alphabet.end(), tok.text);
        if (it == atm.alphabet.end()) fail(line, tok, "unknown symbol '" + tok.text + "'");
        return static_cast<std::size_t>(it - atm.alphabet.begin());
    };

    atm.rules.assign(atm.mstates.size() * atm.alphabet.size(), {});
    for (const Line* line : groups.at("rule")) {
        const std::size_t r = state_of(*line, expect_token(*line, 1, "machine state"));
        const std::size_t g = symbol_of(*line, expect_token(*line, 2, "symbol"));
        const Token& arrow = expect_token(*line, 3, "'->'");
        if (arrow.text != "->") fail(*line, arrow, "expected '->'");
        auto& moves = atm.rules[r * atm.alphabet.size() + g];
        if (!moves.empty()) fail(*line, line->tokens[1], "duplicate rule");
        std::size_t j = 4;
        while (true) {
            AtmMove m;
            m.state = state_of(*line, expect_token(*line, j, "target state"));
            m.symbol = symbol_of(*line, expect_token(*line, j + 1, "written symbol"));
            const Token& d = expect_token(*line, j + 2, "L or R");
            if (d.text == "L") m.dir = Direction::Left;
            else if (d.text == "R") m.dir = Direction::Right;
            else fail(*line, d, "expected L or R");
            moves.push_back(m);
            j += 3;
            if (j >= line->tokens.size()) break;
            if (line->tokens[j].text != "|") fail(*line, line->tokens[j], "expected '|'");
            ++j;
        }
        if (moves.size() > 2) fail(*line, line->tokens[1], "at most two successors");
    }
    auto problems = validate_atm(atm);
    if (!problems.empty()) throw ParseError(header.number, 1, problems.front().location + ": " + problems.front().message);
    return atm;
}

std::string serialize_atm(const ATM& atm) {
    std::ostringstream os;
    os << "atm\nmstates";
    for (std::size_t r = 0; r < atm.mstates.size(); ++r) os << " " << atm.mstates[r] << ":" << label_name(atm.labels[r]);
    os << "\ninit " << atm.mstates[atm.init] << "\nalphabet";
    for (const auto& s : atm.alphabet) os << " " << s;
    os << " blank=" << atm.alphabet[atm.blank] << "\n";
    for (std::size_t r = 0; r < atm.mstates.size(); ++r) {
        for (std::size_t g = 0; g < atm.alphabet.size(); ++g) {
            const auto& moves = atm.moves(r, g);
            if (moves.empty()) continue;
            os << "rule " << atm.mstates[r] << " " << atm.alphabet[g] << " ->";
            for (std::size_t m = 0; m < moves.size(); ++m) {
                if (m) os << " |";
                os << " " << atm.mstates[moves[m].state] << " " << atm.alphabet[moves[m].symbol] << " "
                   << direction_name(moves[m].dir);
            }
            os << "\n";
        }
    }
    return os.str();
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

} // namespace eqcheck

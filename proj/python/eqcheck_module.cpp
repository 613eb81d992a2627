#include "eqcheck/atm.hpp"
#include "eqcheck/io.hpp"
#include "eqcheck/oracle.hpp"
#include "eqcheck/random.hpp"
#include "eqcheck/values.hpp"
#include "eqcheck/verify.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace eqcheck;

namespace {

// Rationals cross the boundary as "num/den" strings; the Python side turns
// them into fractions.Fraction.
std::string rat(const Rat& r) { return to_string(r); }

void check_profile(const GameSystem& g, const Profile& p) {
    auto problems = validate_game(g);
    if (problems.empty()) problems = validate_profile(g, p);
    if (!problems.empty()) throw py::value_error(problems.front().location + ": " + problems.front().message);
}

/// Validates the profile and maps a 1-based agent to its index.
std::size_t agent_index(const GameSystem& g, const Profile& p, std::size_t agent) {
    check_profile(g, p);
    if (agent < 1 || agent > g.num_agents()) throw py::index_error("agent must be between 1 and the agent count");
    return agent - 1;
}

py::dict verdict_dict(const Verdict& v, const GameSystem& g, const Profile& profile) {
    static const char* names[] = {"NE_YES", "NE_NO", "SPE_YES", "SPE_NO", "REFUSED"};
    py::dict out;
    out["kind"] = names[static_cast<int>(v.kind)];
    py::list witnesses;
    for (const Witness& w : v.witnesses) {
        py::dict d;
        d["agent"] = w.agent + 1;
        d["payoff"] = rat(w.payoff);
        d["deviation"] = rat(w.deviation);
        if (w.spe) {
            std::vector<std::string> history;
            for (std::size_t s : w.spe->history) history.push_back(g.states[s]);
            d["history"] = history;
            d["action"] = g.actions[w.agent][w.spe->action];
            d["time"] = w.spe->state.n;
        }
        witnesses.append(d);
    }
    out["witnesses"] = witnesses;
    out["report"] = export_witness(v, g, profile);
    return out;
}

} // namespace

PYBIND11_MODULE(_eqcheck, m) {
    m.doc() = "Exact equilibrium checking for finite-horizon probabilistic concurrent games";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

    py::class_<GameSystem>(m, "Game")
        .def_static("parse", [](const std::string& text) { return parse_game(text); })
        .def("serialize", [](const GameSystem& g) { return serialize_game(g); })
        .def_property_readonly("states", [](const GameSystem& g) { return g.states; })
        .def_property_readonly("num_agents", &GameSystem::num_agents)
        .def_property_readonly("horizon", [](const GameSystem& g) { return g.horizon.get_str(); })
        .def("violations", [](const GameSystem& g) {
            std::vector<std::string> out;
            for (const auto& v : validate_game(g)) out.push_back(v.location + ": " + v.message);
            return out;
        });

    py::class_<StrategyTransducer>(m, "Transducer")
        .def_static("parse", [](const std::string& text, const GameSystem& g) { return parse_transducer(text, g); })
        .def("serialize", [](const StrategyTransducer& t, const GameSystem& g) { return serialize_transducer(t, g); })
        .def_property_readonly("agent", [](const StrategyTransducer& t) { return t.agent + 1; });

    m.def("verify_nash", [](const GameSystem& g, const Profile& p, std::size_t cap) {
        check_profile(g, p);
        return verdict_dict(verify_nash(g, p, {cap, false, std::nullopt}), g, p);
    }, py::arg("game"), py::arg("profile"), py::arg("cap") = kDefaultCap);
    m.def("verify_spe", [](const GameSystem& g, const Profile& p, std::size_t cap) {
        check_profile(g, p);
        return verdict_dict(verify_spe(g, p, {cap, false, std::nullopt}), g, p);
    }, py::arg("game"), py::arg("profile"), py::arg("cap") = kDefaultCap);
    m.def("payoff", [](const GameSystem& g, const Profile& p, std::size_t agent) {
        return rat(payoff(g, p, agent_index(g, p, agent)));
    }, py::arg("game"), py::arg("profile"), py::arg("agent"));
    m.def("oracle_payoff", [](const GameSystem& g, const Profile& p, std::size_t agent) {
        return rat(oracle_payoff(g, p, agent_index(g, p, agent)));
    });
    m.def("oracle_best_response", [](const GameSystem& g, const Profile& p, std::size_t agent) {
        return rat(oracle_best_response(g, p, agent_index(g, p, agent)));
    });
    m.def("bit_bound", [](const GameSystem& g, const Profile& p) {
        check_profile(g, p);
        return bit_bound(g, p).get_str();
    });
    m.def("random_instance", [](std::uint64_t seed) {
        Instance inst = gen_random_instance(seed);
        return py::make_tuple(inst.game, inst.profile);
    });
    m.def("compile_atm", [](const std::string& text, std::size_t cells, std::optional<std::string> horizon) {
        std::optional<BigInt> f;
        if (horizon) f = parse_horizon(*horizon);
        CompiledInstance inst = compile(parse_atm(text), cells, f);
        return py::make_tuple(inst.game, inst.profile);
    }, py::arg("text"), py::arg("cells"), py::arg("horizon") = std::nullopt);
    m.def("atm_accepts", [](const std::string& text, std::size_t cells) { return atm_accepts(parse_atm(text), cells); });
}

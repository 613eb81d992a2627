// eqcheck command-line interface.
//
// Exit status: 0 when the property holds, 1 when it is refuted, 2 when the
// check was refused or the input is invalid.

#include "eqcheck/atm.hpp"
#include "eqcheck/io.hpp"
#include "eqcheck/oracle.hpp"
#include "eqcheck/random.hpp"
#include "eqcheck/values.hpp"
#include "eqcheck/verify.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

using namespace eqcheck;

namespace {

struct Options {
    std::size_t cap = kDefaultCap;
    std::uint64_t seed = 1;
    std::size_t agent = 0;
    std::string horizon_override;
    bool all_witnesses = false;
    std::string format = "text";
};

class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

void report_violations(const std::vector<Violation>& problems) {
    if (problems.empty()) return;
    std::string text;
    for (const auto& p : problems) text += "  " + p.location + ": " + p.message + "\n";
    throw InputError("invalid input:\n" + text);
}

GameSystem load_game(const std::string& path, const Options& opt) {
    GameSystem g;
    try {
        g = parse_game(read_file(path));
    } catch (const ParseError& e) {
        throw InputError(path + ": " + e.what());
    }
    if (!opt.horizon_override.empty()) g.horizon = parse_horizon(opt.horizon_override);
    report_violations(validate_game(g));
    return g;
}

Profile load_profile(const GameSystem& g, const std::vector<std::string>& paths) {
    Profile profile(g.num_agents());
    std::vector<bool> seen(g.num_agents(), false);
    for (const auto& path : paths) {
        StrategyTransducer t;
        try {
            t = parse_transducer(read_file(path), g);
        } catch (const ParseError& e) {
            throw InputError(path + ": " + e.what());
        }
        if (seen[t.agent]) throw InputError(path + ": second transducer for agent " + std::to_string(t.agent + 1));
        seen[t.agent] = true;
        profile[t.agent] = std::move(t);
    }
    for (std::size_t i = 0; i < g.num_agents(); ++i) {
        if (!seen[i]) throw InputError("no transducer for agent " + std::to_string(i + 1));
    }
    report_violations(validate_profile(g, profile));
    return profile;
}

std::size_t agent_index(const GameSystem& g, const Options& opt) {
    if (opt.agent < 1 || opt.agent > g.num_agents()) throw InputError("--agent must be between 1 and the agent count");
    return opt.agent - 1;
}

ReportFormat report_format(const Options& opt) {
    return opt.format == "structured" ? ReportFormat::Structured : ReportFormat::Text;
}

void write_instance(const std::filesystem::path& dir, const GameSystem& g, const Profile& profile) {
    std::filesystem::create_directories(dir);
    write_file(dir / "game.txt", serialize_game(g));
    for (const auto& t : profile) {
        write_file(dir / ("agent" + std::to_string(t.agent + 1) + ".txt"), serialize_transducer(t, g));
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Equilibrium checking for finite-horizon probabilistic concurrent games"};
    app.require_subcommand(1);
    Options opt;
    app.add_option("--cap", opt.cap, "Explored state budget")->check(CLI::PositiveNumber);
    app.add_option("--seed", opt.seed, "Seed for gen and simulate");
    app.add_option("--agent", opt.agent, "Agent to check (1-based)");
    app.add_option("--horizon-override", opt.horizon_override, "Replace the horizon F");
    app.add_flag("--all-witnesses", opt.all_witnesses, "Report every refuted agent");
    app.add_option("--format", opt.format, "Report format")->check(CLI::IsMember({"text", "structured"}));

    std::string game_path;
    std::vector<std::string> transducers;

    auto* verify = app.add_subcommand("verify", "Decide NE or SPE")->fallthrough();
    std::string property;
    verify->add_option("property", property)->required()->check(CLI::IsMember({"ne", "spe"}));
    verify->add_option("game", game_path)->required();
    verify->add_option("transducers", transducers)->required();

    auto* pay = app.add_subcommand("payoff", "Expected payoff of one agent")->fallthrough();
    bool dump = false;
    pay->add_option("game", game_path)->required();
    pay->add_option("transducers", transducers)->required();
    pay->add_flag("--dump-values", dump, "Print the value of every explored chain state");

    auto* compile_cmd = app.add_subcommand("compile-atm", "Compile an ATM into a game and profile")->fallthrough();
    std::string atm_path, out_dir;
    std::size_t cells = 1;
    compile_cmd->add_option("atm", atm_path)->required();
    compile_cmd->add_option("-n", cells, "Cell bound")->required()->check(CLI::PositiveNumber);
    compile_cmd->add_option("-o", out_dir, "Output directory")->required();

    auto* oracle = app.add_subcommand("oracle", "Brute-force references (unstable)")->fallthrough();
    std::string oracle_op;
    oracle->add_option("operation", oracle_op)->required()->check(
        CLI::IsMember({"payoff", "bestresponse", "synthesize", "nash", "spe"}));
    oracle->add_option("game", game_path)->required();
    oracle->add_option("transducers", transducers);
    oracle->add_option("-o", out_dir, "Output directory for synthesize");

    auto* sim = app.add_subcommand("simulate", "Sample plays")->fallthrough();
    std::size_t count = 1000;
    sim->add_option("game", game_path)->required();
    sim->add_option("transducers", transducers)->required();
    sim->add_option("--count", count, "Number of plays");

    auto* info = app.add_subcommand("info", "Instance sizes")->fallthrough();
    info->add_option("game", game_path)->required();
    info->add_option("transducers", transducers)->required();

    auto* gen = app.add_subcommand("gen", "Random instance")->fallthrough();
    gen->add_option("-o", out_dir, "Output directory (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*verify) {
            GameSystem g = load_game(game_path, opt);
            Profile profile = load_profile(g, transducers);
            VerifyOptions vo{opt.cap, opt.all_witnesses, std::nullopt};
            if (opt.agent) vo.agent = agent_index(g, opt);
            Verdict v = property == "ne" ? verify_nash(g, profile, vo) : verify_spe(g, profile, vo);
            std::cout << export_witness(v, g, profile, report_format(opt));
            if (v.kind == VerdictKind::Refused) return 2;
            return v.refuted() ? 1 : 0;
        }
        if (*pay) {
            GameSystem g = load_game(game_path, opt);
            Profile profile = load_profile(g, transducers);
            const std::size_t agent = agent_index(g, opt);
            ChainModel model(g, profile);
            ReachSet reach = explore_chain(model, opt.cap);
            ValueTable values = hitting_probabilities(model, agent, reach);
            if (dump) std::cout << dump_values(model, reach, values);
            std::cout << "payoff agent=" << agent + 1 << " value=" << to_string(values.at(0)) << "\n";
            return 0;
        }
        if (*compile_cmd) {
            ATM atm;
            try {
                atm = parse_atm(read_file(atm_path));
            } catch (const ParseError& e) {
                throw InputError(atm_path + ": " + e.what());
            }
            std::optional<BigInt> horizon;
            if (!opt.horizon_override.empty()) horizon = parse_horizon(opt.horizon_override);
            CompiledInstance inst = compile(atm, cells, horizon);
            write_instance(out_dir, inst.game, inst.profile);
            std::cout << "states=" << inst.game.num_states() << " agents=" << inst.game.num_agents()
                      << " horizon=" << inst.game.horizon.get_str() << "\n";
            return 0;
        }
        if (*oracle) {
            GameSystem g = load_game(game_path, opt);
            if (oracle_op == "synthesize") {
                Profile profile = synthesize_spe(g);
                if (out_dir.empty()) {
                    for (const auto& t : profile) std::cout << serialize_transducer(t, g) << "\n";
                } else {
                    write_instance(out_dir, g, profile);
                }
                return 0;
            }
            Profile profile = load_profile(g, transducers);
            if (oracle_op == "nash" || oracle_op == "spe") {
                bool ok = oracle_op == "nash" ? oracle_is_nash(g, profile) : oracle_is_spe(g, profile);
                std::cout << "oracle " << oracle_op << "=" << (ok ? "yes" : "no") << "\n";
                return ok ? 0 : 1;
            }
            const std::size_t agent = agent_index(g, opt);
            Rat value = oracle_op == "payoff" ? oracle_payoff(g, profile, agent) : oracle_best_response(g, profile, agent);
            std::cout << "oracle " << oracle_op << " agent=" << agent + 1 << " value=" << to_string(value) << "\n";
            return 0;
        }
        if (*sim) {
            GameSystem g = load_game(game_path, opt);
            Profile profile = load_profile(g, transducers);
            SimulationReport r = simulate(g, profile, opt.seed, count);
            if (count == 0) return 0;
            for (std::size_t i = 0; i < g.num_agents(); ++i) {
                Rat freq(r.goal_hits[i], count);
                freq.canonicalize();
                std::cout << "agent=" << i + 1 << " hits=" << r.goal_hits[i] << " samples=" << count
                          << " frequency=" << to_string(freq) << "\n";
            }
            return 0;
        }
        if (*info) {
            GameSystem g = load_game(game_path, opt);
            Profile profile = load_profile(g, transducers);
            ChainModel model(g, profile);
            std::cout << "states=" << g.num_states() << "\n";
            std::cout << "product_states=" << model.transducer().size().get_str() << "\n";
            std::cout << "agents=" << g.num_agents() << "\n";
            std::cout << "horizon=" << g.horizon.get_str() << "\n";
            std::cout << "bit_bound=" << bit_bound(g, profile).get_str() << "\n";
            try {
                std::cout << "reachable=" << explore_chain(model, opt.cap).size() << "\n";
                for (std::size_t i = 0; i < g.num_agents(); ++i) {
                    std::cout << "deviation_reachable agent=" << i + 1 << " "
                              << explore_deviation(model, i, opt.cap).size() << "\n";
                }
            } catch (const CapExceeded& e) {
                std::cout << "reachable=refused cap=" << e.cap() << "\n";
                return 2;
            }
            return 0;
        }
        if (*gen) {
            Instance inst = gen_random_instance(opt.seed);
            if (out_dir.empty()) {
                std::cout << serialize_game(inst.game);
                for (const auto& t : inst.profile) std::cout << "\n" << serialize_transducer(t, inst.game);
            } else {
                write_instance(out_dir, inst.game, inst.profile);
            }
            return 0;
        }
    } catch (const CapExceeded& e) {
        std::cout << "VERDICT REFUSED cap=" << e.cap() << "\n";
        return 2;
    } catch (const OracleCapExceeded& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return 2;
    } catch (const SynthesisRefused& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return 2;
    } catch (const IdSpaceExceeded& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

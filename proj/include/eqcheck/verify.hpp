#pragma once

#include "eqcheck/values.hpp"

#include <optional>
#include <string>
#include <vector>

namespace eqcheck {

enum class VerdictKind { NeYes, NeNo, SpeYes, SpeNo, Refused };

/// Where a subgame-perfection check found a one-step improvement.
struct SpeWitness {
    ChainState state;
    std::vector<std::size_t> history;
    std::size_t action = 0;
    Rat old_value;
    Rat new_value;
};

/// A profitable deviation. For NE: `payoff` is the profile's value at the
/// start, `deviation` the best-response value. For SPE both refer to v*.
struct Witness {
    std::size_t agent = 0;
    Rat payoff;
    Rat deviation;
    std::optional<SpeWitness> spe;
};

struct Verdict {
    VerdictKind kind = VerdictKind::Refused;
    /// First entry is the smallest refuted agent; more only with all_witnesses.
    std::vector<Witness> witnesses;
    std::size_t cap = kDefaultCap;

    bool refuted() const { return kind == VerdictKind::NeNo || kind == VerdictKind::SpeNo; }
};

struct VerifyOptions {
    std::size_t cap = kDefaultCap;
    bool all_witnesses = false;
    /// Restrict the check to one agent.
    std::optional<std::size_t> agent;
};

Verdict verify_nash(const GameSystem& g, const Profile& profile, const VerifyOptions& options = {});
Verdict verify_spe(const GameSystem& g, const Profile& profile, const VerifyOptions& options = {});

enum class ReportFormat { Text, Structured };

/// Machine-readable report, e.g. "VERDICT NOT_NE agent=1 payoff=1/4 best=3/4".
/// The structured form prints one key=value pair per line.
std::string export_witness(const Verdict& verdict, const GameSystem& g, const Profile& profile,
                           ReportFormat format = ReportFormat::Text);

} // namespace eqcheck

#pragma once

#include "eqcheck/game.hpp"
#include "eqcheck/strategy.hpp"

#include <optional>
#include <string>
#include <vector>

namespace eqcheck {

enum class AtmLabel { Accept, Reject, Exists, Forall, Det };
enum class Direction { Left, Right };

struct AtmMove {
    std::size_t state = 0;
    std::size_t symbol = 0;
    Direction dir = Direction::Right;

    bool operator==(const AtmMove&) const = default;
};

/// Alternating Turing machine. rules[r * |alphabet| + g] lists the successors
/// of (r, g) in declaration order: the first is the alpha successor, the
/// second the beta successor. An empty list means no move is defined.
struct ATM {
    std::vector<std::string> mstates;
    std::vector<AtmLabel> labels;
    std::size_t init = 0;
    std::vector<std::string> alphabet;
    std::size_t blank = 0;
    std::vector<std::vector<AtmMove>> rules;

    const std::vector<AtmMove>& moves(std::size_t r, std::size_t g) const { return rules[r * alphabet.size() + g]; }

    bool operator==(const ATM&) const = default;
};

std::vector<Violation> validate_atm(const ATM& atm);

/// Roles of compiled game states.
enum class Role { Start, Base, Goal, Sink, Head, HeadExists, Written, Choice };

struct CompiledInstance {
    GameSystem game;
    Profile profile;
    std::vector<Role> provenance;
};

/// Horizon (3 * |alphabet| * |mstates|)^cells + 1.
BigInt reduction_horizon(const ATM& atm, std::size_t cells);

/// Builds the 1-bounded game and (cells + 1)-agent profile that is a Nash
/// equilibrium iff the machine does not accept the empty tape within `cells`
/// cells. Agents 1..cells simulate one tape cell each; the last agent picks
/// existential branches and, at the start, between the base loop (alpha, its
/// profile choice) and running the machine (beta).
CompiledInstance compile(const ATM& atm, std::size_t cells, std::optional<BigInt> horizon_override = std::nullopt);

/// Raised when the configuration space exceeds the enumeration budget.
class IdSpaceExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Direct simulation: true iff an accepting computation tree exists for the
/// empty tape within `cells` cells. Moving off the tape and undefined moves
/// reject.
bool atm_accepts(const ATM& atm, std::size_t cells, std::size_t cap = 1'000'000);

} // namespace eqcheck

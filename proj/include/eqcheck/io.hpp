#pragma once

#include "eqcheck/atm.hpp"
#include "eqcheck/game.hpp"
#include "eqcheck/strategy.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

namespace eqcheck {

/// Syntax or reference error at a 1-based line and column.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
          line_(line),
          column_(column),
          message_(message) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }
    const std::string& message() const { return message_; }

private:
    std::size_t line_;
    std::size_t column_;
    std::string message_;
};

GameSystem parse_game(std::string_view text);
std::string serialize_game(const GameSystem& g);

/// Parses a transducer against the game whose state and action names it uses.
StrategyTransducer parse_transducer(std::string_view text, const GameSystem& game);
std::string serialize_transducer(const StrategyTransducer& t, const GameSystem& game);

ATM parse_atm(std::string_view text);
std::string serialize_atm(const ATM& atm);

/// Parses a horizon written in decimal or with a 0b binary prefix.
BigInt parse_horizon(std::string_view text);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

} // namespace eqcheck

#pragma once

#include "eqcheck/io.hpp"

#include <string>
#include <vector>

namespace test_support {

inline std::string fixture(const std::string& name) { return std::string(EQCHECK_FIXTURES) + "/" + name; }

inline eqcheck::GameSystem game(const std::string& name) { return eqcheck::parse_game(eqcheck::read_file(fixture(name))); }

inline eqcheck::Profile profile(const eqcheck::GameSystem& g, const std::vector<std::string>& names) {
    eqcheck::Profile p;
    for (const auto& n : names) p.push_back(eqcheck::parse_transducer(eqcheck::read_file(fixture(n)), g));
    return p;
}

inline eqcheck::Rat rat(const char* text) { return eqcheck::parse_rat(text); }

} // namespace test_support

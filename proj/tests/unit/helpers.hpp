// Shared helpers for the unit tests.
#pragma once

#include "dfa/analyses.hpp"
#include "dfa/ast.hpp"
#include "dfa/parser.hpp"

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#ifndef DFA_FIXTURE_DIR
#error "DFA_FIXTURE_DIR must be defined"
#endif

namespace testing {

inline std::vector<std::string> fixtureNames()
{
    return {"bool_ops",    "chain_dead",    "comments_crlf", "const_diamond_diff", "const_diamond_same",
            "const_loop",  "countdown",     "dead_store",    "diamond",            "halt_only",
            "loop_def",    "negatives",     "nested_loops",  "overflow",           "redefine",
            "self_loop",   "straight",      "stuck_branch",  "swap",               "undef",
            "unreachable", "vbe_kill",      "very_busy"};
}

inline std::string readFixture(const std::string& name)
{
    std::ifstream in(std::string(DFA_FIXTURE_DIR) + "/" + name + ".imp", std::ios::binary);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

inline dfa::Program fixture(const std::string& name) { return dfa::parseProgram(readFixture(name)); }

inline dfa::Label L(const std::string& name) { return dfa::Label{name}; }

inline std::set<std::string> vars(std::initializer_list<const char*> names)
{
    return {names.begin(), names.end()};
}

inline dfa::AExp A(const std::string& text) { return *dfa::parseAExp(text); }
inline dfa::BExp B(const std::string& text) { return *dfa::parseBExp(text); }

} // namespace testing

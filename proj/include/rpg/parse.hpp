#pragma once

#include <stdexcept>
#include <string>

#include "rpg/presentation.hpp"

namespace rpg {

struct ParseError : std::runtime_error {
    ParseError(int line, int col, const std::string& msg)
        : std::runtime_error(std::to_string(line) + ":" + std::to_string(col) + ": " + msg),
          line(line), col(col) {}
    int line;
    int col;
};

// Accepts either "(tuple (x ...) (graph ...))" or a bare "(graph ...)"
// (in which case X is empty). Comments run from ';' to end of line.
GraphTuple parse_tuple(const std::string& text);

std::string serialize_pres(const Presentation& p);
std::string serialize_tuple(const GraphTuple& t);

} // namespace rpg

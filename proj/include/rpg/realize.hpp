#pragma once

#include <cstdint>
#include <string>

#include "rpg/presentation.hpp"

namespace rpg {

// Realization with every omega replaced by n (n >= 1). Vertex identities are
// Locations; ordering is deterministic.
FiniteGraph truncate(const Presentation& p, std::uint64_t n);

// Exact vertex count, or omega iff some class chain realizes infinitely
// many vertices.
Mult cardinality(const Presentation& p);

int nesting_depth(const Presentation& p);

std::string to_dot(const FiniteGraph& g);

} // namespace rpg

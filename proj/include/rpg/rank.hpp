#pragma once

#include <vector>

#include "rpg/presentation.hpp"

namespace rpg {

using RankValue = int;

struct KernelResult {
    std::vector<Location> locations; // sorted; the unique minimal separator
    RankValue witness_rank;
};

// Schmidt rank of p's own realization (references to an outer boundary are
// ignored). 0 iff finite; otherwise: with the top finite part removed, let
// rho be the maximal rank over the class component families and n the number
// of components attaining it (omega-aware); rank is rho+1 when n is omega
// and rho otherwise.
RankValue rank_of(const Presentation& p);

// Kernel of a top-level presentation: greedy minimization from a witness,
// sound because minimal witnesses are unique and contained in every witness.
KernelResult kernel(const Presentation& p);

// True iff G - X is connected (at most one component).
bool is_connected_tuple(const GraphTuple& t);

std::vector<Location> x_locations(const GraphTuple& t);

} // namespace rpg

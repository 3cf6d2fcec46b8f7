#pragma once

#include <map>
#include <optional>
#include <vector>

#include "rpg/presentation.hpp"

namespace rpg {

struct IsoWitness {
    std::map<std::string, std::string> eta; // finite-part bijection, g names -> h names
    std::vector<std::pair<std::size_t, std::size_t>> class_bijection; // normalized class indices
    std::vector<IsoWitness> children; // one per matched class pair, same order
};

// Tuple isomorphism decision with witness: enumerates isomorphisms η of the
// induced graphs on X̄ with η(X) = Y, then matches class tables with equal
// multiplicities recursively. Works on the normal forms.
std::optional<IsoWitness> iso_tuples(const GraphTuple& g, const GraphTuple& h);

} // namespace rpg

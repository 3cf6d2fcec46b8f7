#pragma once

#include <map>
#include <string>
#include <vector>

#include "rpg/components.hpp"
#include "rpg/presentation.hpp"

namespace rpg {

// Outer name -> label index. Indices are dense 0..L-1; -1 collapses a name
// (used only for order-independent fingerprints).
using LabelMap = std::map<std::string, int>;

// Canonical code of a normalized presentation relative to a labeled
// boundary: equal codes iff isomorphic respecting the labeling. Minimizes a
// string encoding over vertex orderings of the finite part (cell refinement
// plus interchangeable-vertex collapse keep the enumeration small).
std::string code_rel(const Presentation& q, const LabelMap& labels);

// Whole-tuple code; X membership is part of the encoding. Normalizes first.
std::string canonical_code(const GraphTuple& t);

// Kernel-rooted normal form: the top finite part is exactly X̄ = X ∪ K(G),
// classes are the components of G − X̄ grouped by isomorphism relative to X̄
// with aggregated multiplicities, children recursively normalized, in
// canonical-code order. Idempotent.
GraphTuple normalize(const GraphTuple& t);

// Normal form of a component relative to its boundary: finite components
// flatten to a single level, infinite ones are rooted at their kernel.
PresPtr normalize_part(const Presentation& q);

struct IClassTable {
    std::vector<PresPtr> representatives; // normalized, over the shared boundary
    std::vector<Mult> counts;
    std::vector<std::string> codes;
};

// Partition component families by isomorphism relative to the identity on
// the shared boundary; counts aggregate with omega absorption.
IClassTable group_iclasses(const std::vector<ComponentPart>& comps);

} // namespace rpg

#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "rpg/mult.hpp"

namespace rpg {

struct Presentation;
using PresPtr = std::shared_ptr<const Presentation>;

// Finite graph level of a presentation. Vertex names are unique within the
// whole enclosing scope chain (no shadowing of ancestor names).
struct FinitePart {
    std::vector<std::string> vertices;                              // sorted
    std::vector<std::pair<std::string, std::string>> internal_edges; // u < v, sorted
    std::vector<std::pair<std::string, std::string>> boundary_edges; // (local, outer), sorted

    bool has_vertex(const std::string& v) const;
    bool operator==(const FinitePart& o) const = default;
};

// mult disjoint copies of child, glued along the enclosing scope.
// child->boundary == enclosing boundary ++ enclosing finite-part vertices.
struct ComponentClass {
    Mult mult;
    PresPtr child;
};

// Finite recursive encoding of a rayless graph. The realization takes the
// finite part plus, per class, `mult` copies of the child realization; a
// boundary edge (l, b) becomes a real edge from l to the ancestor vertex b.
struct Presentation {
    FinitePart part;
    std::vector<ComponentClass> classes;
    std::vector<std::string> boundary; // names bound by ancestors, outermost first

    // Structural serialization in stored order; used as memo key.
    const std::string& struct_key() const;

    bool operator==(const Presentation& o) const;

private:
    mutable std::string key_cache_;
};

// Address of a vertex of the realized graph: a chain of (class index,
// copy index) steps, then a local name at the addressed level.
struct Location {
    std::vector<std::pair<std::uint32_t, std::uint64_t>> path;
    std::string name;

    std::string str() const;
    auto operator<=>(const Location& o) const = default;
};

// Presentation with a distinguished finite set X of top-level vertices.
struct GraphTuple {
    PresPtr pres;
    std::vector<std::string> x; // sorted, subset of top-level vertices
};

// Plain finite graph over Locations (truncation substrate).
struct FiniteGraph {
    std::vector<Location> vertices;                                  // sorted
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;      // index pairs i < j, sorted

    std::size_t size() const { return vertices.size(); }
    int index_of(const Location& v) const; // -1 if absent
    std::vector<std::vector<std::uint32_t>> adjacency() const;
    bool operator==(const FiniteGraph& o) const = default;
};

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Validating constructor: sorts/dedups vertices and edges, checks name
// scoping and that children carry the matching boundary chain. Class order
// is preserved as given.
PresPtr make_pres(FinitePart part, std::vector<ComponentClass> classes,
                  std::vector<std::string> boundary);

GraphTuple make_tuple(PresPtr pres, std::vector<std::string> x);

// Deep validation; in strict mode additionally requires every class child
// realization minus its boundary to be connected and nonempty (normal form).
void validate(const Presentation& p, bool strict = false);

bool location_valid(const Presentation& p, const Location& loc);

// Edge test on the realization for two (valid) locations.
bool locations_adjacent(const Presentation& p, const Location& a, const Location& b);

std::string edge_key(const std::string& a, const std::string& b);

} // namespace rpg

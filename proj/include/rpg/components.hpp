#pragma once

#include <set>
#include <string>
#include <vector>

#include "rpg/presentation.hpp"

namespace rpg {

// One family of identical connected components.
struct ComponentPart {
    PresPtr pres;
    Mult count;
};

// Drop all references to the given outer names (at every depth) and remove
// them from the stored boundary chains.
PresPtr drop_outer_refs(const Presentation& p, const std::set<std::string>& removed);

// Presentation over an empty boundary, references to the old boundary dropped.
PresPtr strip_boundary(const Presentation& p);

// Same structure over a narrowed/renamed boundary chain; every referenced
// outer name must be present in new_boundary.
PresPtr rebase_boundary(const Presentation& p, std::vector<std::string> new_boundary);

// Outer names actually referenced by p or any descendant.
std::set<std::string> outer_refs(const Presentation& p);

// Split touched class copies into mult-1 singleton classes so that every
// given location runs through multiplicity-1 steps. Locations are returned
// remapped, in input order.
struct Materialized {
    PresPtr pres;
    std::vector<Location> locs;
};
Materialized materialize_copies(const Presentation& p, const std::vector<Location>& locs);

// Remove the located vertices, preserving the overall shape.
PresPtr delete_in_shape(const Presentation& p, const std::vector<Location>& locs);

// Split p into parts that are connected ignoring the boundary; counts are
// per single realization of p. Returns {p, 1} itself when already connected.
std::vector<ComponentPart> split_components(PresPtr p);

// Connected components of (realization of p) minus the located vertices,
// as presentations over an empty boundary with multiplicities.
std::vector<ComponentPart> delete_locations(const Presentation& p,
                                            std::vector<Location> locs);

// Turn the located vertices into external boundary vertices. The result is a
// presentation over boundary ++ fresh names; edges among the promoted
// vertices and from them to the old boundary are reported separately.
struct Promoted {
    PresPtr pres;
    std::vector<std::pair<Location, std::string>> names;          // input order
    std::vector<std::pair<std::string, std::string>> inner_edges; // promoted-promoted
    std::vector<std::pair<std::string, std::string>> outer_edges; // (promoted, old outer)
};
Promoted promote_to_boundary(const Presentation& p, const std::vector<Location>& locs);

// Multiplicity surgery on the class addressed by a chain of class indices.
PresPtr add_class_copies(const Presentation& p, const std::vector<std::uint32_t>& class_path, Mult k);
PresPtr remove_class_copies(const Presentation& p, const std::vector<std::uint32_t>& class_path, Mult k);
PresPtr set_class_mult(const Presentation& p, const std::vector<std::uint32_t>& class_path, Mult m);

} // namespace rpg

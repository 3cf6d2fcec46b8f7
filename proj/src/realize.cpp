#include "rpg/realize.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace rpg {

namespace {

void walk(const Presentation& p, std::uint64_t n,
          std::vector<std::pair<std::uint32_t, std::uint64_t>>& prefix,
          std::map<std::string, Location>& scope,
          std::vector<Location>& verts,
          std::vector<std::pair<Location, Location>>& edges) {
    for (const auto& v : p.part.vertices) verts.push_back(Location{prefix, v});
    for (const auto& [u, v] : p.part.internal_edges)
        edges.emplace_back(Location{prefix, u}, Location{prefix, v});
    for (const auto& [l, b] : p.part.boundary_edges)
        edges.emplace_back(Location{prefix, l}, scope.at(b));

    for (const auto& v : p.part.vertices) scope[v] = Location{prefix, v};
    for (std::uint32_t k = 0; k < p.classes.size(); ++k) {
        const auto& c = p.classes[k];
        std::uint64_t copies = c.mult.is_omega() ? n : c.mult.count();
        for (std::uint64_t i = 0; i < copies; ++i) {
            prefix.emplace_back(k, i);
            walk(*c.child, n, prefix, scope, verts, edges);
            prefix.pop_back();
        }
    }
    for (const auto& v : p.part.vertices) scope.erase(v);
}

} // namespace

FiniteGraph truncate(const Presentation& p, std::uint64_t n) {
    if (n < 1) throw InputError("truncation level must be >= 1");
    std::vector<Location> verts;
    std::vector<std::pair<Location, Location>> raw;
    std::vector<std::pair<std::uint32_t, std::uint64_t>> prefix;
    std::map<std::string, Location> scope;
    for (const auto& b : p.boundary) scope[b] = Location{{}, "<outer>/" + b};
    walk(p, n, prefix, scope, verts, raw);

    FiniteGraph g;
    std::sort(verts.begin(), verts.end());
    g.vertices = std::move(verts);
    for (const auto& [a, b] : raw) {
        int i = g.index_of(a);
        int j = g.index_of(b);
        if (i < 0 || j < 0) continue; // edge into the external boundary
        auto lo = static_cast<std::uint32_t>(std::min(i, j));
        auto hi = static_cast<std::uint32_t>(std::max(i, j));
        g.edges.emplace_back(lo, hi);
    }
    std::sort(g.edges.begin(), g.edges.end());
    g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
    return g;
}

Mult cardinality(const Presentation& p) {
    Mult total = Mult::finite(p.part.vertices.size());
    for (const auto& c : p.classes)
        total = total.plus(c.mult.times(cardinality(*c.child)));
    return total;
}

int nesting_depth(const Presentation& p) {
    int d = 0;
    for (const auto& c : p.classes) d = std::max(d, 1 + nesting_depth(*c.child));
    return d;
}

std::string to_dot(const FiniteGraph& g) {
    std::ostringstream os;
    os << "graph {\n";
    for (const auto& v : g.vertices) os << "  \"" << v.str() << "\";\n";
    for (const auto& [i, j] : g.edges)
        os << "  \"" << g.vertices[i].str() << "\" -- \"" << g.vertices[j].str() << "\";\n";
    os << "}\n";
    return os.str();
}

} // namespace rpg

#include "rpg/presentation.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace rpg {

bool FinitePart::has_vertex(const std::string& v) const {
    return std::binary_search(vertices.begin(), vertices.end(), v);
}

std::string edge_key(const std::string& a, const std::string& b) {
    return a < b ? a + "~" + b : b + "~" + a;
}

const std::string& Presentation::struct_key() const {
    if (!key_cache_.empty()) return key_cache_;
    std::ostringstream os;
    os << "(v";
    for (const auto& v : part.vertices) os << ' ' << v;
    os << ")(ie";
    for (const auto& [u, v] : part.internal_edges) os << ' ' << u << '~' << v;
    os << ")(be";
    for (const auto& [l, b] : part.boundary_edges) os << ' ' << l << '~' << b;
    os << ")";
    for (const auto& c : classes) os << "(c " << c.mult.str() << ' ' << c.child->struct_key() << ')';
    key_cache_ = os.str();
    return key_cache_;
}

bool Presentation::operator==(const Presentation& o) const {
    if (part != o.part || boundary != o.boundary || classes.size() != o.classes.size()) return false;
    for (std::size_t i = 0; i < classes.size(); ++i) {
        if (classes[i].mult != o.classes[i].mult) return false;
        if (classes[i].child == o.classes[i].child) continue;
        if (!(*classes[i].child == *o.classes[i].child)) return false;
    }
    return true;
}

std::string Location::str() const {
    std::string s;
    for (const auto& [k, c] : path) {
        s += std::to_string(k);
        s += ':';
        s += std::to_string(c);
        s += '/';
    }
    s += name;
    return s;
}

int FiniteGraph::index_of(const Location& v) const {
    auto it = std::lower_bound(vertices.begin(), vertices.end(), v);
    if (it == vertices.end() || !(*it == v)) return -1;
    return static_cast<int>(it - vertices.begin());
}

std::vector<std::vector<std::uint32_t>> FiniteGraph::adjacency() const {
    std::vector<std::vector<std::uint32_t>> adj(vertices.size());
    for (const auto& [i, j] : edges) {
        adj[i].push_back(j);
        adj[j].push_back(i);
    }
    return adj;
}

namespace {

template <typename T>
void sort_unique(std::vector<T>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

} // namespace

PresPtr make_pres(FinitePart part, std::vector<ComponentClass> classes,
                  std::vector<std::string> boundary) {
    std::sort(part.vertices.begin(), part.vertices.end());
    for (std::size_t i = 1; i < part.vertices.size(); ++i)
        if (part.vertices[i] == part.vertices[i - 1])
            throw InputError("duplicate vertex name: " + part.vertices[i]);

    std::set<std::string> outer(boundary.begin(), boundary.end());
    for (const auto& v : part.vertices)
        if (outer.count(v))
            throw InputError("vertex name shadows an enclosing name: " + v);

    auto is_local = [&](const std::string& n) {
        return std::binary_search(part.vertices.begin(), part.vertices.end(), n);
    };

    for (auto& [u, v] : part.internal_edges) {
        if (u == v) throw InputError("self-loop on " + u);
        if (!is_local(u) || !is_local(v))
            throw InputError("internal edge references unknown vertex: " + u + " " + v);
        if (v < u) std::swap(u, v);
    }
    sort_unique(part.internal_edges);

    for (const auto& [l, b] : part.boundary_edges) {
        if (!is_local(l)) throw InputError("boundary edge local endpoint unknown: " + l);
        if (!outer.count(b)) throw InputError("unbound name " + b);
    }
    sort_unique(part.boundary_edges);

    std::vector<std::string> child_boundary = boundary;
    child_boundary.insert(child_boundary.end(), part.vertices.begin(), part.vertices.end());
    for (const auto& c : classes) {
        if (!c.child) throw InputError("null class child");
        if (c.mult.is_zero()) throw InputError("zero multiplicity");
        if (c.child->boundary != child_boundary)
            throw InputError("class child boundary does not match enclosing scope");
    }

    auto p = std::make_shared<Presentation>();
    p->part = std::move(part);
    p->classes = std::move(classes);
    p->boundary = std::move(boundary);
    return p;
}

GraphTuple make_tuple(PresPtr pres, std::vector<std::string> x) {
    if (!pres->boundary.empty()) throw InputError("tuple presentation must have empty boundary");
    sort_unique(x);
    for (const auto& v : x)
        if (!pres->part.has_vertex(v))
            throw InputError("x vertex not in the top finite part: " + v);
    return GraphTuple{std::move(pres), std::move(x)};
}

namespace {

const Presentation* level_at(const Presentation& p,
                             const std::vector<std::pair<std::uint32_t, std::uint64_t>>& path,
                             std::size_t depth) {
    const Presentation* cur = &p;
    for (std::size_t i = 0; i < depth; ++i) {
        auto [k, c] = path[i];
        if (k >= cur->classes.size()) return nullptr;
        const auto& cls = cur->classes[k];
        if (!cls.mult.is_omega() && c >= cls.mult.count()) return nullptr;
        cur = cls.child.get();
    }
    return cur;
}

} // namespace

bool location_valid(const Presentation& p, const Location& loc) {
    const Presentation* lvl = level_at(p, loc.path, loc.path.size());
    return lvl != nullptr && lvl->part.has_vertex(loc.name);
}

bool locations_adjacent(const Presentation& p, const Location& a, const Location& b) {
    const Location* lo = &a;
    const Location* hi = &b;
    if (lo->path.size() > hi->path.size()) std::swap(lo, hi);
    if (!std::equal(lo->path.begin(), lo->path.end(), hi->path.begin())) return false;

    const Presentation* deep = level_at(p, hi->path, hi->path.size());
    if (!deep) return false;
    if (lo->path.size() == hi->path.size()) {
        auto key = std::make_pair(std::min(lo->name, hi->name), std::max(lo->name, hi->name));
        return std::binary_search(deep->part.internal_edges.begin(),
                                  deep->part.internal_edges.end(), key);
    }
    // hi at a descendant level: edge iff hi's level declares a boundary edge to
    // lo's name and that name is bound exactly at lo's level.
    const Presentation* shallow = level_at(p, lo->path, lo->path.size());
    if (!shallow || !shallow->part.has_vertex(lo->name)) return false;
    auto key = std::make_pair(hi->name, lo->name);
    return std::binary_search(deep->part.boundary_edges.begin(),
                              deep->part.boundary_edges.end(), key);
}

} // namespace rpg

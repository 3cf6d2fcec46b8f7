#include "rpg/canon.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>
#include <sstream>

#include "rpg/rank.hpp"
#include "rpg/realize.hpp"

namespace rpg {

namespace {

// ---------------- canonical code ----------------

std::map<std::string, std::string>& code_memo() {
    static std::map<std::string, std::string> memo;
    return memo;
}

std::string memo_key(const Presentation& q, const LabelMap& labels,
                     const std::set<std::string>* xset) {
    std::ostringstream os;
    os << q.struct_key() << '|';
    for (const auto& r : outer_refs(q)) os << labels.at(r) << ',';
    if (xset) {
        os << "|X:";
        for (const auto& x : *xset) os << x << ',';
    }
    return os.str();
}

struct CodeCtx {
    const Presentation& q;
    const LabelMap& labels;
    const std::set<std::string>* xset;
    std::vector<std::string> verts;
    std::map<std::string, std::size_t> vidx;
    std::vector<std::vector<std::size_t>> adj;
    std::vector<std::string> class_fp; // order-independent child fingerprint
    std::vector<std::set<std::string>> class_refs;
};

std::string code_impl(const Presentation& q, const LabelMap& labels,
                      const std::set<std::string>* xset);

// Fingerprint of a class child with all current locals collapsed to -1.
std::string collapsed_fp(const Presentation& child, const LabelMap& labels,
                         const std::vector<std::string>& locals) {
    LabelMap sub = labels;
    for (const auto& v : locals) sub[v] = -1;
    return code_impl(child, sub, nullptr);
}

std::string encode(const CodeCtx& c, const std::vector<std::size_t>& order) {
    std::vector<int> pos(c.verts.size());
    for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<int>(i);

    std::ostringstream os;
    os << 'V' << c.verts.size() << ';';
    if (c.xset) {
        os << 'x';
        for (std::size_t i = 0; i < order.size(); ++i)
            os << (c.xset->count(c.verts[order[i]]) ? '1' : '0');
        os << ';';
    }
    std::vector<std::pair<int, int>> ie;
    for (const auto& [u, v] : c.q.part.internal_edges) {
        int a = pos[c.vidx.at(u)];
        int b = pos[c.vidx.at(v)];
        ie.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::sort(ie.begin(), ie.end());
    os << 'e';
    for (auto [a, b] : ie) os << a << '-' << b << ',';
    os << ';';
    std::vector<std::pair<int, int>> be;
    for (const auto& [l, b] : c.q.part.boundary_edges)
        be.emplace_back(pos[c.vidx.at(l)], c.labels.at(b));
    std::sort(be.begin(), be.end());
    os << 'b';
    for (auto [a, b] : be) os << a << '-' << b << ',';
    os << ';';

    if (!c.q.classes.empty()) {
        int base = 0;
        for (const auto& [n, i] : c.labels) base = std::max(base, i + 1);
        LabelMap child_labels = c.labels;
        for (std::size_t i = 0; i < order.size(); ++i)
            child_labels[c.verts[order[i]]] = base + static_cast<int>(i);
        std::vector<std::string> entries;
        for (const auto& cls : c.q.classes) {
            entries.push_back("(" + code_impl(*cls.child, child_labels, nullptr) + "*" +
                              cls.mult.str() + ")");
        }
        std::sort(entries.begin(), entries.end());
        os << 'c';
        for (const auto& s : entries) os << s;
    }
    return os.str();
}

std::string code_impl(const Presentation& q, const LabelMap& labels,
                      const std::set<std::string>* xset) {
    std::string key = memo_key(q, labels, xset);
    auto& memo = code_memo();
    if (auto it = memo.find(key); it != memo.end()) return it->second;

    CodeCtx c{q, labels, xset, {}, {}, {}, {}, {}};
    c.verts = q.part.vertices;
    for (std::size_t i = 0; i < c.verts.size(); ++i) c.vidx[c.verts[i]] = i;
    c.adj.assign(c.verts.size(), {});
    for (const auto& [u, v] : q.part.internal_edges) {
        c.adj[c.vidx[u]].push_back(c.vidx[v]);
        c.adj[c.vidx[v]].push_back(c.vidx[u]);
    }
    for (const auto& cls : q.classes) {
        c.class_fp.push_back(collapsed_fp(*cls.child, labels, c.verts) + "*" + cls.mult.str());
        c.class_refs.push_back(outer_refs(*cls.child));
    }

    const std::size_t n = c.verts.size();

    // initial colors: X flag, degree, boundary references, class fingerprints
    std::vector<std::string> color(n);
    for (std::size_t v = 0; v < n; ++v) {
        std::ostringstream os;
        if (xset) os << (xset->count(c.verts[v]) ? "x1" : "x0");
        os << "d" << c.adj[v].size() << "b";
        std::vector<int> refs;
        for (const auto& [l, b] : q.part.boundary_edges)
            if (l == c.verts[v]) refs.push_back(labels.at(b));
        std::sort(refs.begin(), refs.end());
        for (int r : refs) os << r << ',';
        os << "f";
        std::vector<std::string> fps;
        for (std::size_t k = 0; k < q.classes.size(); ++k)
            if (c.class_refs[k].count(c.verts[v])) fps.push_back(c.class_fp[k]);
        std::sort(fps.begin(), fps.end());
        for (const auto& f : fps) os << '[' << f << ']';
        color[v] = os.str();
    }

    // WL refinement
    for (std::size_t round = 0; round < n; ++round) {
        std::vector<std::string> next(n);
        for (std::size_t v = 0; v < n; ++v) {
            std::vector<std::string> nb;
            for (auto u : c.adj[v]) nb.push_back(color[u]);
            std::sort(nb.begin(), nb.end());
            std::string s = color[v] + "|";
            for (const auto& x : nb) s += x + ";";
            next[v] = s;
        }
        std::set<std::string> before(color.begin(), color.end());
        std::set<std::string> after(next.begin(), next.end());
        color = std::move(next);
        if (after.size() == before.size()) break;
    }

    // cells ordered by color
    std::map<std::string, std::vector<std::size_t>> cells;
    for (std::size_t v = 0; v < n; ++v) cells[color[v]].push_back(v);

    // interchangeable vertices: swapping them is an automorphism that fixes
    // everything else, so their relative order is pinned
    auto identical = [&](std::size_t u, std::size_t v) {
        if (xset && xset->count(c.verts[u]) != xset->count(c.verts[v])) return false;
        std::set<std::size_t> nu(c.adj[u].begin(), c.adj[u].end());
        std::set<std::size_t> nv(c.adj[v].begin(), c.adj[v].end());
        nu.erase(v);
        nv.erase(u);
        if (nu != nv) return false;
        auto bref = [&](std::size_t w) {
            std::set<std::string> r;
            for (const auto& [l, b] : q.part.boundary_edges)
                if (l == c.verts[w]) r.insert(b);
            return r;
        };
        if (bref(u) != bref(v)) return false;
        for (std::size_t k = 0; k < q.classes.size(); ++k)
            if (c.class_refs[k].count(c.verts[u]) != c.class_refs[k].count(c.verts[v]))
                return false;
        return true;
    };

    // per cell: group ids as a multiset; next_permutation enumerates the
    // distinct arrangements
    struct Cell {
        std::vector<std::vector<std::size_t>> groups;
        std::vector<int> symbols;
    };
    std::vector<Cell> cell_list;
    std::uint64_t total = 1;
    for (auto& [key2, members] : cells) {
        Cell cell;
        for (auto v : members) {
            bool placed = false;
            for (auto& g : cell.groups)
                if (identical(g.front(), v)) {
                    g.push_back(v);
                    placed = true;
                    break;
                }
            if (!placed) cell.groups.push_back({v});
        }
        for (std::size_t gi = 0; gi < cell.groups.size(); ++gi)
            for (std::size_t rep = 0; rep < cell.groups[gi].size(); ++rep)
                cell.symbols.push_back(static_cast<int>(gi));
        std::sort(cell.symbols.begin(), cell.symbols.end());
        // count distinct arrangements, guarding the enumeration budget
        std::uint64_t perms = 1;
        {
            std::vector<int> syms = cell.symbols;
            std::uint64_t cnt = 1;
            while (std::next_permutation(syms.begin(), syms.end())) {
                ++cnt;
                if (cnt > 2000000) break;
            }
            perms = cnt;
        }
        if (total > 2000000 / std::max<std::uint64_t>(perms, 1))
            throw std::logic_error("canonical ordering enumeration too large");
        total *= perms;
        cell_list.push_back(std::move(cell));
    }

    // odometer over cells
    std::string best;
    std::vector<std::vector<int>> arrangement;
    for (auto& cell : cell_list) arrangement.push_back(cell.symbols);
    for (;;) {
        std::vector<std::size_t> order;
        for (std::size_t ci = 0; ci < cell_list.size(); ++ci) {
            std::vector<std::size_t> cursor(cell_list[ci].groups.size(), 0);
            for (int sym : arrangement[ci]) {
                order.push_back(cell_list[ci].groups[static_cast<std::size_t>(sym)]
                                               [cursor[static_cast<std::size_t>(sym)]++]);
            }
        }
        std::string s = encode(c, order);
        if (best.empty() || s < best) best = std::move(s);
        // advance odometer
        std::size_t ci = 0;
        for (; ci < arrangement.size(); ++ci) {
            if (std::next_permutation(arrangement[ci].begin(), arrangement[ci].end())) break;
            // wrapped to the sorted start; carry on to the next cell
        }
        if (ci == arrangement.size()) break;
    }

    memo.emplace(std::move(key), best);
    return best;
}

} // namespace

std::string code_rel(const Presentation& q, const LabelMap& labels) {
    return code_impl(q, labels, nullptr);
}

// ---------------- normal form ----------------

namespace {

// Fully realize a finite presentation into one flat level over its boundary.
PresPtr flatten_finite(const Presentation& q) {
    struct Walker {
        std::vector<Location> locs;
        std::vector<std::pair<Location, Location>> internal;
        std::vector<std::pair<Location, std::string>> outer;

        void run(const Presentation& p,
                 std::vector<std::pair<std::uint32_t, std::uint64_t>>& prefix,
                 std::map<std::string, Location>& scope) {
            for (const auto& v : p.part.vertices) locs.push_back(Location{prefix, v});
            for (const auto& [u, v] : p.part.internal_edges)
                internal.emplace_back(Location{prefix, u}, Location{prefix, v});
            for (const auto& [l, b] : p.part.boundary_edges) {
                auto it = scope.find(b);
                if (it != scope.end())
                    internal.emplace_back(Location{prefix, l}, it->second);
                else
                    outer.emplace_back(Location{prefix, l}, b);
            }
            for (const auto& v : p.part.vertices) scope[v] = Location{prefix, v};
            for (std::uint32_t k = 0; k < p.classes.size(); ++k) {
                const auto& cls = p.classes[k];
                std::uint64_t copies =
                    cls.mult.is_omega()
                        ? (cardinality(*cls.child).is_zero() ? 0 : 1 /* unreachable */)
                        : cls.mult.count();
                assert(!cls.mult.is_omega() || copies == 0);
                for (std::uint64_t i = 0; i < copies; ++i) {
                    prefix.emplace_back(k, i);
                    run(*cls.child, prefix, scope);
                    prefix.pop_back();
                }
            }
            for (const auto& v : p.part.vertices) scope.erase(v);
        }
    } w;

    std::vector<std::pair<std::uint32_t, std::uint64_t>> prefix;
    std::map<std::string, Location> scope;
    w.run(q, prefix, scope);

    std::sort(w.locs.begin(), w.locs.end());
    std::set<std::string> avoid(q.boundary.begin(), q.boundary.end());
    std::map<Location, std::string> name_of;
    int counter = 0;
    for (const auto& l : w.locs) {
        std::string nm;
        do {
            nm = "w" + std::to_string(counter++);
        } while (avoid.count(nm));
        name_of[l] = nm;
    }

    FinitePart part;
    for (const auto& l : w.locs) part.vertices.push_back(name_of[l]);
    for (const auto& [a, b] : w.internal)
        part.internal_edges.emplace_back(name_of[a], name_of[b]);
    for (const auto& [a, b] : w.outer) part.boundary_edges.emplace_back(name_of[a], b);
    return make_pres(std::move(part), {}, q.boundary);
}

struct Grouped {
    FinitePart top;
    std::vector<ComponentClass> classes; // in canonical-code order
    std::vector<std::string> prom_names; // in promotion order
};

// Shared tail of normalize/normalize_part: promote xbar, split, recursively
// normalize the parts, group them by code and rebuild one level.
Grouped regroup(const Presentation& p, const std::vector<Location>& xbar) {
    Promoted prom = promote_to_boundary(p, xbar);

    std::vector<std::string> prom_names;
    for (const auto& [loc, nm] : prom.names) prom_names.push_back(nm);

    // canonical label order: stored outer chain, then promoted names sorted
    std::vector<std::string> sorted_names = prom_names;
    std::sort(sorted_names.begin(), sorted_names.end());
    LabelMap labels;
    int idx = 0;
    for (const auto& b : p.boundary) labels[b] = idx++;
    for (const auto& nm : sorted_names) labels[nm] = idx++;

    struct Group {
        PresPtr rep;
        Mult count;
    };
    std::map<std::string, Group> groups;
    for (const auto& part : split_components(prom.pres)) {
        PresPtr np = normalize_part(*part.pres);
        std::string code = code_rel(*np, labels);
        auto [it, fresh] = groups.try_emplace(code, Group{np, part.count});
        if (!fresh) it->second.count = it->second.count.plus(part.count);
    }

    Grouped out;
    out.prom_names = prom_names;
    out.top.vertices = prom_names;
    out.top.internal_edges = prom.inner_edges;
    out.top.boundary_edges = prom.outer_edges;

    std::vector<std::string> child_b = p.boundary;
    child_b.insert(child_b.end(), sorted_names.begin(), sorted_names.end());
    for (const auto& [code, g] : groups)
        out.classes.push_back({g.count, rebase_boundary(*g.rep, child_b)});
    return out;
}

std::map<std::string, PresPtr>& part_memo() {
    static std::map<std::string, PresPtr> memo;
    return memo;
}

} // namespace

PresPtr normalize_part(const Presentation& q) {
    std::string key = q.struct_key() + "|B:";
    for (const auto& b : q.boundary) key += b + ",";
    auto& memo = part_memo();
    if (auto it = memo.find(key); it != memo.end()) return it->second;

    PresPtr result;
    if (!cardinality(q).is_omega()) {
        result = flatten_finite(q);
    } else {
        PresPtr stripped = strip_boundary(q);
        KernelResult k = kernel(*stripped);
        Grouped g = regroup(q, k.locations);
        result = make_pres(std::move(g.top), std::move(g.classes), q.boundary);
    }
    memo.emplace(std::move(key), result);
    return result;
}

GraphTuple normalize(const GraphTuple& t) {
    KernelResult k = kernel(*t.pres);
    std::vector<Location> xbar = x_locations(t);
    xbar.insert(xbar.end(), k.locations.begin(), k.locations.end());
    std::sort(xbar.begin(), xbar.end());
    xbar.erase(std::unique(xbar.begin(), xbar.end()), xbar.end());

    Grouped g = regroup(*t.pres, xbar);
    assert(g.top.boundary_edges.empty());
    // top-level names are unique in the whole tree, so promotion kept them
    PresPtr pres = make_pres(std::move(g.top), std::move(g.classes), {});
    for (const auto& x : t.x) assert(pres->part.has_vertex(x));
    return make_tuple(std::move(pres), t.x);
}

std::string canonical_code(const GraphTuple& t) {
    GraphTuple nt = normalize(t);
    std::set<std::string> xset(nt.x.begin(), nt.x.end());
    return code_impl(*nt.pres, {}, &xset);
}

IClassTable group_iclasses(const std::vector<ComponentPart>& comps) {
    IClassTable table;
    if (comps.empty()) return table;
    LabelMap labels;
    int idx = 0;
    for (const auto& b : comps[0].pres->boundary) labels[b] = idx++;

    std::map<std::string, std::size_t> by_code;
    for (const auto& comp : comps) {
        PresPtr np = normalize_part(*comp.pres);
        std::string code = code_rel(*np, labels);
        auto it = by_code.find(code);
        if (it == by_code.end()) {
            by_code.emplace(code, table.representatives.size());
            table.representatives.push_back(np);
            table.counts.push_back(comp.count);
            table.codes.push_back(code);
        } else {
            table.counts[it->second] = table.counts[it->second].plus(comp.count);
        }
    }
    return table;
}

} // namespace rpg

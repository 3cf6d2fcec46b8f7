#include "rpg/components.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <numeric>

#include "rpg/realize.hpp"

namespace rpg {

namespace {

struct Dsu {
    std::vector<int> parent;
    explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

template <typename T>
void sort_unique(std::vector<T>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

} // namespace

PresPtr drop_outer_refs(const Presentation& p, const std::set<std::string>& removed) {
    FinitePart part = p.part;
    std::erase_if(part.boundary_edges,
                  [&](const auto& e) { return removed.count(e.second) > 0; });
    std::vector<std::string> nb;
    for (const auto& b : p.boundary)
        if (!removed.count(b)) nb.push_back(b);
    std::vector<ComponentClass> classes;
    classes.reserve(p.classes.size());
    for (const auto& c : p.classes)
        classes.push_back({c.mult, drop_outer_refs(*c.child, removed)});
    return make_pres(std::move(part), std::move(classes), std::move(nb));
}

PresPtr strip_boundary(const Presentation& p) {
    if (p.boundary.empty()) {
        // already standalone; share when possible
        return std::make_shared<const Presentation>(p);
    }
    return drop_outer_refs(p, std::set<std::string>(p.boundary.begin(), p.boundary.end()));
}

PresPtr rebase_boundary(const Presentation& p, std::vector<std::string> new_boundary) {
    std::vector<std::string> child_b = new_boundary;
    child_b.insert(child_b.end(), p.part.vertices.begin(), p.part.vertices.end());
    std::vector<ComponentClass> classes;
    classes.reserve(p.classes.size());
    for (const auto& c : p.classes)
        classes.push_back({c.mult, rebase_boundary(*c.child, child_b)});
    return make_pres(p.part, std::move(classes), std::move(new_boundary));
}

std::set<std::string> outer_refs(const Presentation& p) {
    std::set<std::string> refs;
    for (const auto& [l, b] : p.part.boundary_edges) refs.insert(b);
    for (const auto& c : p.classes)
        for (const auto& r : outer_refs(*c.child))
            if (!p.part.has_vertex(r)) refs.insert(r);
    return refs;
}

namespace {

using Items = std::vector<std::pair<std::size_t, std::size_t>>; // (loc index, consumed steps)

PresPtr mat_rec(const PresPtr& p, const std::vector<Location>& locs, const Items& items,
                std::vector<std::pair<std::uint32_t, std::uint64_t>>& prefix,
                std::vector<Location>& out) {
    std::map<std::pair<std::uint32_t, std::uint64_t>, Items> deep;
    bool any_deep = false;
    for (auto [idx, d] : items) {
        const Location& loc = locs[idx];
        if (loc.path.size() == d) {
            out[idx] = Location{prefix, loc.name};
        } else {
            deep[loc.path[d]].push_back({idx, d + 1});
            any_deep = true;
        }
    }
    if (!any_deep) return p;

    std::vector<ComponentClass> classes;
    for (std::uint32_t k = 0; k < p->classes.size(); ++k) {
        const auto& cls = p->classes[k];
        std::vector<std::pair<std::uint64_t, const Items*>> touched;
        for (const auto& [kc, sub] : deep)
            if (kc.first == k) touched.emplace_back(kc.second, &sub);
        if (touched.empty()) {
            classes.push_back(cls);
            continue;
        }
        for (const auto& [copy, sub] : touched) {
            prefix.emplace_back(static_cast<std::uint32_t>(classes.size()), 0);
            PresPtr child = mat_rec(cls.child, locs, *sub, prefix, out);
            prefix.pop_back();
            classes.push_back({Mult::finite(1), child});
        }
        std::uint64_t t = touched.size();
        if (cls.mult.is_omega())
            classes.push_back({Mult::omega(), cls.child});
        else if (cls.mult.count() > t)
            classes.push_back({Mult::finite(cls.mult.count() - t), cls.child});
    }
    return make_pres(p->part, std::move(classes), p->boundary);
}

} // namespace

Materialized materialize_copies(const Presentation& p, const std::vector<Location>& locs) {
    for (const auto& l : locs)
        if (!location_valid(p, l)) throw InputError("invalid location " + l.str());
    Materialized m;
    m.locs.resize(locs.size());
    Items items;
    for (std::size_t i = 0; i < locs.size(); ++i) items.emplace_back(i, 0);
    std::vector<std::pair<std::uint32_t, std::uint64_t>> prefix;
    PresPtr self = std::make_shared<const Presentation>(p);
    m.pres = mat_rec(self, locs, items, prefix, m.locs);
    return m;
}

namespace {

PresPtr del_rec(const PresPtr& p, const std::vector<Location>& locs, const Items& items) {
    std::set<std::string> t0;
    std::map<std::uint32_t, Items> deep;
    for (auto [idx, d] : items) {
        const Location& loc = locs[idx];
        if (loc.path.size() == d)
            t0.insert(loc.name);
        else
            deep[loc.path[d].first].push_back({idx, d + 1});
    }

    FinitePart part = p->part;
    std::erase_if(part.vertices, [&](const std::string& v) { return t0.count(v) > 0; });
    std::erase_if(part.internal_edges, [&](const auto& e) {
        return t0.count(e.first) > 0 || t0.count(e.second) > 0;
    });
    std::erase_if(part.boundary_edges, [&](const auto& e) { return t0.count(e.first) > 0; });

    std::vector<ComponentClass> classes;
    for (std::uint32_t k = 0; k < p->classes.size(); ++k) {
        const auto& cls = p->classes[k];
        PresPtr child = cls.child;
        if (auto it = deep.find(k); it != deep.end()) {
            assert(!cls.mult.is_omega() && cls.mult.count() == 1);
            child = del_rec(child, locs, it->second);
        }
        if (!t0.empty()) child = drop_outer_refs(*child, t0);
        if (cardinality(*child).is_zero()) continue;
        classes.push_back({cls.mult, child});
    }
    return make_pres(std::move(part), std::move(classes), p->boundary);
}

} // namespace

PresPtr delete_in_shape(const Presentation& p, const std::vector<Location>& locs) {
    if (locs.empty()) return std::make_shared<const Presentation>(p);
    Materialized m = materialize_copies(p, locs);
    Items items;
    for (std::size_t i = 0; i < m.locs.size(); ++i) items.emplace_back(i, 0);
    return del_rec(m.pres, m.locs, items);
}

std::vector<ComponentPart> split_components(PresPtr p) {
    const auto& verts = p->part.vertices;
    const std::size_t nv = verts.size();
    if (nv == 0 && p->classes.empty()) return {};

    std::vector<std::vector<ComponentPart>> childparts(p->classes.size());
    bool children_trivial = true;
    for (std::size_t i = 0; i < p->classes.size(); ++i) {
        childparts[i] = split_components(p->classes[i].child);
        children_trivial = children_trivial && childparts[i].size() == 1 &&
                           childparts[i][0].pres.get() == p->classes[i].child.get();
    }

    auto vindex = [&](const std::string& n) {
        return static_cast<int>(std::lower_bound(verts.begin(), verts.end(), n) - verts.begin());
    };

    std::vector<std::pair<std::size_t, std::size_t>> part_nodes;
    for (std::size_t i = 0; i < childparts.size(); ++i)
        for (std::size_t j = 0; j < childparts[i].size(); ++j) part_nodes.emplace_back(i, j);

    Dsu dsu(static_cast<int>(nv + part_nodes.size()));
    for (const auto& [u, v] : p->part.internal_edges) dsu.unite(vindex(u), vindex(v));
    std::vector<std::vector<std::string>> attach(part_nodes.size());
    for (std::size_t n = 0; n < part_nodes.size(); ++n) {
        auto [i, j] = part_nodes[n];
        for (const auto& r : outer_refs(*childparts[i][j].pres))
            if (p->part.has_vertex(r)) attach[n].push_back(r);
        for (const auto& r : attach[n]) dsu.unite(static_cast<int>(nv + n), vindex(r));
    }

    std::map<int, std::pair<std::vector<std::string>, std::vector<std::size_t>>> groups;
    for (std::size_t v = 0; v < nv; ++v) groups[dsu.find(static_cast<int>(v))].first.push_back(verts[v]);
    for (std::size_t n = 0; n < part_nodes.size(); ++n)
        groups[dsu.find(static_cast<int>(nv + n))].second.push_back(n);

    if (groups.size() == 1 && children_trivial && !groups.begin()->second.first.empty())
        return {ComponentPart{p, Mult::finite(1)}};

    std::vector<std::pair<std::string, ComponentPart>> with_locals; // keyed by min vertex
    std::vector<ComponentPart> hoisted;

    for (const auto& [root, grp] : groups) {
        const auto& [locals, parts] = grp;
        if (locals.empty()) {
            // no local attachment: every copy is a component family of its own
            for (std::size_t n : parts) {
                auto [i, j] = part_nodes[n];
                hoisted.push_back(
                    {rebase_boundary(*childparts[i][j].pres, p->boundary),
                     p->classes[i].mult.times(childparts[i][j].count)});
            }
            continue;
        }
        FinitePart fp;
        fp.vertices = locals; // already sorted (verts sorted, groups collect in order)
        std::set<std::string> inset(locals.begin(), locals.end());
        for (const auto& e : p->part.internal_edges)
            if (inset.count(e.first)) fp.internal_edges.push_back(e);
        for (const auto& e : p->part.boundary_edges)
            if (inset.count(e.first)) fp.boundary_edges.push_back(e);
        std::vector<std::string> child_b = p->boundary;
        child_b.insert(child_b.end(), locals.begin(), locals.end());
        std::vector<ComponentClass> classes;
        for (std::size_t n : parts) {
            auto [i, j] = part_nodes[n];
            classes.push_back({p->classes[i].mult.times(childparts[i][j].count),
                               rebase_boundary(*childparts[i][j].pres, child_b)});
        }
        with_locals.emplace_back(
            locals.front(),
            ComponentPart{make_pres(std::move(fp), std::move(classes), p->boundary),
                          Mult::finite(1)});
    }

    std::sort(with_locals.begin(), with_locals.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<ComponentPart> out;
    for (auto& [key, part] : with_locals) out.push_back(std::move(part));
    for (auto& part : hoisted) out.push_back(std::move(part));
    return out;
}

std::vector<ComponentPart> delete_locations(const Presentation& p, std::vector<Location> locs) {
    if (!p.boundary.empty()) throw InputError("delete_locations needs a top-level presentation");
    sort_unique(locs);
    for (const auto& l : locs)
        if (!location_valid(p, l)) throw InputError("invalid location " + l.str());
    return split_components(delete_in_shape(p, locs));
}

namespace {

struct PromCtx {
    std::map<Location, std::string> prom_at; // materialized location -> new name
    std::vector<std::pair<std::string, std::string>> inner;
    std::vector<std::pair<std::string, std::string>> outer;
    std::set<std::string> original_boundary;
};

struct PromFrame {
    const Presentation* level;
    std::map<std::string, std::string> prom; // promoted local -> new name
};

struct PendingEdge {
    std::size_t frame; // index of the frame whose level hosts the edge
    std::string local;
    std::string prom;
};

void collect_name_counts(const Presentation& p, std::map<std::string, int>& out) {
    for (const auto& v : p.part.vertices) ++out[v];
    for (const auto& c : p.classes) collect_name_counts(*c.child, out);
}

PresPtr prom_rec(const PresPtr& p, std::vector<std::pair<std::uint32_t, std::uint64_t>>& path,
                 std::vector<PromFrame>& frames, PromCtx& ctx,
                 const std::vector<std::string>& scope,
                 std::vector<PendingEdge>& pending_up) {
    std::map<std::string, std::string> prom;
    for (const auto& v : p->part.vertices) {
        auto it = ctx.prom_at.find(Location{path, v});
        if (it != ctx.prom_at.end()) prom[v] = it->second;
    }

    std::vector<std::string> kept;
    for (const auto& v : p->part.vertices)
        if (!prom.count(v)) kept.push_back(v);

    // children first; they may hoist edges onto this level
    frames.push_back({p.get(), prom});
    std::size_t my_frame = frames.size() - 1;
    std::vector<std::string> child_scope = scope;
    child_scope.insert(child_scope.end(), kept.begin(), kept.end());
    std::vector<ComponentClass> classes;
    std::vector<PendingEdge> pending;
    for (std::uint32_t k = 0; k < p->classes.size(); ++k) {
        path.emplace_back(k, 0);
        PresPtr child = prom_rec(p->classes[k].child, path, frames, ctx, child_scope, pending);
        path.pop_back();
        classes.push_back({p->classes[k].mult, child});
    }
    frames.pop_back();

    FinitePart part;
    part.vertices = kept;
    for (const auto& [u, w] : p->part.internal_edges) {
        bool pu = prom.count(u) > 0;
        bool pw = prom.count(w) > 0;
        if (!pu && !pw)
            part.internal_edges.emplace_back(u, w);
        else if (pu && pw)
            ctx.inner.emplace_back(std::min(prom[u], prom[w]), std::max(prom[u], prom[w]));
        else if (pu)
            part.boundary_edges.emplace_back(w, prom[u]);
        else
            part.boundary_edges.emplace_back(u, prom[w]);
    }
    for (const auto& [l, b] : p->part.boundary_edges) {
        int fb = -1;
        for (int i = static_cast<int>(frames.size()) - 1; i >= 0; --i)
            if (frames[i].level->part.has_vertex(b)) {
                fb = i;
                break;
            }
        bool b_prom = fb >= 0 && frames[fb].prom.count(b) > 0;
        if (prom.count(l)) {
            if (b_prom)
                ctx.inner.emplace_back(std::min(prom[l], frames[fb].prom[b]),
                                       std::max(prom[l], frames[fb].prom[b]));
            else if (fb < 0)
                ctx.outer.emplace_back(prom[l], b); // b in the original outer boundary
            else
                pending_up.push_back({static_cast<std::size_t>(fb), b, prom[l]});
        } else {
            part.boundary_edges.emplace_back(l, b_prom ? frames[fb].prom[b] : b);
        }
    }
    // edges hoisted here by descendants
    std::vector<PendingEdge> still_pending;
    for (auto& pe : pending) {
        if (pe.frame == my_frame)
            part.boundary_edges.emplace_back(pe.local, pe.prom);
        else
            still_pending.push_back(pe);
    }
    pending_up.insert(pending_up.end(), still_pending.begin(), still_pending.end());

    return make_pres(std::move(part), std::move(classes), scope);
}

} // namespace

Promoted promote_to_boundary(const Presentation& p, const std::vector<Location>& locs) {
    Materialized m = materialize_copies(p, locs);

    // A promoted vertex frees its own binding, so renormalizing keeps the
    // same names; other bindings of the same name still force a suffix.
    std::map<std::string, int> occ;
    collect_name_counts(*m.pres, occ);
    for (const auto& l : m.locs) --occ[l.name];
    std::set<std::string> taken;
    for (const auto& [n, c] : occ)
        if (c > 0) taken.insert(n);
    taken.insert(p.boundary.begin(), p.boundary.end());

    Promoted out;
    PromCtx ctx;
    ctx.original_boundary.insert(p.boundary.begin(), p.boundary.end());
    std::vector<std::string> prom_names;
    for (std::size_t i = 0; i < locs.size(); ++i) {
        if (ctx.prom_at.count(m.locs[i])) throw InputError("duplicate location to promote");
        std::string base = m.locs[i].name;
        std::string name = base;
        for (int suffix = 2; taken.count(name); ++suffix)
            name = base + "_" + std::to_string(suffix);
        taken.insert(name);
        ctx.prom_at[m.locs[i]] = name;
        prom_names.push_back(name);
        out.names.emplace_back(locs[i], name);
    }

    std::vector<std::string> new_boundary = p.boundary;
    new_boundary.insert(new_boundary.end(), prom_names.begin(), prom_names.end());

    std::vector<std::pair<std::uint32_t, std::uint64_t>> path;
    std::vector<PromFrame> frames;
    std::vector<PendingEdge> pending;
    out.pres = prom_rec(m.pres, path, frames, ctx, new_boundary, pending);
    assert(pending.empty());
    sort_unique(ctx.inner);
    sort_unique(ctx.outer);
    out.inner_edges = std::move(ctx.inner);
    out.outer_edges = std::move(ctx.outer);
    return out;
}

namespace {

template <typename F>
PresPtr mult_surgery(const Presentation& p, const std::vector<std::uint32_t>& path,
                     std::size_t i, F f) {
    if (i >= path.size()) throw InputError("empty class path");
    std::uint32_t k = path[i];
    if (k >= p.classes.size()) throw InputError("class path out of range");
    std::vector<ComponentClass> classes = p.classes;
    if (i + 1 == path.size()) {
        classes[k].mult = f(classes[k].mult);
    } else {
        classes[k].child = mult_surgery(*classes[k].child, path, i + 1, f);
    }
    return make_pres(p.part, std::move(classes), p.boundary);
}

} // namespace

PresPtr add_class_copies(const Presentation& p, const std::vector<std::uint32_t>& class_path, Mult k) {
    if (k.is_zero()) throw InputError("zero multiplicity");
    return mult_surgery(p, class_path, 0, [&](Mult m) { return m.plus(k); });
}

PresPtr remove_class_copies(const Presentation& p, const std::vector<std::uint32_t>& class_path, Mult k) {
    if (k.is_omega()) throw InputError("cannot remove omega copies");
    if (k.is_zero()) throw InputError("zero multiplicity");
    return mult_surgery(p, class_path, 0, [&](Mult m) { return m.minus_finite(k.count()); });
}

PresPtr set_class_mult(const Presentation& p, const std::vector<std::uint32_t>& class_path, Mult m) {
    if (m.is_zero()) throw InputError("zero multiplicity");
    return mult_surgery(p, class_path, 0, [&](Mult) { return m; });
}

void validate(const Presentation& p, bool strict) {
    // reconstruct through the validating maker
    make_pres(p.part, p.classes, p.boundary);
    for (const auto& c : p.classes) {
        if (c.child->boundary.size() != p.boundary.size() + p.part.vertices.size())
            throw InputError("class child boundary chain mismatch");
        validate(*c.child, strict);
        if (strict) {
            auto parts = split_components(c.child);
            if (parts.size() != 1 || parts[0].count != Mult::finite(1))
                throw InputError("strict: class child minus boundary is not connected");
        }
    }
}

} // namespace rpg

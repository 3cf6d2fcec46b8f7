#include "rpg/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace rpg {

namespace {

using Row = std::uint64_t; // adjacency bitset row, cap is 40 vertices

std::vector<Row> adjacency_rows(const FiniteGraph& g) {
    std::vector<Row> rows(g.size(), 0);
    for (auto [i, j] : g.edges) {
        rows[i] |= Row(1) << j;
        rows[j] |= Row(1) << i;
    }
    return rows;
}

struct Matcher {
    const FiniteGraph& g;
    const FiniteGraph& h;
    bool induced;
    bool exact_degrees;
    std::vector<Row> ga, ha;
    std::vector<int> gdeg, hdeg;
    std::vector<int> order; // g vertices, connectivity-first
    std::vector<int> map;   // g index -> h index
    Row used = 0;

    Matcher(const FiniteGraph& g_, const FiniteGraph& h_, bool induced_, bool exact_)
        : g(g_), h(h_), induced(induced_), exact_degrees(exact_) {
        ga = adjacency_rows(g);
        ha = adjacency_rows(h);
        gdeg.assign(g.size(), 0);
        hdeg.assign(h.size(), 0);
        for (std::size_t i = 0; i < g.size(); ++i) gdeg[i] = std::popcount(ga[i]);
        for (std::size_t i = 0; i < h.size(); ++i) hdeg[i] = std::popcount(ha[i]);
        map.assign(g.size(), -1);

        // static order: highest degree first, then prefer vertices adjacent
        // to already ordered ones
        std::vector<char> placed(g.size(), 0);
        for (std::size_t step = 0; step < g.size(); ++step) {
            int best = -1;
            int best_links = -1;
            for (std::size_t v = 0; v < g.size(); ++v) {
                if (placed[v]) continue;
                int links = 0;
                for (int u : order)
                    if (ga[v] >> u & 1) ++links;
                if (best < 0 || links > best_links ||
                    (links == best_links && gdeg[v] > gdeg[best])) {
                    best = static_cast<int>(v);
                    best_links = links;
                }
            }
            placed[best] = 1;
            order.push_back(best);
        }
    }

    bool feasible(int v, int w) const {
        if (exact_degrees ? gdeg[v] != hdeg[w] : gdeg[v] > hdeg[w]) return false;
        for (std::size_t u = 0; u < g.size(); ++u) {
            if (map[u] < 0) continue;
            bool ge = ga[v] >> u & 1;
            bool he = ha[w] >> map[u] & 1;
            if (ge && !he) return false;
            if (induced && !ge && he) return false;
        }
        return true;
    }

    bool run(std::size_t depth) {
        if (depth == order.size()) return true;
        int v = order[depth];
        for (std::size_t w = 0; w < h.size(); ++w) {
            if (used >> w & 1) continue;
            if (!feasible(v, static_cast<int>(w))) continue;
            map[v] = static_cast<int>(w);
            used |= Row(1) << w;
            if (run(depth + 1)) return true;
            used &= ~(Row(1) << w);
            map[v] = -1;
        }
        return false;
    }
};

void check_cap(const FiniteGraph& g, const FiniteGraph& h) {
    if (g.size() > kOracleVertexCap || h.size() > kOracleVertexCap)
        throw OracleCapError("oracle input exceeds " + std::to_string(kOracleVertexCap) +
                             " vertices");
}

std::optional<FiniteMatch> to_match(const Matcher& m) {
    FiniteMatch out;
    for (std::size_t v = 0; v < m.g.size(); ++v)
        out.vmap[m.g.vertices[v]] = m.h.vertices[static_cast<std::size_t>(m.map[v])];
    return out;
}

} // namespace

std::optional<FiniteMatch> finite_embed(const FiniteGraph& g, const FiniteGraph& h, bool induced) {
    check_cap(g, h);
    if (g.size() > h.size()) return std::nullopt;
    Matcher m(g, h, induced, false);
    if (!m.run(0)) return std::nullopt;
    return to_match(m);
}

std::optional<FiniteMatch> finite_iso(const FiniteGraph& g, const FiniteGraph& h) {
    check_cap(g, h);
    if (g.size() != h.size() || g.edges.size() != h.edges.size()) return std::nullopt;
    {
        auto dg = adjacency_rows(g);
        auto dh = adjacency_rows(h);
        std::vector<int> a, b;
        for (auto r : dg) a.push_back(std::popcount(r));
        for (auto r : dh) b.push_back(std::popcount(r));
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b) return std::nullopt;
    }
    Matcher m(g, h, true, true);
    if (!m.run(0)) return std::nullopt;
    return to_match(m);
}

std::vector<FiniteGraph> finite_components(const FiniteGraph& g) {
    std::vector<int> comp(g.size(), -1);
    auto adj = g.adjacency();
    int nc = 0;
    for (std::size_t s = 0; s < g.size(); ++s) {
        if (comp[s] >= 0) continue;
        std::vector<std::size_t> stack{s};
        comp[s] = nc;
        while (!stack.empty()) {
            auto v = stack.back();
            stack.pop_back();
            for (auto u : adj[v])
                if (comp[u] < 0) {
                    comp[u] = nc;
                    stack.push_back(u);
                }
        }
        ++nc;
    }
    std::vector<FiniteGraph> out(nc);
    std::vector<std::uint32_t> remap(g.size());
    for (std::size_t v = 0; v < g.size(); ++v) {
        remap[v] = static_cast<std::uint32_t>(out[comp[v]].vertices.size());
        out[comp[v]].vertices.push_back(g.vertices[v]); // stays sorted per component
    }
    for (auto [i, j] : g.edges)
        out[comp[i]].edges.emplace_back(remap[i], remap[j]);
    for (auto& c : out) std::sort(c.edges.begin(), c.edges.end());
    return out;
}

FiniteGraph remove_finite_vertices(const FiniteGraph& g, const std::vector<Location>& drop) {
    FiniteGraph out;
    std::vector<int> remap(g.size(), -1);
    for (std::size_t v = 0; v < g.size(); ++v) {
        if (std::find(drop.begin(), drop.end(), g.vertices[v]) != drop.end()) continue;
        remap[v] = static_cast<int>(out.vertices.size());
        out.vertices.push_back(g.vertices[v]);
    }
    for (auto [i, j] : g.edges)
        if (remap[i] >= 0 && remap[j] >= 0)
            out.edges.emplace_back(static_cast<std::uint32_t>(remap[i]),
                                   static_cast<std::uint32_t>(remap[j]));
    std::sort(out.edges.begin(), out.edges.end());
    return out;
}

namespace {

PresPtr random_pres(std::mt19937_64& rng, const RandomLimits& lim, int depth,
                    const std::vector<std::string>& scope, int& name_counter) {
    std::uniform_int_distribution<int> part_size(depth == 0 ? 0 : 1, lim.max_part);
    int nv = part_size(rng);
    FinitePart part;
    for (int i = 0; i < nv; ++i) part.vertices.push_back("v" + std::to_string(name_counter++));

    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (int i = 0; i < nv; ++i)
        for (int j = i + 1; j < nv; ++j)
            if (coin(rng) < 0.4)
                part.internal_edges.emplace_back(part.vertices[i], part.vertices[j]);
    if (!scope.empty()) {
        for (int i = 0; i < nv; ++i)
            for (const auto& b : scope)
                if (coin(rng) < 0.25) part.boundary_edges.emplace_back(part.vertices[i], b);
    }

    std::vector<ComponentClass> classes;
    if (depth < lim.max_depth) {
        std::uniform_int_distribution<int> nclasses(0, lim.max_classes);
        int nc = nclasses(rng);
        std::vector<std::string> inner = scope;
        std::vector<std::string> sorted = part.vertices;
        std::sort(sorted.begin(), sorted.end());
        inner.insert(inner.end(), sorted.begin(), sorted.end());
        for (int k = 0; k < nc; ++k) {
            std::uniform_int_distribution<int> mpick(0, 2);
            Mult m = Mult::finite(1);
            switch (mpick(rng)) {
                case 0: m = Mult::finite(1); break;
                case 1: m = Mult::finite(2); break;
                default: m = Mult::omega(); break;
            }
            classes.push_back({m, random_pres(rng, lim, depth + 1, inner, name_counter)});
        }
    }
    return make_pres(std::move(part), std::move(classes), scope);
}

} // namespace

GraphTuple random_presentation(std::uint64_t seed, const RandomLimits& limits) {
    std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ull + 0xd1b54a32d192ed03ull);
    int counter = 0;
    PresPtr p = random_pres(rng, limits, 0, {}, counter);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::vector<std::string> x;
    for (const auto& v : p->part.vertices)
        if (coin(rng) < 0.3) x.push_back(v);
    return make_tuple(std::move(p), std::move(x));
}

} // namespace rpg

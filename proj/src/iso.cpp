#include "rpg/iso.hpp"

#include <algorithm>
#include <set>

#include "rpg/canon.hpp"
#include "rpg/components.hpp"

namespace rpg {

namespace {

bool has_edge(const Presentation& p, const std::string& a, const std::string& b) {
    auto key = std::make_pair(std::min(a, b), std::max(a, b));
    return std::binary_search(p.part.internal_edges.begin(), p.part.internal_edges.end(), key);
}

bool has_bedge(const Presentation& p, const std::string& l, const std::string& b) {
    auto key = std::make_pair(l, b);
    return std::binary_search(p.part.boundary_edges.begin(), p.part.boundary_edges.end(), key);
}

// Complete matcher for one normalized level and below, relative to an outer
// name correspondence. Vertices are tried in sorted order, so results are
// deterministic.
struct PartMatcher {
    const Presentation& a;
    const Presentation& b;
    const std::map<std::string, std::string>& outer; // a outer name -> b outer name
    const std::set<std::string>* xa = nullptr;
    const std::set<std::string>* xb = nullptr;

    std::map<std::string, std::string> sigma;
    std::set<std::string> used;

    std::optional<IsoWitness> run() {
        if (a.part.vertices.size() != b.part.vertices.size()) return std::nullopt;
        if (a.part.internal_edges.size() != b.part.internal_edges.size()) return std::nullopt;
        if (a.classes.size() != b.classes.size()) return std::nullopt;
        return extend(0);
    }

    bool compatible(const std::string& v, const std::string& w) const {
        if (xa && xa->count(v) != xb->count(w)) return false;
        for (const auto& [u, img] : sigma) {
            if (has_edge(a, v, u) != has_edge(b, w, img)) return false;
        }
        // boundary attachments must agree through the outer correspondence
        for (const auto& [l, bd] : a.part.boundary_edges)
            if (l == v && !has_bedge(b, w, outer.at(bd))) return false;
        std::size_t cnt_a = 0;
        std::size_t cnt_b = 0;
        for (const auto& [l, bd] : a.part.boundary_edges)
            if (l == v) ++cnt_a;
        for (const auto& [l, bd] : b.part.boundary_edges)
            if (l == w) ++cnt_b;
        return cnt_a == cnt_b;
    }

    std::optional<IsoWitness> extend(std::size_t i) {
        if (i == a.part.vertices.size()) return finish();
        const std::string& v = a.part.vertices[i];
        for (const auto& w : b.part.vertices) {
            if (used.count(w) || !compatible(v, w)) continue;
            sigma[v] = w;
            used.insert(w);
            auto res = extend(i + 1);
            if (res) return res;
            sigma.erase(v);
            used.erase(w);
        }
        return std::nullopt;
    }

    std::optional<IsoWitness> finish() {
        // aligned labelings: identical indices through outer ∪ sigma
        LabelMap la;
        LabelMap lb;
        int idx = 0;
        for (const auto& nm : a.boundary) {
            la[nm] = idx;
            lb[outer.at(nm)] = idx;
            ++idx;
        }
        for (const auto& v : a.part.vertices) {
            la[v] = idx;
            lb[sigma.at(v)] = idx;
            ++idx;
        }

        std::vector<std::string> codes_b(b.classes.size());
        for (std::size_t j = 0; j < b.classes.size(); ++j)
            codes_b[j] = code_rel(*b.classes[j].child, lb);

        IsoWitness w;
        w.eta = sigma;
        std::vector<bool> taken(b.classes.size(), false);
        for (std::size_t i = 0; i < a.classes.size(); ++i) {
            std::string code = code_rel(*a.classes[i].child, la);
            bool matched = false;
            for (std::size_t j = 0; j < b.classes.size(); ++j) {
                if (taken[j] || a.classes[i].mult != b.classes[j].mult || codes_b[j] != code)
                    continue;
                std::map<std::string, std::string> sub_outer = outer;
                for (const auto& [v, img] : sigma) sub_outer[v] = img;
                PartMatcher sub{*a.classes[i].child, *b.classes[j].child, sub_outer, nullptr, nullptr, {}, {}};
                auto child_w = sub.run();
                if (!child_w) continue; // equal codes imply a witness; stay safe
                taken[j] = true;
                w.class_bijection.emplace_back(i, j);
                w.children.push_back(std::move(*child_w));
                matched = true;
                break;
            }
            if (!matched) return std::nullopt;
        }
        return w;
    }
};

} // namespace

std::optional<IsoWitness> iso_tuples(const GraphTuple& g, const GraphTuple& h) {
    GraphTuple ng = normalize(g);
    GraphTuple nh = normalize(h);
    std::set<std::string> xg(ng.x.begin(), ng.x.end());
    std::set<std::string> xh(nh.x.begin(), nh.x.end());
    if (xg.size() != xh.size()) return std::nullopt;
    std::map<std::string, std::string> outer;
    PartMatcher m{*ng.pres, *nh.pres, outer, &xg, &xh, {}, {}};
    return m.run();
}

} // namespace rpg

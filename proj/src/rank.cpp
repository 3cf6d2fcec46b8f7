#include "rpg/rank.hpp"

#include <algorithm>
#include <cassert>
#include <map>

#include "rpg/components.hpp"
#include "rpg/realize.hpp"

namespace rpg {

namespace {

std::map<std::string, RankValue>& rank_memo() {
    static std::map<std::string, RankValue> memo;
    return memo;
}

} // namespace

RankValue rank_of(const Presentation& p) {
    PresPtr ps = outer_refs(p).empty() && p.boundary.empty()
                     ? std::make_shared<const Presentation>(p)
                     : strip_boundary(p);
    auto& memo = rank_memo();
    auto it = memo.find(ps->struct_key());
    if (it != memo.end()) return it->second;

    RankValue result = 0;
    if (!cardinality(*ps).is_omega()) {
        result = 0;
    } else {
        std::set<std::string> top(ps->part.vertices.begin(), ps->part.vertices.end());
        RankValue rho = 0;
        Mult n_rho = Mult::finite(0);
        for (const auto& cls : ps->classes) {
            PresPtr child = drop_outer_refs(*cls.child, top);
            for (const auto& part : split_components(child)) {
                RankValue r = rank_of(*part.pres);
                Mult cnt = cls.mult.times(part.count);
                if (r > rho) {
                    rho = r;
                    n_rho = cnt;
                } else if (r == rho) {
                    n_rho = n_rho.plus(cnt);
                }
            }
        }
        if (n_rho.is_omega()) {
            result = rho + 1;
        } else {
            // an infinite graph always has omega many components at rank 0
            assert(rho >= 1);
            result = rho;
        }
    }
    memo.emplace(ps->struct_key(), result);
    return result;
}

namespace {

// Finite witness superset: the top finite part plus, through finite-mult
// chains only, every deeper finite part. The kernel cannot meet copies of an
// omega class (it is unique, hence invariant under permuting the copies).
void kernel_candidates(const Presentation& p,
                       std::vector<std::pair<std::uint32_t, std::uint64_t>>& prefix,
                       std::vector<Location>& out) {
    for (const auto& v : p.part.vertices) out.push_back(Location{prefix, v});
    for (std::uint32_t k = 0; k < p.classes.size(); ++k) {
        const auto& cls = p.classes[k];
        if (cls.mult.is_omega()) continue;
        for (std::uint64_t c = 0; c < cls.mult.count(); ++c) {
            prefix.emplace_back(k, c);
            kernel_candidates(*cls.child, prefix, out);
            prefix.pop_back();
        }
    }
}

bool witnesses(const Presentation& p, const std::vector<Location>& s, RankValue r) {
    for (const auto& part : delete_locations(p, s))
        if (rank_of(*part.pres) >= r) return false;
    return true;
}

} // namespace

KernelResult kernel(const Presentation& p) {
    if (!p.boundary.empty()) throw InputError("kernel needs a top-level presentation");
    RankValue r = rank_of(p);
    if (r == 0) return {{}, 0};

    std::vector<Location> s;
    std::vector<std::pair<std::uint32_t, std::uint64_t>> prefix;
    kernel_candidates(p, prefix, s);
    std::sort(s.begin(), s.end());
    assert(witnesses(p, s, r));

    // single in-order removal pass reaches the unique minimal witness
    for (std::size_t i = 0; i < s.size();) {
        std::vector<Location> t = s;
        t.erase(t.begin() + static_cast<std::ptrdiff_t>(i));
        if (witnesses(p, t, r))
            s = std::move(t);
        else
            ++i;
    }
    return {std::move(s), r};
}

std::vector<Location> x_locations(const GraphTuple& t) {
    std::vector<Location> out;
    for (const auto& v : t.x) out.push_back(Location{{}, v});
    return out;
}

bool is_connected_tuple(const GraphTuple& t) {
    Mult total = Mult::finite(0);
    for (const auto& part : delete_locations(*t.pres, x_locations(t))) {
        total = total.plus(part.count);
        if (total > Mult::finite(1)) return false;
    }
    return true;
}

} // namespace rpg

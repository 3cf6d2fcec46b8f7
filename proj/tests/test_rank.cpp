#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rpg/components.hpp"
#include "rpg/parse.hpp"
#include "rpg/rank.hpp"
#include "rpg/realize.hpp"

#include "fixtures.hpp"

using namespace rpg;

namespace {

GraphTuple T(const char* s) { return parse_tuple(s); }

// Wrap a component list back into one presentation over the empty boundary.
PresPtr rewrap(const std::vector<ComponentPart>& parts) {
    std::vector<ComponentClass> classes;
    for (const auto& part : parts) classes.push_back({part.count, part.pres});
    return make_pres(FinitePart{}, std::move(classes), {});
}

// Definitional check that rank is at most 1: some subset of the top finite
// part separates the graph into finite components.
bool rank_at_most_one_by_definition(const Presentation& p) {
    const auto& verts = p.part.vertices;
    for (std::uint64_t mask = 0; mask < (1ull << verts.size()); ++mask) {
        std::vector<Location> s;
        for (std::size_t i = 0; i < verts.size(); ++i)
            if (mask & (1ull << i)) s.push_back(Location{{}, verts[i]});
        bool all_finite = true;
        for (const auto& part : delete_locations(p, s))
            if (cardinality(*part.pres).is_omega()) all_finite = false;
        if (all_finite) return true;
    }
    return false;
}

} // namespace

TEST_CASE("rank of paper fixtures") {
    CHECK(rank_of(*T(fx::kTriangle).pres) == 0);
    CHECK(rank_of(*T(fx::kInfStar).pres) == 1);
    CHECK(rank_of(*T(fx::kOmegaStars).pres) == 2);
    CHECK(rank_of(*T(fx::kSpiderT).pres) == 1);
    CHECK(rank_of(*T(fx::kSpiderTPrime).pres) == 1);
}

TEST_CASE("rank of K_{2,inf} agrees with the definitional oracle") {
    GraphTuple k2 = T(fx::kK2Inf);
    CHECK(cardinality(*k2.pres).is_omega()); // so rank >= 1
    CHECK(rank_at_most_one_by_definition(*k2.pres));
    CHECK(rank_of(*k2.pres) == 1);
    CHECK(rank_of(*T(fx::kK2InfMinusE).pres) == 1);
}

TEST_CASE("kernel fixtures") {
    KernelResult star = kernel(*T(fx::kInfStar).pres);
    REQUIRE(star.locations.size() == 1);
    CHECK(star.locations[0] == Location{{}, "c"});
    CHECK(star.witness_rank == 1);

    CHECK(kernel(*T(fx::kOmegaStars).pres).locations.empty());
    CHECK(kernel(*T(fx::kTriangle).pres).locations.empty());

    KernelResult k2 = kernel(*T(fx::kK2Inf).pres);
    REQUIRE(k2.locations.size() == 2);
    CHECK(k2.locations[0] == Location{{}, "a"});
    CHECK(k2.locations[1] == Location{{}, "b"});
}

TEST_CASE("kernel of K_{2,inf} via exhaustive subset check") {
    // no strict subset of {a,b} leaves only components of rank < 1
    GraphTuple k2 = T(fx::kK2Inf);
    auto leaves_small = [&](std::vector<Location> s) {
        for (const auto& part : delete_locations(*k2.pres, s))
            if (rank_of(*part.pres) >= 1) return false;
        return true;
    };
    CHECK(leaves_small({Location{{}, "a"}, Location{{}, "b"}}));
    CHECK(!leaves_small({Location{{}, "a"}}));
    CHECK(!leaves_small({Location{{}, "b"}}));
    CHECK(!leaves_small({}));
}

TEST_CASE("kernel vertices may sit below the top level") {
    // single mult-1 class holding an infinite star: kernel is the nested center
    GraphTuple nested = T(
        "(graph (vertices) (class (mult 1) (graph (vertices c)"
        " (class (mult w) (graph (vertices l) (edges (l c)))))))");
    KernelResult k = kernel(*nested.pres);
    REQUIRE(k.locations.size() == 1);
    CHECK(k.locations[0] == Location{{{0, 0}}, "c"});

    // two disjoint stars with finite multiplicity: one center per copy
    GraphTuple twin_stars = T(
        "(graph (vertices) (class (mult 2) (graph (vertices c)"
        " (class (mult w) (graph (vertices l) (edges (l c)))))))");
    KernelResult k2 = kernel(*twin_stars.pres);
    REQUIRE(k2.locations.size() == 2);
    CHECK(k2.locations[0] == Location{{{0, 0}}, "c"});
    CHECK(k2.locations[1] == Location{{{0, 1}}, "c"});
}

TEST_CASE("kernel is a minimal witness") {
    for (const char* src : {fx::kInfStar, fx::kK2Inf, fx::kK2InfMinusE, fx::kSpiderT, fx::kOmegaStars}) {
        GraphTuple t = T(src);
        RankValue r = rank_of(*t.pres);
        KernelResult k = kernel(*t.pres);
        CHECK(k.witness_rank == r);
        for (const auto& part : delete_locations(*t.pres, k.locations))
            CHECK(rank_of(*part.pres) < r);
        for (std::size_t i = 0; i < k.locations.size(); ++i) {
            std::vector<Location> sub = k.locations;
            sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(i));
            bool witness = true;
            for (const auto& part : delete_locations(*t.pres, sub))
                if (rank_of(*part.pres) >= r) witness = false;
            CHECK(!witness);
        }
    }
}

TEST_CASE("finite deletion invariance") {
    for (const char* src : {fx::kInfStar, fx::kK2Inf, fx::kK2InfMinusE, fx::kSpiderT, fx::kOmegaStars}) {
        GraphTuple t = T(src);
        RankValue r = rank_of(*t.pres);
        std::vector<std::vector<Location>> samples = {
            {},
            {Location{{}, t.pres->part.vertices.empty() ? "c" : t.pres->part.vertices[0]}},
        };
        if (!t.pres->classes.empty())
            samples.push_back({Location{{{0, 0}}, t.pres->classes[0].child->part.vertices[0]}});
        for (auto& s : samples) {
            for (auto& loc : s)
                if (!location_valid(*t.pres, loc)) continue;
            bool ok = true;
            for (const auto& loc : s)
                if (!location_valid(*t.pres, loc)) ok = false;
            if (!ok) continue;
            CHECK(rank_of(*rewrap(delete_locations(*t.pres, s))) == r);
        }
    }
}

TEST_CASE("subgraph monotonicity over class children") {
    for (const char* src : {fx::kInfStar, fx::kK2Inf, fx::kOmegaStars, fx::kSpiderT}) {
        GraphTuple t = T(src);
        RankValue r = rank_of(*t.pres);
        for (const auto& c : t.pres->classes) CHECK(rank_of(*c.child) <= r);
        CHECK(r <= std::max(nesting_depth(*t.pres), 0));
    }
}

TEST_CASE("connected infinite graphs have nonempty kernels") {
    for (const char* src : {fx::kInfStar, fx::kK2Inf, fx::kK2InfMinusE, fx::kSpiderT}) {
        GraphTuple t = T(src);
        REQUIRE(is_connected_tuple(GraphTuple{t.pres, {}}));
        CHECK(!kernel(*t.pres).locations.empty());
    }
}

TEST_CASE("tuple connectivity") {
    GraphTuple star = T(fx::kInfStar);
    CHECK(is_connected_tuple(star));
    CHECK(!is_connected_tuple(GraphTuple{star.pres, {"c"}}));
    CHECK(!is_connected_tuple(T(fx::kOmegaStars)));
}

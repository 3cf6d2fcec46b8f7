#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rpg/components.hpp"
#include "rpg/parse.hpp"
#include "rpg/realize.hpp"

#include "fixtures.hpp"

using namespace rpg;

namespace {

GraphTuple T(const char* s) { return parse_tuple(s); }

std::vector<int> degree_sequence(const FiniteGraph& g) {
    std::vector<int> deg(g.size(), 0);
    for (auto [i, j] : g.edges) {
        ++deg[i];
        ++deg[j];
    }
    std::sort(deg.begin(), deg.end());
    return deg;
}

} // namespace

TEST_CASE("parse fixtures and reject malformed input") {
    GraphTuple star = T(fx::kInfStar);
    CHECK(star.x.empty());
    CHECK(star.pres->part.vertices == std::vector<std::string>{"c"});
    REQUIRE(star.pres->classes.size() == 1);
    CHECK(star.pres->classes[0].mult.is_omega());

    GraphTuple k2 = T(fx::kK2Inf);
    CHECK(k2.pres->part.vertices == std::vector<std::string>{"a", "b"});
    CHECK(k2.pres->classes[0].child->part.boundary_edges ==
          std::vector<std::pair<std::string, std::string>>{{"u", "a"}, {"u", "b"}});

    CHECK_THROWS_WITH_AS(T("(graph (vertices a) (edges (a zzz)))"),
                         doctest::Contains("unbound name zzz"), ParseError);
    CHECK_THROWS_AS(T("(graph (vertices a a))"), ParseError);
    CHECK_THROWS_AS(T("(graph (vertices a) (class (mult 0) (graph (vertices b))))"), ParseError);
    CHECK_THROWS_AS(T("(graph (vertices a) (edges (a a)))"), ParseError);
    CHECK_THROWS_AS(T("(graph (vertices a)"), ParseError);
    // an edge may not join two enclosing-scope names
    CHECK_THROWS_AS(T("(graph (vertices a b) (class (mult 1) (graph (vertices u) (edges (a b)))))"),
                    ParseError);
}

TEST_CASE("serialize round trip") {
    for (const char* src : {fx::kInfStar, fx::kK2Inf, fx::kK2InfMinusE, fx::kOmegaStars,
                            fx::kSpiderT, fx::kSpiderTPrime, fx::kTriangle, fx::kNestedStar}) {
        GraphTuple t = T(src);
        GraphTuple back = parse_tuple(serialize_tuple(t));
        CHECK(*back.pres == *t.pres);
        CHECK(back.x == t.x);
        GraphTuple again = parse_tuple(serialize_pres(*t.pres));
        CHECK(*again.pres == *t.pres);
    }
}

TEST_CASE("truncate fixtures") {
    FiniteGraph s3 = truncate(*T(fx::kInfStar).pres, 3);
    CHECK(s3.size() == 4);
    CHECK(degree_sequence(s3) == std::vector<int>{1, 1, 1, 3});

    FiniteGraph k22 = truncate(*T(fx::kK2Inf).pres, 2);
    CHECK(k22.size() == 4);
    CHECK(k22.edges.size() == 4);
    CHECK(degree_sequence(k22) == std::vector<int>{2, 2, 2, 2});

    // omega union of omega stars at n=2: two disjoint K_{1,2}
    FiniteGraph u = truncate(*T(fx::kOmegaStars).pres, 2);
    CHECK(u.size() == 6);
    CHECK(u.edges.size() == 4);
    CHECK(degree_sequence(u) == std::vector<int>{1, 1, 1, 1, 2, 2});
}

TEST_CASE("monotone truncation") {
    for (const char* src : {fx::kInfStar, fx::kK2Inf, fx::kK2InfMinusE, fx::kOmegaStars, fx::kSpiderT}) {
        const auto p = T(src).pres;
        for (std::uint64_t m = 1; m <= 3; ++m) {
            FiniteGraph a = truncate(*p, m);
            FiniteGraph b = truncate(*p, m + 1);
            for (const auto& v : a.vertices) CHECK(b.index_of(v) >= 0);
            // induced: edges restricted to a's vertices agree
            std::size_t kept = 0;
            for (auto [i, j] : b.edges)
                if (a.index_of(b.vertices[i]) >= 0 && a.index_of(b.vertices[j]) >= 0) ++kept;
            CHECK(kept == a.edges.size());
        }
    }
}

TEST_CASE("cardinality") {
    CHECK(cardinality(*T(fx::kTriangle).pres) == Mult::finite(3));
    CHECK(cardinality(*T(fx::kInfStar).pres).is_omega());
    GraphTuple five = T("(graph (vertices c) (class (mult 5) (graph (vertices l) (edges (l c)))))");
    CHECK(cardinality(*five.pres) == Mult::finite(6));
}

TEST_CASE("delete center of the infinite star") {
    GraphTuple star = T(fx::kInfStar);
    auto parts = delete_locations(*star.pres, {Location{{}, "c"}});
    REQUIRE(parts.size() == 1);
    CHECK(parts[0].count.is_omega());
    CHECK(parts[0].pres->part.vertices == std::vector<std::string>{"l"});
    CHECK(parts[0].pres->classes.empty());
    CHECK(parts[0].pres->part.internal_edges.empty());
}

TEST_CASE("delete nothing from a connected presentation") {
    GraphTuple k2 = T(fx::kK2Inf);
    auto parts = delete_locations(*k2.pres, {});
    REQUIRE(parts.size() == 1);
    CHECK(parts[0].count == Mult::finite(1));
    CHECK(*parts[0].pres == *k2.pres);
}

TEST_CASE("delete a from K_{2,inf} leaves the star at b") {
    GraphTuple k2 = T(fx::kK2Inf);
    auto parts = delete_locations(*k2.pres, {Location{{}, "a"}});
    REQUIRE(parts.size() == 1);
    CHECK(parts[0].count == Mult::finite(1));
    const Presentation& q = *parts[0].pres;
    CHECK(q.part.vertices == std::vector<std::string>{"b"});
    REQUIRE(q.classes.size() == 1);
    CHECK(q.classes[0].mult.is_omega());
    CHECK(q.classes[0].child->part.boundary_edges ==
          std::vector<std::pair<std::string, std::string>>{{"u", "b"}});
}

TEST_CASE("deleting a deep location materializes its copy") {
    GraphTuple k2 = T(fx::kK2Inf);
    // remove one leaf copy
    auto parts = delete_locations(*k2.pres, {Location{{{0, 3}}, "u"}});
    REQUIRE(parts.size() == 1);
    FiniteGraph before = truncate(*k2.pres, 4);
    FiniteGraph after = truncate(*parts[0].pres, 3);
    CHECK(after.size() == before.size() - 1);
}

TEST_CASE("class copy arithmetic") {
    GraphTuple five = T("(graph (vertices c) (class (mult 1) (graph (vertices l) (edges (l c)))))");
    PresPtr p2 = add_class_copies(*five.pres, {0}, Mult::finite(1));
    CHECK(p2->classes[0].mult == Mult::finite(2));

    GraphTuple star = T(fx::kInfStar);
    PresPtr still = remove_class_copies(*star.pres, {0}, Mult::finite(3));
    CHECK(still->classes[0].mult.is_omega());

    CHECK_THROWS_AS(remove_class_copies(*p2, {0}, Mult::finite(2)), std::invalid_argument);
    CHECK_THROWS_AS(add_class_copies(*p2, {5}, Mult::finite(1)), InputError);
}

TEST_CASE("adding a pendant class to K_{2,inf}") {
    GraphTuple g = T(fx::kK2InfMinusE);
    PresPtr more = add_class_copies(*g.pres, {1}, Mult::finite(1));
    CHECK(more->classes[1].mult == Mult::finite(2));
    FiniteGraph t = truncate(*more, 2);
    // 2 common leaves + 2 pendants + a,b
    CHECK(t.size() == 6);
    CHECK(t.edges.size() == 6);
}

TEST_CASE("locations_adjacent") {
    GraphTuple k2 = T(fx::kK2Inf);
    Location a{{}, "a"};
    Location b{{}, "b"};
    Location u0{{{0, 0}}, "u"};
    Location u1{{{0, 1}}, "u"};
    CHECK(locations_adjacent(*k2.pres, u0, a));
    CHECK(locations_adjacent(*k2.pres, a, u0));
    CHECK(locations_adjacent(*k2.pres, u1, b));
    CHECK(!locations_adjacent(*k2.pres, a, b));
    CHECK(!locations_adjacent(*k2.pres, u0, u1));
    CHECK(!locations_adjacent(*k2.pres, u0, u0));
    CHECK(location_valid(*k2.pres, u1));
    CHECK(!location_valid(*k2.pres, Location{{{1, 0}}, "u"}));
}

TEST_CASE("validate accepts fixtures, strict flags disconnected children") {
    for (const char* src : {fx::kInfStar, fx::kK2Inf, fx::kOmegaStars, fx::kSpiderT})
        CHECK_NOTHROW(validate(*T(src).pres, false));
    // class child splitting into two pieces is fine raw, rejected in strict mode
    GraphTuple raw = T(
        "(graph (vertices c) (class (mult w) (graph (vertices p q) (edges (p c) (q c)))))");
    CHECK_NOTHROW(validate(*raw.pres, false));
    CHECK_THROWS_AS(validate(*raw.pres, true), InputError);
}

TEST_CASE("dot export") {
    FiniteGraph g = truncate(*T(fx::kInfStar).pres, 2);
    std::string dot = to_dot(g);
    CHECK(dot.find("graph {") == 0);
    CHECK(dot.find("\"c\" -- \"0:0/l\"") != std::string::npos);
}

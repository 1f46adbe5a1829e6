#include "doctest.h"
#include "fixtures.hpp"
#include "helpers.hpp"

#include "prodrel/errors.hpp"
#include "prodrel/hull.hpp"

using namespace prodrel;
using namespace testing;

TEST_CASE("enumerate_feasible_points") {
    auto p = fixtures::toy_half();
    auto pts = enumerate_feasible_points(p, p.variables());
    REQUIRE(pts.size() == 3);
    CHECK(pts[0].bits == std::vector<int>{0, 0});
    CHECK(pts[1].bits == std::vector<int>{0, 1});
    CHECK(pts[2].bits == std::vector<int>{1, 0});

    auto empty = poly("vars: x1 x2\n1 1 <= -1\n");
    CHECK(enumerate_feasible_points(empty, empty.variables()).empty());

    std::vector<std::string> many;
    for (int i = 0; i < 25; ++i)
        many.push_back("x" + std::to_string(i));
    CHECK_THROWS_AS(enumerate_feasible_points(HPolyhedron(many), many), CapacityError);
}

TEST_CASE("enumerate_feasible_points: mixed witnesses") {
    auto p = fixtures::tiny_cfl();
    auto pts = enumerate_feasible_points(p, std::vector<std::string>{"y1", "y2"});
    REQUIRE(pts.size() == 3);
    CHECK(pts[0].bits == std::vector<int>{0, 1});
    CHECK(pts[1].bits == std::vector<int>{1, 0});
    CHECK(pts[2].bits == std::vector<int>{1, 1});
    auto split = split_variables(p, std::vector<std::string>{"y1", "y2"});
    for (const auto& a : pts)
        CHECK(fix_integers(p, split, a.bits).satisfies(a.fractional));
}

TEST_CASE("canonical_product_relaxation: pure") {
    auto p = fixtures::toy_half();
    auto vp = canonical_product_relaxation(p, p.variables());
    CHECK(vp.labels() == std::vector<std::string>{"{1}", "{2}", "{1,2}"});
    REQUIRE(vp.size() == 3);
    CHECK(vp.vertices()[0] == vec({"0", "0", "0"}));
    CHECK(vp.vertices()[1] == vec({"0", "1", "0"}));
    CHECK(vp.vertices()[2] == vec({"1", "0", "0"}));

    auto single = poly("vars: x1 x2\n1 0 == 1\n0 1 == 1\n");
    auto one = canonical_product_relaxation(single, single.variables());
    REQUIRE(one.size() == 1);
    CHECK(one.vertices()[0] == vec({"1", "1", "1"}));

    auto none = poly("vars: x1 x2\n0 0 <= -1\n");
    CHECK(canonical_product_relaxation(none, none.variables()).empty());

    auto k = fixtures::knapsack3();
    CHECK(canonical_product_relaxation(k, k.variables()).size() ==
          enumerate_feasible_points(k, k.variables()).size());
}

TEST_CASE("canonical_product_relaxation: mixed") {
    auto p = poly("vars: x w\n-1 1 <= 0\n0 -1 <= 0\n1 0 <= 1\n-1 0 <= 0\n");
    auto vp = canonical_product_relaxation(p, std::vector<std::string>{"x"});
    // (d_w + 1) 2^d_x - 1 coordinates.
    CHECK(vp.labels() == std::vector<std::string>{"{}*w[1]", "{1}", "{1}*w[1]"});
    REQUIRE(vp.size() == 3);
    CHECK(vp.vertices()[0] == vec({"0", "0", "0"}));
    CHECK(vp.vertices()[1] == vec({"0", "1", "0"}));
    CHECK(vp.vertices()[2] == vec({"1", "1", "1"}));
}

TEST_CASE("in_hull") {
    auto p = fixtures::toy_half();
    auto vp = canonical_product_relaxation(p, p.variables());
    for (const auto& v : vp.vertices())
        CHECK(in_hull(v, vp));
    CHECK(in_hull(vec({"1/2", "1/2", "0"}), vp));
    CHECK(in_hull(vec({"1/3", "1/3", "0"}), vp));
    CHECK_FALSE(in_hull(vec({"1", "1", "1"}), vp));
    CHECK_FALSE(in_hull(vec({"0", "0", "1/10"}), vp));
    CHECK_THROWS_AS(in_hull(vec({"0", "0"}), vp), InputError);
    CHECK_FALSE(in_hull(vec({"0"}), VPolytope({"a"})));
}

TEST_CASE("is_conflicting") {
    auto p = fixtures::toy_half();
    auto vp = canonical_product_relaxation(p, p.variables());
    CHECK_FALSE(is_conflicting({vec({"1", "1", "1"})}, vp).has_value());

    // Midpoint (1/2, 0, 0) is on an edge of D-hat.
    std::vector<std::vector<Rational>> s{vec({"1", "-1", "1/2"}), vec({"0", "1", "-1/2"})};
    auto w = is_conflicting(s, vp);
    REQUIRE(w.has_value());
    std::string why;
    CHECK_MESSAGE(verify_conflict_witness(s, vp, *w, &why), why);

    std::vector<std::vector<Rational>> far{vec({"1", "1", "1"}), vec({"1", "1", "2"})};
    CHECK_FALSE(is_conflicting(far, vp).has_value());

    CHECK_THROWS_AS(is_conflicting({vec({"0", "0", "0"}), vec({"1", "1", "1"})}, vp), PreconditionError);

    ConflictWitness bad = *w;
    bad.mu[0] += 1;
    CHECK_FALSE(verify_conflict_witness(s, vp, bad));
}

TEST_CASE("enumerate_vertices and hull_h_representation") {
    auto sq = poly("vars: a b\n1 0 <= 1\n0 1 <= 1\n-1 0 <= 0\n0 -1 <= 0\n1 1 <= 3/2\n");
    auto v = enumerate_vertices(sq);
    CHECK(v.size() == 5);
    VPolytope vp({"a", "b"});
    for (auto& x : v)
        vp.add_vertex(x);
    CHECK(same_set(hull_h_representation(vp, {"a", "b"}), sq));
    CHECK(enumerate_vertices(poly("vars: a\n1 <= 0\n-1 <= -1\n")).empty());
}

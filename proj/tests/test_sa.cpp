#include "doctest.h"
#include "fixtures.hpp"
#include "helpers.hpp"

#include "prodrel/errors.hpp"
#include "prodrel/lp.hpp"
#include "prodrel/sherali_adams.hpp"

using namespace prodrel;
using namespace testing;

namespace {

bool has_row(const HPolyhedron& p, const Row& want) {
    Row w = normalize_row(want);
    for (const auto& r : p.rows())
        if (normalize_row(r) == w)
            return true;
    return false;
}

} // namespace

TEST_CASE("sa_lift: level 1 hand linearization") {
    auto p = fixtures::toy_half();
    auto l = sa_lift(p, p.variables(), 1);
    REQUIRE(l.lifted_vars == std::vector<std::string>{"z{1,2}"});
    // (x1 + x2 - 3/2) x1 -> x1 + z12 - 3/2 x1 <= 0, i.e. z12 <= x1/2.
    Row r{vec({"-1/2", "0", "1"}), Relation::LessEqual, Rational(0)};
    CHECK(has_row(l.system, r));
    // x1 <= 1 times x1 is 0 <= 0 and must not appear.
    for (const auto& row : l.system.rows())
        CHECK_FALSE(is_zero_row(row));
    CHECK(l.system.row_count() == l.origins.size());
    CHECK(BigInt(l.system.row_count()) <= BigInt(p.row_count()) * (1 + 2 * 2));
}

TEST_CASE("sa_lift: level 0 and errors") {
    auto p = fixtures::toy_half();
    auto l0 = sa_lift(p, p.variables(), 0);
    CHECK(format_polyhedron(l0.system) == format_polyhedron(p));
    CHECK(format_polyhedron(sa_project(l0)) == format_polyhedron(remove_redundant(p)));
    CHECK_THROWS_AS(sa_lift(p, p.variables(), 3), InputError);
    auto nobox = poly("vars: x1 x2\n1 1 <= 1\n");
    CHECK_THROWS_AS(sa_lift(nobox, nobox.variables(), 1), PreconditionError);
}

TEST_CASE("sa_lift: soundness of the product extension") {
    for (const auto& p : {fixtures::toy_half(), fixtures::knapsack3(), fixtures::cover4(), fixtures::cycle4()}) {
        const int n = static_cast<int>(p.dimension());
        for (int k = 1; k <= n; ++k) {
            auto l = sa_lift(p, p.variables(), k);
            for (const auto& k2 : l.lifted_keys)
                CHECK(static_cast<int>(k2.set.size()) <= k + 1);
            BigInt bound = 0;
            for (int u = 0; u <= k; ++u)
                bound += sa_size_bound(p.row_count(), n, u);
            CHECK(BigInt(l.system.row_count()) <= bound);
            for (const auto& a : enumerate_feasible_points(p, p.variables())) {
                std::vector<Rational> x(a.bits.begin(), a.bits.end());
                CHECK(l.system.satisfies(sa_extend_point(l, x)));
            }
        }
    }
}

TEST_CASE("sa_lift: mixed soundness") {
    auto p = fixtures::tiny_cfl();
    std::vector<std::string> ints{"y1", "y2"};
    auto l = sa_lift(p, ints, 2);
    for (const auto& k : l.lifted_keys)
        CHECK(k.set.size() >= 1);
    auto split = split_variables(p, ints);
    for (const auto& a : enumerate_feasible_points(p, ints))
        for (const auto& w : enumerate_vertices(fix_integers(p, split, a.bits))) {
            std::vector<Rational> pt{a.bits[0], a.bits[1], w[0], w[1]};
            CHECK(l.system.satisfies(sa_extend_point(l, pt)));
        }
}

TEST_CASE("sa_project: level 2 of the toy fixture") {
    auto p = fixtures::toy_half();
    auto s1 = sa_project(sa_lift(p, p.variables(), 1));
    auto s2 = sa_project(sa_lift(p, p.variables(), 2));
    auto want = poly("vars: x1 x2\n1 1 <= 1\n-1 0 <= 0\n0 -1 <= 0\n");
    CHECK(same_set(s2, want));
    CHECK(contains(p, s1));
    CHECK(contains(s1, s2));
    CHECK_FALSE(contains(s2, s1));
    // Level 1 keeps x1 + x2 = 4/3 reachable.
    auto r = solve_lp(s1, vec({"1", "1"}), Sense::Maximize);
    CHECK(*r.objective == q("4/3"));
    auto r2 = solve_lp(s2, vec({"1", "1"}), Sense::Maximize);
    CHECK(*r2.objective == 1);
}

TEST_CASE("sa_project: top level equals the integer hull") {
    for (const auto& p : {fixtures::toy_half(), fixtures::knapsack3(), fixtures::cover4()}) {
        auto top = sa_project(sa_lift(p, p.variables(), static_cast<int>(p.dimension())));
        CHECK(same_set(top, fixtures::integer_hull(p)));
    }
}

TEST_CASE("sa_size_bound") {
    CHECK(sa_size_bound(1, 4, 2) == 24);
    CHECK(sa_size_bound(10, 10, 3) == 9600);
    CHECK_THROWS_AS(sa_size_bound(1, 3, 4), InputError);
    for (unsigned long t = 1; t <= 10; ++t)
        CHECK(sa_size_bound(3, 20, t) > sa_size_bound(3, 20, t - 1));
    // C(n,t) 2^t <= 2^(n/2)
    CHECK(sa_max_level_within(20, q("1/2")) == 2);
    CHECK(sa_max_level_within(100, q("1/2")) >= 5);
    CHECK(sa_max_level_within(10, Rational(0)) == 0);
}

#pragma once

// Small polyhedra shared by unit tests and the acceptance suite.

#include "prodrel/fourier_motzkin.hpp"
#include "prodrel/hull.hpp"
#include "prodrel/io.hpp"
#include "prodrel/product.hpp"
#include "prodrel/sherali_adams.hpp"

#include <string>
#include <vector>

namespace fixtures {

using namespace prodrel;

inline HPolyhedron toy_half() {
    return parse_polyhedron("vars: x1 x2\n1 1 <= 3/2\n1 0 <= 1\n0 1 <= 1\n-1 0 <= 0\n0 -1 <= 0\n");
}

inline HPolyhedron knapsack3() {
    return parse_polyhedron("vars: x1 x2 x3\n2 2 2 <= 3\n1 0 0 <= 1\n0 1 0 <= 1\n0 0 1 <= 1\n"
                            "-1 0 0 <= 0\n0 -1 0 <= 0\n0 0 -1 <= 0\n");
}

inline HPolyhedron cover4() {
    return parse_polyhedron("vars: x1 x2 x3 x4\n2 2 1 1 <= 5/2\n-2 -2 -1 0 <= -1\n"
                            "1 0 0 0 <= 1\n0 1 0 0 <= 1\n0 0 1 0 <= 1\n0 0 0 1 <= 1\n"
                            "-1 0 0 0 <= 0\n0 -1 0 0 <= 0\n0 0 -1 0 <= 0\n0 0 0 -1 <= 0\n");
}

// Fractional 4-cycle stable set relaxation with a half-integral slack.
inline HPolyhedron cycle4() {
    return parse_polyhedron("vars: x1 x2 x3 x4\n1 1 0 0 <= 1\n0 1 1 0 <= 1\n0 0 1 1 <= 1\n1 0 0 1 <= 1\n"
                            "1 1 1 1 <= 3/2\n"
                            "1 0 0 0 <= 1\n0 1 0 0 <= 1\n0 0 1 0 <= 1\n0 0 0 1 <= 1\n"
                            "-1 0 0 0 <= 0\n0 -1 0 0 <= 0\n0 0 -1 0 <= 0\n0 0 0 -1 <= 0\n");
}

inline HPolyhedron integer_hull(const HPolyhedron& p) { return mixed_integer_hull(p, p.variables()); }

inline HPolyhedron mixed_hull(const HPolyhedron& p, const std::vector<std::string>& ints) {
    return mixed_integer_hull(p, ints);
}

// Q = P plus y == x1, with the obvious section.
struct PureEf {
    std::string name;
    HPolyhedron q;
    SectionTable section;
    HPolyhedron p_hull;
};

inline PureEf duplicate_ef() {
    PureEf f;
    f.name = "duplicate variable";
    f.q = parse_polyhedron("vars: x1 x2 y\n1 1 0 <= 3/2\n1 0 0 <= 1\n0 1 0 <= 1\n-1 0 0 <= 0\n0 -1 0 <= 0\n"
                           "1 0 -1 == 0\n");
    f.section = parse_section_table("0 0 -> 0 0 0\n0 1 -> 0 1 0\n1 0 -> 1 0 1\n", f.q);
    f.p_hull = integer_hull(toy_half());
    return f;
}

// Disjunctive formulation of {(0,0), (1,1)}: x = a + b, a = 0 * l0, b = (1,1) * l1.
inline PureEf disjunctive_ef() {
    PureEf f;
    f.name = "disjunctive";
    f.q = parse_polyhedron("vars: x1 x2 l0 l1 a1 a2 b1 b2\n"
                           "1 0 0 0 -1 0 -1 0 == 0\n"
                           "0 1 0 0 0 -1 0 -1 == 0\n"
                           "0 0 0 0 1 0 0 0 == 0\n"
                           "0 0 0 0 0 1 0 0 == 0\n"
                           "0 0 0 -1 0 0 1 0 == 0\n"
                           "0 0 0 -1 0 0 0 1 == 0\n"
                           "0 0 1 1 0 0 0 0 == 1\n"
                           "0 0 -1 0 0 0 0 0 <= 0\n"
                           "0 0 0 -1 0 0 0 0 <= 0\n");
    f.section = parse_section_table("0 0 -> 0 0 1 0 0 0 0 0\n1 1 -> 1 1 0 1 0 0 1 1\n", f.q);
    VPolytope vp({"x1", "x2"});
    vp.add_vertex({Rational(0), Rational(0)});
    vp.add_vertex({Rational(1), Rational(1)});
    f.p_hull = hull_h_representation(vp, {"x1", "x2"});
    return f;
}

// Level-1 lift of the 3-variable knapsack with its product section.
inline PureEf sa_lifted_ef() {
    PureEf f;
    f.name = "SA level 1 of a knapsack";
    HPolyhedron p = knapsack3();
    LiftedSystem l = sa_lift(p, p.variables(), 1);
    f.q = l.system;
    f.section.x_vars = p.variables();
    for (const auto& a : enumerate_feasible_points(p, p.variables())) {
        std::vector<Rational> x(a.bits.begin(), a.bits.end());
        f.section.entries.emplace(a.bits, sa_extend_point(l, x));
    }
    f.p_hull = integer_hull(p);
    return f;
}

// Two facilities, one client, unit capacities.
inline HPolyhedron tiny_cfl() {
    return parse_polyhedron("vars: y1 y2 x11 x21\n"
                            "-1 0 1 0 <= 0\n0 -1 0 1 <= 0\n"
                            "0 0 1 1 == 1\n"
                            "-1 0 1 0 <= 0\n0 -1 0 1 <= 0\n"
                            "1 0 0 0 <= 1\n0 1 0 0 <= 1\n-1 0 0 0 <= 0\n0 -1 0 0 <= 0\n"
                            "0 0 1 0 <= 1\n0 0 0 1 <= 1\n0 0 -1 0 <= 0\n0 0 0 -1 <= 0\n");
}

struct MixedEf {
    std::string name;
    HPolyhedron p; // over (x, w)
    std::vector<std::string> ints;
    HPolyhedron q;
    MixedSectionTable section;
};

inline MixedEf sa_mixed_ef() {
    MixedEf f;
    f.name = "SA level 1 of a two-facility location LP";
    f.p = tiny_cfl();
    f.ints = {"y1", "y2"};
    LiftedSystem l = sa_lift(f.p, f.ints, 1);
    f.q = l.system;
    std::vector<std::vector<int>> pats;
    for (const auto& a : enumerate_feasible_points(f.p, f.ints))
        pats.push_back(a.bits);
    f.section = sa_mixed_section(l, pats);
    return f;
}

} // namespace fixtures

#pragma once

#include "prodrel/polyhedron.hpp"
#include "prodrel/product_key.hpp"
#include "prodrel/vpolytope.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace prodrel {

inline constexpr std::size_t max_enumerated_integer_vars = 24;

struct IntegerAssignment {
    std::vector<int> bits;            // per integer variable, in the given order
    std::vector<Rational> fractional; // per remaining variable, in column order
    bool operator==(const IntegerAssignment&) const = default;
};

// Column split of a polyhedron into the named 0/1 variables and the rest.
struct VariableSplit {
    std::vector<std::size_t> integer_cols;
    std::vector<std::size_t> fractional_cols;
};
VariableSplit split_variables(const HPolyhedron& poly, std::span<const std::string> integer_vars);

// The polyhedron over the fractional variables obtained by fixing the
// integer ones to `bits`.
HPolyhedron fix_integers(const HPolyhedron& poly, const VariableSplit& split, std::span<const int> bits);

// Patterns in binary counting order, first integer variable most significant.
std::vector<IntegerAssignment> enumerate_feasible_points(const HPolyhedron& poly,
                                                         std::span<const std::string> integer_vars);

// Labels are ProductKey strings. Pure case: one vertex per feasible pattern.
// Mixed case: f(x, w) for every vertex w of each pattern's slice (the slices
// must be bounded).
VPolytope canonical_product_relaxation(const HPolyhedron& poly, std::span<const std::string> integer_vars);

// Vertices of a bounded polyhedron by brute force over tight row sets.
std::vector<std::vector<Rational>> enumerate_vertices(const HPolyhedron& poly);

bool in_hull(std::span<const Rational> point, const VPolytope& vp);

struct ConflictWitness {
    std::vector<Rational> point;
    std::vector<Rational> lambda; // weights on the members of s
    std::vector<Rational> mu;     // weights on the vertices of vp
};

// Throws PreconditionError if some member of s lies in vp.
std::optional<ConflictWitness> is_conflicting(const std::vector<std::vector<Rational>>& s, const VPolytope& vp);

// Exact re-check: point = sum lambda_i s_i = sum mu_j v_j, weights >= 0, sums 1.
bool verify_conflict_witness(const std::vector<std::vector<Rational>>& s, const VPolytope& vp,
                             const ConflictWitness& w, std::string* why = nullptr);

// H-representation of conv(vp) over the given variable names, by eliminating
// the combination weights.
HPolyhedron hull_h_representation(const VPolytope& vp, std::vector<std::string> names);

// conv of the mixed-integer points of poly (integer_vars in {0,1}), over
// poly's own variables. Slices must be bounded.
HPolyhedron mixed_integer_hull(const HPolyhedron& poly, std::span<const std::string> integer_vars);

} // namespace prodrel

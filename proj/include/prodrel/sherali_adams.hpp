#pragma once

#include "prodrel/polyhedron.hpp"
#include "prodrel/product.hpp"

#include <span>
#include <string>
#include <vector>

namespace prodrel {

inline constexpr std::size_t max_projected_lifted_vars = 20;

struct LiftedRowOrigin {
    std::size_t source_row;
    std::vector<int> u; // integer-variable indices (0-based, in integer order)
    std::vector<int> w; // subset of u multiplied as (1 - x_i)
};

struct LiftedSystem {
    HPolyhedron system; // original variables first, then lifted ones
    int level = 0;
    std::vector<LiftedRowOrigin> origins;
    std::vector<std::string> original_vars;
    std::vector<std::string> integer_vars;
    std::vector<std::string> fractional_vars;
    std::vector<std::string> lifted_vars;
    std::vector<ProductKey> lifted_keys; // parallel to lifted_vars
};

// Level-k lift: every row times prod_{U-W} x_i prod_W (1 - x_i) for all
// |U| <= k, W <= U; linearized with x_i^2 = x_i, products to z{I}, and
// x_I w_j to v{I}wj. Tautologies and duplicate rows are dropped.
LiftedSystem sa_lift(const HPolyhedron& p, std::span<const std::string> integer_vars, int level);

// Projection of the lifted system back onto the original variables.
HPolyhedron sa_project(const LiftedSystem& lifted);

// The product extension of a feasible point: x_I = prod x_i, v_{I,j} = x_I w_j.
std::vector<Rational> sa_extend_point(const LiftedSystem& lifted, std::span<const Rational> point);

// For mixed lifts: the lifted variables as affine functions of w per 0/1
// pattern, ready for translate_mixed_ef.
MixedSectionTable sa_mixed_section(const LiftedSystem& lifted, const std::vector<std::vector<int>>& patterns);

// r * C(n, t) * 2^t.
BigInt sa_size_bound(const BigInt& r, unsigned long n, unsigned long t);

// Largest t <= n/2 with C(n,t) 2^t <= 2^(delta n), i.e. r C(n,t) 2^t <= r 2^(delta n);
// -1 if even t = 0 fails. delta = p/q is compared exactly.
long sa_max_level_within(unsigned long n, const Rational& delta);

} // namespace prodrel

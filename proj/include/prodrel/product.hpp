#pragma once

#include "prodrel/polyhedron.hpp"
#include "prodrel/product_key.hpp"

#include <map>
#include <span>
#include <string>
#include <vector>

namespace prodrel {

inline constexpr int max_indicator_dimension = 24;

// f_E(x) = prod_{i in E} x_i, stored on the support subsets only.
SparseProductVector product_section(std::span<const int> x);
// Adds f_{E w_j} = f_E(x) w_j (and the plain w_j) to the pure section.
SparseProductVector mixed_product_section(std::span<const int> x, std::span<const Rational> w);

// chi_s(x) = constant + sum_E a_E f_E(x). The constant is nonzero only for
// s = 0, where the empty set would otherwise be needed.
struct IndicatorExpansion {
    Rational constant;
    std::map<ProductKey, Rational> coefficients;

    Rational evaluate(std::span<const int> x) const;
};

IndicatorExpansion indicator_coefficients(std::span<const int> s);

// Rows: named functions; columns: product keys plus a constant column.
struct SubstitutionMatrix {
    std::vector<std::string> rows;
    std::vector<ProductKey> columns;
    std::vector<std::vector<Rational>> coeffs;
    std::vector<Rational> constants;

    std::vector<Rational> apply(const SparseProductVector& f) const;
};

// values: a vector per point of {0,1}^d (every point present), one entry per
// row name. Coefficients by Moebius inversion over the subset lattice.
SubstitutionMatrix fourier_coefficients(int d, const std::map<std::vector<int>, std::vector<Rational>>& values,
                                        std::vector<std::string> row_names);

// A section of an extended formulation Q: per feasible 0/1 point, a full
// vector over Q's variables. x_vars name the original variables inside Q.
struct SectionTable {
    std::vector<std::string> x_vars;
    std::map<std::vector<int>, std::vector<Rational>> entries;
};

// Line format: "1 0 -> 1 0 1/2 0" (point, then the extended vector over all
// of Q's variables). x_vars are the first |point| variables of Q.
SectionTable parse_section_table(std::string_view text, const HPolyhedron& q);
std::string format_section_table(const SectionTable& g);

// y_i restricted to one 0/1 pattern as an affine function of w.
struct AffineForm {
    std::vector<Rational> w;
    Rational constant;
};

struct MixedSectionTable {
    std::vector<std::string> x_vars;
    std::vector<std::string> w_vars;
    std::vector<std::string> y_vars;
    std::map<std::vector<int>, std::vector<AffineForm>> patterns; // one form per y var
};

struct Translation {
    HPolyhedron system;
    SubstitutionMatrix substitution;
};

// Variable names inside translated systems: singletons keep the original
// names, other keys become "z{1,2}" and "v{1,2}w3".
std::string key_variable_name(const ProductKey& key, std::span<const std::string> x_vars,
                              std::span<const std::string> w_vars);

// Throws CertificateError if some table entry is infeasible for Q and
// InputError if a feasible 0/1 point of Q has no entry.
Translation translate_ef(const HPolyhedron& q, const SectionTable& g);

// p is the mixed set's relaxation over (x, w); its feasible patterns must all
// have a table, and each slice must be bounded.
Translation translate_mixed_ef(const HPolyhedron& q, const MixedSectionTable& g, const HPolyhedron& p);

} // namespace prodrel

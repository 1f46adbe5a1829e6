#pragma once

#include "prodrel/polyhedron.hpp"

#include <string>
#include <vector>

namespace prodrel::cfl {

inline constexpr int max_exact_facilities = 12;

// A general CFL instance with unit demands.
struct CflData {
    std::vector<Rational> capacity; // per facility
    long clients = 0;

    int facilities() const { return static_cast<int>(capacity.size()); }
};

struct CflObjective {
    std::vector<Rational> opening;                 // per facility
    std::vector<std::vector<Rational>> connection; // [facility][client]
};

std::string y_name(int i);           // "y1"
std::string x_name(int i, long j);   // "x1_1"

// Variables y (integer) then x; rows x_ij <= y_i, sum_i x_ij = 1,
// sum_j x_ij <= U_i y_i and the unit box.
HPolyhedron classic_lp(const CflData& data);
std::vector<std::string> classic_integer_vars(const CflData& data);

// c_ij <= c_ij' + c_i'j' + c_i'j for all i, i', j, j'.
bool metric_ok(const CflObjective& obj, std::string* why = nullptr);

struct IntegerOptimum {
    Rational value;
    std::vector<int> open;
    std::size_t feasible_subsets = 0;
};

// Minimum over facility subsets of opening cost plus the transportation LP.
// CapacityError beyond 12 facilities, PreconditionError if no subset is
// feasible.
IntegerOptimum integer_opt_exact(const CflData& data, const CflObjective& obj);

// Disjunctive system over all O <= F with selection variables s[O]; the
// aggregate y, x come first and equal the sums of the per-O copies.
HPolyhedron exact_ef(const CflData& data);
std::size_t exact_ef_row_count(const CflData& data);

} // namespace prodrel::cfl

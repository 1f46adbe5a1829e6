#pragma once

#include "prodrel/polyhedron.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace prodrel {

enum class LpStatus { Optimal, Infeasible, Unbounded };
enum class Sense { Maximize, Minimize };

const char* to_string(LpStatus status);

// certificate, by status:
//   Optimal    row multipliers y (y >= 0 on <= rows) with y.A = s*objective and
//              y.b = s*value, s = +1 for max and -1 for min.
//   Infeasible Farkas multipliers y (y >= 0 on <= rows) with y.A = 0, y.b = -1.
//   Unbounded  a ray r with A_le r <= 0, A_eq r = 0 and objective.r improving;
//              point is then a feasible point.
struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    std::vector<Rational> point;
    std::optional<Rational> objective;
    std::vector<Rational> certificate;
};

LpResult solve_lp(const HPolyhedron& poly, std::span<const Rational> objective, Sense sense);

// Phase-one only; returns a feasible point or nothing.
std::optional<std::vector<Rational>> find_feasible_point(const HPolyhedron& poly);
bool is_feasible(const HPolyhedron& poly);

// True iff max objective.x over poly is <= bound (true for an empty poly).
// Stops as soon as a dual bound certifies it.
bool max_at_most(const HPolyhedron& poly, std::span<const Rational> objective, const Rational& bound);

// Re-checks every claim of an LpResult by exact substitution.
bool check_lp_result(const HPolyhedron& poly, std::span<const Rational> objective, Sense sense,
                     const LpResult& result, std::string* why = nullptr);

// min cost.y subject to M y = rhs, y >= 0, with Bland's rule. M is row-major.
// multipliers: simplex multipliers of the final basis (phase one when infeasible).
struct StandardFormResult {
    LpStatus status = LpStatus::Infeasible;
    std::vector<Rational> solution;
    std::vector<Rational> multipliers;
    std::vector<Rational> ray;
    Rational objective;
};

struct StandardFormOptions {
    // Stop phase two once the objective drops to this value or below.
    std::optional<Rational> stop_at;
};

StandardFormResult solve_standard_form(const std::vector<std::vector<Rational>>& matrix,
                                       std::span<const Rational> rhs, std::span<const Rational> cost,
                                       const StandardFormOptions& options = {});

} // namespace prodrel

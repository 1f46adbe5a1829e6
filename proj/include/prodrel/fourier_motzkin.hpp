#pragma once

#include "prodrel/polyhedron.hpp"

#include <span>
#include <string>
#include <string_view>

namespace prodrel {

// Projection onto all variables but `var`; redundant rows are removed.
HPolyhedron fm_eliminate(const HPolyhedron& poly, std::string_view var);

// Eliminates every listed variable; picks the next one greedily
// (equality substitution first, then the smallest positive x negative count).
HPolyhedron fm_eliminate_all(const HPolyhedron& poly, std::span<const std::string> vars);

// Keeps the named variables in the given order.
HPolyhedron project_onto(const HPolyhedron& poly, std::span<const std::string> keep);

// Normalizes rows, drops trivially true and duplicate rows, keeps the
// tightest of parallel inequalities. Cheap; no LP.
HPolyhedron simplify_rows(const HPolyhedron& poly);

// Same solution set, no row implied by the others (one LP per row).
// An empty polyhedron comes back as the single row 0 <= -1.
HPolyhedron remove_redundant(const HPolyhedron& poly);

// True iff every row of outer is valid for inner. Variable lists must match.
bool contains(const HPolyhedron& outer, const HPolyhedron& inner);

bool same_set(const HPolyhedron& a, const HPolyhedron& b);

// Column permutation to a new variable order (same variable set).
HPolyhedron reorder_variables(const HPolyhedron& poly, std::span<const std::string> order);

} // namespace prodrel

#pragma once

#include "prodrel/polyhedron.hpp"
#include "prodrel/vpolytope.hpp"

#include <string>
#include <string_view>

namespace prodrel {

// Text format:
//   vars: x1 x2
//   1 1 <= 3/2
//   1 0 == 1
// Blank lines and lines starting with '#' are skipped; ">=" rows are accepted
// and stored negated. format_polyhedron writes the canonical form, so
// canonical text round-trips byte for byte.
HPolyhedron parse_polyhedron(std::string_view text);
std::string format_polyhedron(const HPolyhedron& poly);

// Text format:
//   dims: {1} {2} {1,2}
//   0 1 0
VPolytope parse_vpolytope(std::string_view text);
std::string format_vpolytope(const VPolytope& vp);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

std::vector<std::string> split_ws(std::string_view line);

} // namespace prodrel

#include "prodrel/vpolytope.hpp"

#include "prodrel/errors.hpp"

#include <algorithm>

namespace prodrel {

VPolytope::VPolytope(std::vector<std::string> labels) : labels_(std::move(labels)) {}

bool VPolytope::add_vertex(std::vector<Rational> v) {
    if (v.size() != labels_.size())
        throw InputError("vertex has " + std::to_string(v.size()) + " coordinates, expected " +
                         std::to_string(labels_.size()));
    if (std::find(vertices_.begin(), vertices_.end(), v) != vertices_.end())
        return false;
    vertices_.push_back(std::move(v));
    return true;
}

} // namespace prodrel

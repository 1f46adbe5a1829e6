#pragma once

#include "prodrel/rational.hpp"

#include <string>
#include <vector>

namespace prodrel {

// Convex hull of finitely many points. Labels name the coordinates; they are
// ProductKey strings ("{1,2}", "{1}*w[2]") or plain variable names.
class VPolytope {
public:
    VPolytope() = default;
    explicit VPolytope(std::vector<std::string> labels);

    const std::vector<std::string>& labels() const { return labels_; }
    std::size_t dimension() const { return labels_.size(); }
    const std::vector<std::vector<Rational>>& vertices() const { return vertices_; }
    std::size_t size() const { return vertices_.size(); }
    bool empty() const { return vertices_.empty(); }

    // Ignores exact duplicates; returns whether the point was new.
    bool add_vertex(std::vector<Rational> v);

private:
    std::vector<std::string> labels_;
    std::vector<std::vector<Rational>> vertices_;
};

} // namespace prodrel

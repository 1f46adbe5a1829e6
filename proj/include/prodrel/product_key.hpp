#pragma once

#include "prodrel/rational.hpp"

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace prodrel {

// A product coordinate: the set E of 0/1 variable indices, optionally times
// one fractional variable. E may be empty only when frac is set (the plain
// fractional variable w_j). Indices are 0-based; text form is 1-based.
struct ProductKey {
    std::vector<int> set;
    std::optional<long> frac;

    ProductKey() = default;
    ProductKey(std::vector<int> s, std::optional<long> f = std::nullopt);

    bool is_pure() const { return !frac.has_value(); }
    bool is_singleton() const { return (set.size() == 1 && !frac) || (set.empty() && frac); }

    // Shorter sets first, then lexicographic, pure before mixed.
    std::strong_ordering operator<=>(const ProductKey& o) const;
    bool operator==(const ProductKey& o) const = default;
};

// "{1,3}" or "{1,3}*w[2]"; the fractional singleton is "{}*w[2]".
std::string format_key(const ProductKey& key);
ProductKey parse_key(std::string_view text);

using SparseProductVector = std::map<ProductKey, Rational>;

// Value of a sparse vector at a key (absent means 0).
Rational value_at(const SparseProductVector& v, const ProductKey& key);

// All nonempty subsets of {0..d-1} as sorted vectors, in key order.
std::vector<std::vector<int>> nonempty_subsets(int d);

std::vector<int> mask_to_set(unsigned long long mask);
unsigned long long set_to_mask(const std::vector<int>& set);

} // namespace prodrel

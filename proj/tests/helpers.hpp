#pragma once

#include "prodrel/io.hpp"
#include "prodrel/rational.hpp"

#include <random>
#include <string>
#include <vector>

namespace testing {

using prodrel::Rational;

inline Rational q(const char* s) { return prodrel::parse_rational(s); }

inline std::vector<Rational> vec(std::initializer_list<const char*> xs) {
    std::vector<Rational> v;
    for (auto s : xs)
        v.push_back(q(s));
    return v;
}

inline prodrel::HPolyhedron poly(const std::string& text) { return prodrel::parse_polyhedron(text); }

inline Rational random_small(std::mt19937_64& rng, int lo, int hi) {
    std::uniform_int_distribution<int> d(lo, hi);
    return Rational(d(rng));
}

} // namespace testing

#include "prodrel/polyhedron.hpp"

#include "prodrel/errors.hpp"

#include <set>

namespace prodrel {

HPolyhedron::HPolyhedron(std::vector<std::string> variables) : vars_(std::move(variables)) {
    std::set<std::string_view> seen;
    for (const auto& v : vars_) {
        if (v.empty())
            throw InputError("empty variable name");
        if (!seen.insert(v).second)
            throw InputError("duplicate variable name '" + v + "'");
    }
}

std::optional<std::size_t> HPolyhedron::find(std::string_view name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i] == name)
            return i;
    return std::nullopt;
}

std::size_t HPolyhedron::index_of(std::string_view name) const {
    if (auto i = find(name))
        return *i;
    throw InputError("unknown variable '" + std::string(name) + "'");
}

void HPolyhedron::add_row(Row row) {
    if (row.coeffs.size() != vars_.size())
        throw InputError("row has " + std::to_string(row.coeffs.size()) + " coefficients, expected " +
                         std::to_string(vars_.size()));
    rows_.push_back(std::move(row));
}

void HPolyhedron::add_row(const SparseTerms& terms, Relation rel, Rational rhs) {
    Row r;
    r.coeffs.assign(vars_.size(), Rational(0));
    for (const auto& [j, c] : terms) {
        if (j >= vars_.size())
            throw InputError("term index out of range");
        r.coeffs[j] += c;
    }
    r.rel = rel;
    r.rhs = std::move(rhs);
    rows_.push_back(std::move(r));
}

void HPolyhedron::add_ge(const SparseTerms& terms, Rational rhs) {
    SparseTerms neg;
    neg.reserve(terms.size());
    for (const auto& [j, c] : terms)
        neg.emplace_back(j, -c);
    add_row(neg, Relation::LessEqual, -rhs);
}

bool row_holds(const Row& row, std::span<const Rational> point) {
    Rational lhs = dot(row.coeffs, point);
    return row.rel == Relation::Equal ? lhs == row.rhs : lhs <= row.rhs;
}

bool HPolyhedron::satisfies(std::span<const Rational> point) const {
    return !first_violated(point).has_value();
}

std::optional<std::size_t> HPolyhedron::first_violated(std::span<const Rational> point) const {
    if (point.size() != vars_.size())
        throw InputError("point dimension mismatch");
    for (std::size_t i = 0; i < rows_.size(); ++i)
        if (!row_holds(rows_[i], point))
            return i;
    return std::nullopt;
}

bool is_zero_row(const Row& row) {
    for (const auto& c : row.coeffs)
        if (sgn(c) != 0)
            return false;
    return true;
}

Row normalize_row(const Row& row) {
    Row out = row;
    BigInt den_lcm = 1, num_gcd = 0;
    for (const auto& c : row.coeffs) {
        if (sgn(c) == 0)
            continue;
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num_mpz_t());
    }
    if (num_gcd == 0)
        return out;
    Rational scale(den_lcm, num_gcd);
    scale.canonicalize();
    if (row.rel == Relation::Equal) {
        for (const auto& c : row.coeffs)
            if (sgn(c) != 0) {
                if (sgn(c) < 0)
                    scale = -scale;
                break;
            }
    }
    for (auto& c : out.coeffs)
        c *= scale;
    out.rhs *= scale;
    return out;
}

HPolyhedron infeasible_polyhedron(std::vector<std::string> variables) {
    HPolyhedron p(std::move(variables));
    Row r;
    r.coeffs.assign(p.dimension(), Rational(0));
    r.rhs = -1;
    p.add_row(std::move(r));
    return p;
}

} // namespace prodrel

#pragma once

#include "prodrel/rational.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace prodrel {

enum class Relation { LessEqual, Equal };

struct Row {
    std::vector<Rational> coeffs;
    Relation rel = Relation::LessEqual;
    Rational rhs;

    bool operator==(const Row&) const = default;
};

using SparseTerms = std::vector<std::pair<std::size_t, Rational>>;

class HPolyhedron {
public:
    HPolyhedron() = default;
    explicit HPolyhedron(std::vector<std::string> variables);

    const std::vector<std::string>& variables() const { return vars_; }
    std::size_t dimension() const { return vars_.size(); }
    const std::vector<Row>& rows() const { return rows_; }
    std::size_t row_count() const { return rows_.size(); }

    std::optional<std::size_t> find(std::string_view name) const;
    std::size_t index_of(std::string_view name) const; // throws InputError

    void add_row(Row row);
    void add_row(const SparseTerms& terms, Relation rel, Rational rhs);
    // a.x >= b is stored as -a.x <= -b.
    void add_ge(const SparseTerms& terms, Rational rhs);

    void clear_rows() { rows_.clear(); }

    bool satisfies(std::span<const Rational> point) const;
    std::optional<std::size_t> first_violated(std::span<const Rational> point) const;

private:
    std::vector<std::string> vars_;
    std::vector<Row> rows_;
};

bool row_holds(const Row& row, std::span<const Rational> point);

// Positive rescaling so that the coefficient vector is a primitive integer
// vector; equality rows additionally get a positive leading coefficient.
Row normalize_row(const Row& row);
bool is_zero_row(const Row& row);

// The canonical empty polyhedron: a single row 0 <= -1.
HPolyhedron infeasible_polyhedron(std::vector<std::string> variables);

} // namespace prodrel

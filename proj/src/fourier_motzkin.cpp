#include "prodrel/fourier_motzkin.hpp"

#include "prodrel/errors.hpp"
#include "prodrel/lp.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

namespace prodrel {

namespace {

std::string coeff_key(const Row& r) {
    std::string key;
    key.reserve(r.coeffs.size() * 3);
    for (const auto& c : r.coeffs) {
        key += c.get_str(16);
        key += ',';
    }
    key += r.rel == Relation::Equal ? 'e' : 'l';
    return key;
}

Row drop_column(const Row& r, std::size_t col) {
    Row out;
    out.coeffs.reserve(r.coeffs.size() - 1);
    for (std::size_t j = 0; j < r.coeffs.size(); ++j)
        if (j != col)
            out.coeffs.push_back(r.coeffs[j]);
    out.rel = r.rel;
    out.rhs = r.rhs;
    return out;
}

std::vector<std::string> without(const std::vector<std::string>& vars, std::size_t col) {
    std::vector<std::string> out;
    for (std::size_t j = 0; j < vars.size(); ++j)
        if (j != col)
            out.push_back(vars[j]);
    return out;
}

std::size_t nonzeros(const Row& r) {
    std::size_t n = 0;
    for (const auto& c : r.coeffs)
        n += sgn(c) != 0;
    return n;
}

// One elimination step without the LP pass.
HPolyhedron eliminate_step(const HPolyhedron& poly, std::size_t col) {
    const auto& rows = poly.rows();
    HPolyhedron out(without(poly.variables(), col));

    std::size_t pivot = rows.size();
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (rows[i].rel == Relation::Equal && sgn(rows[i].coeffs[col]) != 0)
            if (pivot == rows.size() || nonzeros(rows[i]) < nonzeros(rows[pivot]))
                pivot = i;

    if (pivot != rows.size()) {
        const Row& e = rows[pivot];
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == pivot)
                continue;
            Row r = rows[i];
            if (sgn(r.coeffs[col]) != 0) {
                Rational f = r.coeffs[col] / e.coeffs[col];
                for (std::size_t j = 0; j < r.coeffs.size(); ++j)
                    if (sgn(e.coeffs[j]) != 0)
                        r.coeffs[j] -= f * e.coeffs[j];
                r.rhs -= f * e.rhs;
            }
            out.add_row(drop_column(r, col));
        }
        return out;
    }

    std::vector<std::size_t> pos, neg;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        int s = sgn(rows[i].coeffs[col]);
        if (s == 0)
            out.add_row(drop_column(rows[i], col));
        else if (s > 0)
            pos.push_back(i);
        else
            neg.push_back(i);
    }
    for (std::size_t p : pos)
        for (std::size_t q : neg) {
            const Row& a = rows[p];
            const Row& b = rows[q];
            Rational fa = -b.coeffs[col];
            Rational fb = a.coeffs[col];
            Row r;
            r.coeffs.resize(a.coeffs.size());
            for (std::size_t j = 0; j < a.coeffs.size(); ++j)
                r.coeffs[j] = fa * a.coeffs[j] + fb * b.coeffs[j];
            r.rhs = fa * a.rhs + fb * b.rhs;
            out.add_row(drop_column(r, col));
        }
    return out;
}

HPolyhedron without_row(const HPolyhedron& poly, const std::vector<bool>& alive, std::size_t skip) {
    HPolyhedron out(poly.variables());
    for (std::size_t i = 0; i < poly.row_count(); ++i)
        if (alive[i] && i != skip)
            out.add_row(poly.rows()[i]);
    return out;
}

} // namespace

HPolyhedron simplify_rows(const HPolyhedron& poly) {
    std::vector<Row> kept;
    std::unordered_map<std::string, std::size_t> seen;
    for (const auto& raw : poly.rows()) {
        if (is_zero_row(raw)) {
            bool ok = raw.rel == Relation::Equal ? sgn(raw.rhs) == 0 : sgn(raw.rhs) >= 0;
            if (ok)
                continue;
            return infeasible_polyhedron(poly.variables());
        }
        Row r = normalize_row(raw);
        auto key = coeff_key(r);
        auto it = seen.find(key);
        if (it == seen.end()) {
            seen.emplace(std::move(key), kept.size());
            kept.push_back(std::move(r));
            continue;
        }
        Row& old = kept[it->second];
        if (r.rel == Relation::Equal) {
            if (old.rhs != r.rhs)
                return infeasible_polyhedron(poly.variables());
        } else if (r.rhs < old.rhs) {
            old.rhs = r.rhs;
        }
    }
    HPolyhedron out(poly.variables());
    for (auto& r : kept)
        out.add_row(std::move(r));
    return out;
}

HPolyhedron remove_redundant(const HPolyhedron& poly) {
    HPolyhedron cur = simplify_rows(poly);
    if (!is_feasible(cur))
        return infeasible_polyhedron(poly.variables());
    const auto& rows = cur.rows();
    std::vector<bool> alive(rows.size(), true);
    // Inequalities first: an inequality implied by an equality goes, the
    // equality stays.
    for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t i = 0; i < rows.size(); ++i) {
            bool eq = rows[i].rel == Relation::Equal;
            if (eq != (pass == 1))
                continue;
            HPolyhedron rest = without_row(cur, alive, i);
            bool redundant = max_at_most(rest, rows[i].coeffs, rows[i].rhs);
            if (redundant && eq) {
                std::vector<Rational> neg(rows[i].coeffs.size());
                for (std::size_t j = 0; j < neg.size(); ++j)
                    neg[j] = -rows[i].coeffs[j];
                redundant = max_at_most(rest, neg, Rational(-rows[i].rhs));
            }
            if (redundant)
                alive[i] = false;
        }
    }
    return without_row(cur, alive, rows.size());
}

HPolyhedron fm_eliminate(const HPolyhedron& poly, std::string_view var) {
    std::size_t col = poly.index_of(var);
    return remove_redundant(eliminate_step(simplify_rows(poly), col));
}

HPolyhedron fm_eliminate_all(const HPolyhedron& poly, std::span<const std::string> vars) {
    std::set<std::string> todo;
    for (const auto& v : vars) {
        poly.index_of(v);
        todo.insert(v);
    }
    HPolyhedron cur = remove_redundant(poly);
    while (!todo.empty()) {
        // Score: equality substitution is free; otherwise count new rows.
        std::string best;
        long best_score = 0;
        for (const auto& v : todo) {
            std::size_t col = cur.index_of(v);
            long pos = 0, neg = 0;
            bool eq = false;
            for (const auto& r : cur.rows()) {
                int s = sgn(r.coeffs[col]);
                if (s == 0)
                    continue;
                if (r.rel == Relation::Equal)
                    eq = true;
                else if (s > 0)
                    ++pos;
                else
                    ++neg;
            }
            long score = eq ? -1 : pos * neg - pos - neg;
            if (best.empty() || score < best_score) {
                best = v;
                best_score = score;
            }
        }
        cur = remove_redundant(eliminate_step(cur, cur.index_of(best)));
        todo.erase(best);
    }
    return cur;
}

HPolyhedron project_onto(const HPolyhedron& poly, std::span<const std::string> keep) {
    std::set<std::string> k(keep.begin(), keep.end());
    for (const auto& v : keep)
        poly.index_of(v);
    std::vector<std::string> drop;
    for (const auto& v : poly.variables())
        if (!k.count(v))
            drop.push_back(v);
    HPolyhedron p = fm_eliminate_all(poly, drop);
    return reorder_variables(p, keep);
}

bool contains(const HPolyhedron& outer, const HPolyhedron& inner) {
    if (outer.variables() != inner.variables())
        throw InputError("contains: variable lists differ");
    if (!is_feasible(inner))
        return true;
    for (const auto& r : outer.rows()) {
        if (!max_at_most(inner, r.coeffs, r.rhs))
            return false;
        if (r.rel == Relation::Equal) {
            std::vector<Rational> neg(r.coeffs.size());
            for (std::size_t j = 0; j < neg.size(); ++j)
                neg[j] = -r.coeffs[j];
            if (!max_at_most(inner, neg, Rational(-r.rhs)))
                return false;
        }
    }
    return true;
}

bool same_set(const HPolyhedron& a, const HPolyhedron& b) {
    return contains(a, b) && contains(b, a);
}

HPolyhedron reorder_variables(const HPolyhedron& poly, std::span<const std::string> order) {
    if (order.size() != poly.dimension())
        throw InputError("reorder: variable count differs");
    std::vector<std::size_t> src;
    for (const auto& v : order)
        src.push_back(poly.index_of(v));
    HPolyhedron out(std::vector<std::string>(order.begin(), order.end()));
    for (const auto& r : poly.rows()) {
        Row n;
        n.coeffs.reserve(src.size());
        for (std::size_t j : src)
            n.coeffs.push_back(r.coeffs[j]);
        n.rel = r.rel;
        n.rhs = r.rhs;
        out.add_row(std::move(n));
    }
    return out;
}

} // namespace prodrel

#include "prodrel/hull.hpp"

#include "prodrel/errors.hpp"
#include "prodrel/fourier_motzkin.hpp"
#include "prodrel/lp.hpp"
#include "prodrel/product.hpp"

#include <algorithm>
#include <set>

namespace prodrel {

VariableSplit split_variables(const HPolyhedron& poly, std::span<const std::string> integer_vars) {
    VariableSplit s;
    std::vector<bool> is_int(poly.dimension(), false);
    for (const auto& v : integer_vars) {
        std::size_t j = poly.index_of(v);
        if (is_int[j])
            throw InputError("integer variable listed twice: '" + v + "'");
        is_int[j] = true;
        s.integer_cols.push_back(j);
    }
    for (std::size_t j = 0; j < poly.dimension(); ++j)
        if (!is_int[j])
            s.fractional_cols.push_back(j);
    return s;
}

HPolyhedron fix_integers(const HPolyhedron& poly, const VariableSplit& split, std::span<const int> bits) {
    std::vector<std::string> names;
    for (std::size_t j : split.fractional_cols)
        names.push_back(poly.variables()[j]);
    HPolyhedron out(std::move(names));
    for (const auto& r : poly.rows()) {
        Row n;
        n.rel = r.rel;
        n.rhs = r.rhs;
        for (std::size_t i = 0; i < split.integer_cols.size(); ++i)
            if (bits[i])
                n.rhs -= r.coeffs[split.integer_cols[i]];
        for (std::size_t j : split.fractional_cols)
            n.coeffs.push_back(r.coeffs[j]);
        out.add_row(std::move(n));
    }
    return out;
}

std::vector<IntegerAssignment> enumerate_feasible_points(const HPolyhedron& poly,
                                                         std::span<const std::string> integer_vars) {
    if (integer_vars.size() > max_enumerated_integer_vars)
        throw CapacityError("enumeration limited to " + std::to_string(max_enumerated_integer_vars) +
                            " integer variables, got " + std::to_string(integer_vars.size()));
    VariableSplit split = split_variables(poly, integer_vars);
    const std::size_t d = integer_vars.size();
    std::vector<IntegerAssignment> out;
    std::vector<int> bits(d);
    for (unsigned long long p = 0; p < (1ULL << d); ++p) {
        for (std::size_t i = 0; i < d; ++i)
            bits[i] = static_cast<int>((p >> (d - 1 - i)) & 1ULL);
        HPolyhedron slice = fix_integers(poly, split, bits);
        if (auto w = find_feasible_point(slice))
            out.push_back({bits, std::move(*w)});
    }
    return out;
}

namespace {

bool is_bounded(const HPolyhedron& poly) {
    for (std::size_t j = 0; j < poly.dimension(); ++j) {
        std::vector<Rational> c(poly.dimension(), Rational(0));
        c[j] = 1;
        for (Sense s : {Sense::Maximize, Sense::Minimize})
            if (solve_lp(poly, c, s).status == LpStatus::Unbounded)
                return false;
    }
    return true;
}

struct Echelon {
    // Reduced rows: coefficient block and rhs; pivots[k] = pivot column of row k.
    std::vector<std::vector<Rational>> rows;
    std::vector<Rational> rhs;
    std::vector<std::size_t> pivots;

    // Returns false if the row is dependent (consistent or not).
    bool add(std::vector<Rational> a, Rational b, bool* inconsistent = nullptr) {
        for (std::size_t k = 0; k < rows.size(); ++k) {
            const Rational f = a[pivots[k]];
            if (sgn(f) == 0)
                continue;
            for (std::size_t j = 0; j < a.size(); ++j)
                if (sgn(rows[k][j]) != 0)
                    a[j] -= f * rows[k][j];
            b -= f * rhs[k];
        }
        std::size_t p = a.size();
        for (std::size_t j = 0; j < a.size(); ++j)
            if (sgn(a[j]) != 0) {
                p = j;
                break;
            }
        if (p == a.size()) {
            if (inconsistent)
                *inconsistent = sgn(b) != 0;
            return false;
        }
        Rational inv = 1 / a[p];
        for (auto& v : a)
            v *= inv;
        b *= inv;
        for (std::size_t k = 0; k < rows.size(); ++k) {
            const Rational f = rows[k][p];
            if (sgn(f) == 0)
                continue;
            for (std::size_t j = 0; j < a.size(); ++j)
                if (sgn(a[j]) != 0)
                    rows[k][j] -= f * a[j];
            rhs[k] -= f * b;
        }
        rows.push_back(std::move(a));
        rhs.push_back(std::move(b));
        pivots.push_back(p);
        return true;
    }

    std::vector<Rational> solution(std::size_t n) const {
        std::vector<Rational> x(n, Rational(0));
        for (std::size_t k = 0; k < rows.size(); ++k)
            x[pivots[k]] = rhs[k];
        return x;
    }
};

void vertex_search(const HPolyhedron& poly, const std::vector<std::size_t>& ineq, std::size_t from,
                   const Echelon& state, std::set<std::vector<Rational>>& found) {
    const std::size_t n = poly.dimension();
    if (state.rows.size() == n) {
        auto x = state.solution(n);
        if (poly.satisfies(x))
            found.insert(std::move(x));
        return;
    }
    std::size_t need = n - state.rows.size();
    for (std::size_t t = from; t + need <= ineq.size(); ++t) {
        Echelon next = state;
        const Row& r = poly.rows()[ineq[t]];
        if (next.add(r.coeffs, r.rhs))
            vertex_search(poly, ineq, t + 1, next, found);
    }
}

} // namespace

std::vector<std::vector<Rational>> enumerate_vertices(const HPolyhedron& poly) {
    const std::size_t n = poly.dimension();
    if (!is_feasible(poly))
        return {};
    if (n == 0)
        return {std::vector<Rational>{}};
    Echelon base;
    std::vector<std::size_t> ineq;
    for (std::size_t i = 0; i < poly.row_count(); ++i) {
        const Row& r = poly.rows()[i];
        if (r.rel == Relation::Equal)
            base.add(r.coeffs, r.rhs);
        else if (!is_zero_row(r))
            ineq.push_back(i);
    }
    std::set<std::vector<Rational>> found;
    vertex_search(poly, ineq, 0, base, found);
    return {found.begin(), found.end()};
}

VPolytope canonical_product_relaxation(const HPolyhedron& poly, std::span<const std::string> integer_vars) {
    VariableSplit split = split_variables(poly, integer_vars);
    const int d = static_cast<int>(integer_vars.size());
    const long dw = static_cast<long>(split.fractional_cols.size());

    std::vector<ProductKey> keys;
    for (auto& s : nonempty_subsets(d))
        keys.emplace_back(s);
    if (dw > 0) {
        std::vector<std::vector<int>> all{{}};
        for (auto& s : nonempty_subsets(d))
            all.push_back(s);
        for (auto& s : all)
            for (long j = 0; j < dw; ++j)
                keys.emplace_back(s, j);
        std::sort(keys.begin(), keys.end());
    }
    std::vector<std::string> labels;
    for (const auto& k : keys)
        labels.push_back(format_key(k));
    VPolytope vp(std::move(labels));

    auto points = enumerate_feasible_points(poly, integer_vars);
    for (const auto& pt : points) {
        std::vector<std::vector<Rational>> ws;
        if (dw == 0) {
            ws.emplace_back();
        } else {
            HPolyhedron slice = fix_integers(poly, split, pt.bits);
            if (!is_bounded(slice))
                throw PreconditionError("unbounded fractional slice; D-hat needs bounded slices");
            ws = enumerate_vertices(slice);
        }
        for (const auto& w : ws) {
            SparseProductVector f = dw == 0 ? product_section(pt.bits) : mixed_product_section(pt.bits, w);
            std::vector<Rational> v;
            v.reserve(keys.size());
            for (const auto& k : keys)
                v.push_back(value_at(f, k));
            vp.add_vertex(std::move(v));
        }
    }
    return vp;
}

bool in_hull(std::span<const Rational> point, const VPolytope& vp) {
    if (point.size() != vp.dimension())
        throw InputError("in_hull: point has " + std::to_string(point.size()) + " coordinates, polytope " +
                         std::to_string(vp.dimension()));
    if (vp.empty())
        return false;
    const std::size_t dim = vp.dimension(), nv = vp.size();
    std::vector<std::vector<Rational>> m(dim + 1, std::vector<Rational>(nv));
    std::vector<Rational> rhs(dim + 1);
    for (std::size_t k = 0; k < dim; ++k) {
        for (std::size_t v = 0; v < nv; ++v)
            m[k][v] = vp.vertices()[v][k];
        rhs[k] = point[k];
    }
    for (std::size_t v = 0; v < nv; ++v)
        m[dim][v] = 1;
    rhs[dim] = 1;
    std::vector<Rational> cost(nv, Rational(0));
    return solve_standard_form(m, rhs, cost).status == LpStatus::Optimal;
}

std::optional<ConflictWitness> is_conflicting(const std::vector<std::vector<Rational>>& s, const VPolytope& vp) {
    for (std::size_t i = 0; i < s.size(); ++i)
        if (in_hull(s[i], vp))
            throw PreconditionError("member " + std::to_string(i) + " of the set lies inside the polytope");
    if (s.empty() || vp.empty())
        return std::nullopt;
    const std::size_t dim = vp.dimension(), ns = s.size(), nv = vp.size();
    const std::size_t cols = ns + nv;
    std::vector<std::vector<Rational>> m(dim + 2, std::vector<Rational>(cols));
    std::vector<Rational> rhs(dim + 2, Rational(0));
    for (std::size_t k = 0; k < dim; ++k) {
        for (std::size_t i = 0; i < ns; ++i)
            m[k][i] = s[i][k];
        for (std::size_t v = 0; v < nv; ++v)
            m[k][ns + v] = -vp.vertices()[v][k];
    }
    for (std::size_t i = 0; i < ns; ++i)
        m[dim][i] = 1;
    for (std::size_t v = 0; v < nv; ++v)
        m[dim + 1][ns + v] = 1;
    rhs[dim] = 1;
    rhs[dim + 1] = 1;
    std::vector<Rational> cost(cols, Rational(0));
    auto r = solve_standard_form(m, rhs, cost);
    if (r.status != LpStatus::Optimal)
        return std::nullopt;
    ConflictWitness w;
    w.lambda.assign(r.solution.begin(), r.solution.begin() + static_cast<long>(ns));
    w.mu.assign(r.solution.begin() + static_cast<long>(ns), r.solution.end());
    w.point.assign(dim, Rational(0));
    for (std::size_t i = 0; i < ns; ++i)
        for (std::size_t k = 0; k < dim; ++k)
            w.point[k] += w.lambda[i] * s[i][k];
    return w;
}

bool verify_conflict_witness(const std::vector<std::vector<Rational>>& s, const VPolytope& vp,
                             const ConflictWitness& w, std::string* why) {
    auto fail = [&](const std::string& m) {
        if (why)
            *why = m;
        return false;
    };
    if (w.lambda.size() != s.size() || w.mu.size() != vp.size() || w.point.size() != vp.dimension())
        return fail("witness shape mismatch");
    Rational sl = 0, sm = 0;
    for (const auto& v : w.lambda) {
        if (sgn(v) < 0)
            return fail("negative lambda");
        sl += v;
    }
    for (const auto& v : w.mu) {
        if (sgn(v) < 0)
            return fail("negative mu");
        sm += v;
    }
    if (sl != 1 || sm != 1)
        return fail("weights do not sum to 1");
    for (std::size_t k = 0; k < vp.dimension(); ++k) {
        Rational a = 0, b = 0;
        for (std::size_t i = 0; i < s.size(); ++i)
            a += w.lambda[i] * s[i][k];
        for (std::size_t v = 0; v < vp.size(); ++v)
            if (sgn(w.mu[v]) != 0)
                b += w.mu[v] * vp.vertices()[v][k];
        if (a != w.point[k] || b != w.point[k])
            return fail("coordinate " + vp.labels()[k] + ": " + format_rational(a) + " vs " + format_rational(b));
    }
    return true;
}

HPolyhedron hull_h_representation(const VPolytope& vp, std::vector<std::string> names) {
    if (names.size() != vp.dimension())
        throw InputError("hull_h_representation: name count differs from dimension");
    if (vp.empty())
        return infeasible_polyhedron(names);
    std::vector<std::string> vars = names;
    std::vector<std::string> weights;
    for (std::size_t v = 0; v < vp.size(); ++v) {
        weights.push_back("_lambda" + std::to_string(v));
        vars.push_back(weights.back());
    }
    const std::size_t dim = vp.dimension();
    HPolyhedron sys(vars);
    for (std::size_t k = 0; k < dim; ++k) {
        SparseTerms t{{k, Rational(1)}};
        for (std::size_t v = 0; v < vp.size(); ++v)
            if (sgn(vp.vertices()[v][k]) != 0)
                t.emplace_back(dim + v, -vp.vertices()[v][k]);
        sys.add_row(t, Relation::Equal, 0);
    }
    SparseTerms sum;
    for (std::size_t v = 0; v < vp.size(); ++v) {
        sum.emplace_back(dim + v, Rational(1));
        sys.add_ge({{dim + v, Rational(1)}}, 0);
    }
    sys.add_row(sum, Relation::Equal, 1);
    return fm_eliminate_all(sys, weights);
}

HPolyhedron mixed_integer_hull(const HPolyhedron& poly, std::span<const std::string> integer_vars) {
    VariableSplit split = split_variables(poly, integer_vars);
    VPolytope vp(poly.variables());
    for (const auto& a : enumerate_feasible_points(poly, integer_vars))
        for (const auto& w : enumerate_vertices(fix_integers(poly, split, a.bits))) {
            std::vector<Rational> v(poly.dimension());
            for (std::size_t i = 0; i < split.integer_cols.size(); ++i)
                v[split.integer_cols[i]] = a.bits[i];
            for (std::size_t j = 0; j < split.fractional_cols.size(); ++j)
                v[split.fractional_cols[j]] = w[j];
            vp.add_vertex(std::move(v));
        }
    return hull_h_representation(vp, poly.variables());
}

} // namespace prodrel

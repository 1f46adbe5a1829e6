#include "prodrel/lp.hpp"

#include "prodrel/errors.hpp"

namespace prodrel {

const char* to_string(LpStatus status) {
    switch (status) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
    }
    return "?";
}

namespace {

// Dense tableau for min cost.y, M y = rhs, y >= 0 with one artificial column
// per row. Artificial columns are kept to the end so that B^-1 can be read off.
class Tableau {
public:
    Tableau(const std::vector<std::vector<Rational>>& m, std::span<const Rational> rhs)
        : rows_(m.size()), real_(m[0].size()),
          width_(real_ + rows_ + 1), a_(rows_ * width_), basis_(rows_), sign_(rows_, 1) {
        for (std::size_t i = 0; i < rows_; ++i) {
            sign_[i] = sgn(rhs[i]) < 0 ? -1 : 1;
            for (std::size_t j = 0; j < real_; ++j)
                if (sgn(m[i][j]) != 0)
                    at(i, j) = sign_[i] < 0 ? Rational(-m[i][j]) : m[i][j];
            at(i, real_ + i) = 1;
            at(i, width_ - 1) = sign_[i] < 0 ? Rational(-rhs[i]) : rhs[i];
            basis_[i] = real_ + i;
        }
    }

    std::size_t rows() const { return rows_; }
    std::size_t real() const { return real_; }
    std::size_t total() const { return real_ + rows_; }
    Rational& at(std::size_t i, std::size_t j) { return a_[i * width_ + j]; }
    const Rational& rhs(std::size_t i) const { return a_[i * width_ + width_ - 1]; }
    std::vector<std::size_t>& basis() { return basis_; }
    int sign(std::size_t i) const { return sign_[i]; }

    // Reduced costs d_j = cost_j - c_B B^-1 M_j over all columns plus the
    // objective value in the last slot.
    void price(const std::vector<Rational>& cost) {
        d_.assign(width_, Rational(0));
        for (std::size_t j = 0; j < total(); ++j)
            d_[j] = cost[j];
        for (std::size_t i = 0; i < rows_; ++i) {
            const Rational& cb = cost[basis_[i]];
            if (sgn(cb) == 0)
                continue;
            for (std::size_t j = 0; j < width_; ++j) {
                const Rational& v = a_[i * width_ + j];
                if (sgn(v) != 0)
                    d_[j] -= cb * v;
            }
        }
        // d_[last] now holds -objective.
    }

    const Rational& reduced(std::size_t j) const { return d_[j]; }
    Rational value() const { return -d_[width_ - 1]; }

    void pivot(std::size_t r, std::size_t c) {
        Rational inv = 1 / at(r, c);
        nz_.clear();
        for (std::size_t j = 0; j < width_; ++j) {
            Rational& v = a_[r * width_ + j];
            if (sgn(v) != 0) {
                v *= inv;
                nz_.push_back(j);
            }
        }
        auto eliminate = [&](Rational* row) {
            if (sgn(row[c]) == 0)
                return;
            Rational f = row[c];
            for (std::size_t j : nz_)
                row[j] -= f * a_[r * width_ + j];
        };
        for (std::size_t i = 0; i < rows_; ++i)
            if (i != r)
                eliminate(&a_[i * width_]);
        eliminate(d_.data());
        basis_[r] = c;
    }

    // Bland's rule. Returns false when no improving column exists.
    bool entering(std::size_t limit, std::size_t& col) const {
        for (std::size_t j = 0; j < limit; ++j)
            if (sgn(d_[j]) < 0) {
                col = j;
                return true;
            }
        return false;
    }

    // Minimum ratio, ties to the lowest basic index. npos when unbounded.
    std::size_t leaving(std::size_t c) {
        std::size_t best = npos;
        Rational best_ratio;
        for (std::size_t i = 0; i < rows_; ++i) {
            const Rational& v = at(i, c);
            if (sgn(v) <= 0)
                continue;
            Rational ratio = rhs(i) / v;
            if (best == npos || ratio < best_ratio || (ratio == best_ratio && basis_[i] < basis_[best])) {
                best = i;
                best_ratio = std::move(ratio);
            }
        }
        return best;
    }

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
    std::size_t rows_, real_, width_;
    std::vector<Rational> a_;
    std::vector<Rational> d_;
    std::vector<std::size_t> basis_;
    std::vector<int> sign_;
    std::vector<std::size_t> nz_;
};

std::vector<Rational> read_multipliers(Tableau& t, const std::vector<Rational>& cost) {
    std::vector<Rational> pi(t.rows());
    for (std::size_t i = 0; i < t.rows(); ++i) {
        Rational v = cost[t.real() + i] - t.reduced(t.real() + i);
        pi[i] = t.sign(i) < 0 ? Rational(-v) : v;
    }
    return pi;
}

} // namespace

StandardFormResult solve_standard_form(const std::vector<std::vector<Rational>>& matrix,
                                       std::span<const Rational> rhs, std::span<const Rational> cost,
                                       const StandardFormOptions& options) {
    if (matrix.size() != rhs.size())
        throw InputError("standard form: row count mismatch");
    const std::size_t ncols = cost.size();
    for (const auto& row : matrix)
        if (row.size() != ncols)
            throw InputError("standard form: column count mismatch");

    std::vector<std::vector<Rational>> m = matrix;
    if (m.empty()) {
        // No constraints: y = 0 unless some cost is negative.
        StandardFormResult res;
        for (std::size_t j = 0; j < ncols; ++j)
            if (sgn(cost[j]) < 0) {
                res.status = LpStatus::Unbounded;
                res.ray.assign(ncols, Rational(0));
                res.ray[j] = 1;
                res.solution.assign(ncols, Rational(0));
                return res;
            }
        res.status = LpStatus::Optimal;
        res.solution.assign(ncols, Rational(0));
        res.objective = 0;
        return res;
    }

    Tableau t(m, rhs);
    const std::size_t r = t.rows();
    const std::size_t total = t.total();

    // Phase one.
    std::vector<Rational> cost1(total, Rational(0));
    for (std::size_t i = 0; i < r; ++i)
        cost1[ncols + i] = 1;
    t.price(cost1);
    std::size_t col;
    while (t.entering(ncols, col)) {
        std::size_t row = t.leaving(col);
        if (row == Tableau::npos)
            break; // cannot happen: phase one is bounded below by 0
        t.pivot(row, col);
    }
    StandardFormResult res;
    if (sgn(t.value()) > 0) {
        res.status = LpStatus::Infeasible;
        res.multipliers = read_multipliers(t, cost1);
        res.objective = t.value();
        return res;
    }
    // Drive zero-level artificials out of the basis where possible.
    for (std::size_t i = 0; i < r; ++i) {
        if (t.basis()[i] < ncols)
            continue;
        for (std::size_t j = 0; j < ncols; ++j)
            if (sgn(t.at(i, j)) != 0) {
                t.pivot(i, j);
                break;
            }
    }

    // Phase two; artificials may not re-enter.
    std::vector<Rational> cost2(total, Rational(0));
    for (std::size_t j = 0; j < ncols; ++j)
        cost2[j] = cost[j];
    t.price(cost2);
    for (;;) {
        if (options.stop_at && t.value() <= *options.stop_at)
            break;
        if (!t.entering(ncols, col))
            break;
        std::size_t row = t.leaving(col);
        if (row == Tableau::npos) {
            res.status = LpStatus::Unbounded;
            res.ray.assign(ncols, Rational(0));
            res.ray[col] = 1;
            for (std::size_t i = 0; i < r; ++i)
                if (t.basis()[i] < ncols)
                    res.ray[t.basis()[i]] = -t.at(i, col);
            res.solution.assign(ncols, Rational(0));
            for (std::size_t i = 0; i < r; ++i)
                if (t.basis()[i] < ncols)
                    res.solution[t.basis()[i]] = t.rhs(i);
            return res;
        }
        t.pivot(row, col);
    }
    res.status = LpStatus::Optimal;
    res.solution.assign(ncols, Rational(0));
    for (std::size_t i = 0; i < r; ++i)
        if (t.basis()[i] < ncols)
            res.solution[t.basis()[i]] = t.rhs(i);
    res.multipliers = read_multipliers(t, cost2);
    res.objective = t.value();
    return res;
}

namespace {

// The primal max c.x, A_le x <= b_le, A_eq x = b_eq is solved through its dual
// min b.y, A^T y = c, y_le >= 0, with equality multipliers split in two.
struct DualProblem {
    std::vector<std::vector<Rational>> m; // n x cols
    std::vector<Rational> cost;
    std::vector<std::size_t> source; // original row per column
    std::vector<int> sign;           // +1 / -1 for split equality columns
};

DualProblem build_dual(const HPolyhedron& poly) {
    DualProblem d;
    const std::size_t n = poly.dimension();
    for (std::size_t i = 0; i < poly.row_count(); ++i) {
        d.source.push_back(i);
        d.sign.push_back(1);
        if (poly.rows()[i].rel == Relation::Equal) {
            d.source.push_back(i);
            d.sign.push_back(-1);
        }
    }
    const std::size_t cols = d.source.size();
    d.m.assign(n, std::vector<Rational>(cols));
    d.cost.resize(cols);
    for (std::size_t c = 0; c < cols; ++c) {
        const Row& row = poly.rows()[d.source[c]];
        for (std::size_t v = 0; v < n; ++v)
            if (sgn(row.coeffs[v]) != 0)
                d.m[v][c] = d.sign[c] < 0 ? Rational(-row.coeffs[v]) : row.coeffs[v];
        d.cost[c] = d.sign[c] < 0 ? Rational(-row.rhs) : row.rhs;
    }
    return d;
}

std::vector<Rational> fold_columns(const DualProblem& d, const std::vector<Rational>& y, std::size_t rows) {
    std::vector<Rational> out(rows, Rational(0));
    for (std::size_t c = 0; c < y.size(); ++c)
        if (sgn(y[c]) != 0)
            out[d.source[c]] += d.sign[c] < 0 ? Rational(-y[c]) : y[c];
    return out;
}

std::vector<Rational> farkas_from_ray(const HPolyhedron& poly, const DualProblem& d, const std::vector<Rational>& ray) {
    auto lambda = fold_columns(d, ray, poly.row_count());
    Rational lb = 0;
    for (std::size_t i = 0; i < lambda.size(); ++i)
        lb += lambda[i] * poly.rows()[i].rhs;
    Rational scale = -1 / lb;
    for (auto& v : lambda)
        v *= scale;
    return lambda;
}

} // namespace

LpResult solve_lp(const HPolyhedron& poly, std::span<const Rational> objective, Sense sense) {
    const std::size_t n = poly.dimension();
    if (objective.size() != n)
        throw InputError("objective has " + std::to_string(objective.size()) + " entries, expected " +
                         std::to_string(n));
    std::vector<Rational> c(objective.begin(), objective.end());
    if (sense == Sense::Minimize)
        for (auto& v : c)
            v = -v;

    DualProblem d = build_dual(poly);
    StandardFormResult dr = solve_standard_form(d.m, c, d.cost);
    LpResult out;
    if (dr.status == LpStatus::Optimal) {
        out.status = LpStatus::Optimal;
        out.point = dr.multipliers;
        Rational v = dot(objective, out.point);
        out.objective = v;
        out.certificate = fold_columns(d, dr.solution, poly.row_count());
        return out;
    }
    if (dr.status == LpStatus::Unbounded) {
        out.status = LpStatus::Infeasible;
        out.certificate = farkas_from_ray(poly, d, dr.ray);
        return out;
    }
    // Dual infeasible: the phase-one multipliers are an improving primal ray.
    std::vector<Rational> ray = dr.multipliers;
    std::vector<Rational> zero(n, Rational(0));
    StandardFormResult fr = solve_standard_form(d.m, zero, d.cost);
    if (fr.status == LpStatus::Unbounded) {
        out.status = LpStatus::Infeasible;
        out.certificate = farkas_from_ray(poly, d, fr.ray);
        return out;
    }
    out.status = LpStatus::Unbounded;
    out.point = fr.multipliers;
    out.certificate = std::move(ray);
    return out;
}

std::optional<std::vector<Rational>> find_feasible_point(const HPolyhedron& poly) {
    std::vector<Rational> zero(poly.dimension(), Rational(0));
    DualProblem d = build_dual(poly);
    StandardFormResult fr = solve_standard_form(d.m, zero, d.cost);
    if (fr.status == LpStatus::Unbounded)
        return std::nullopt;
    return fr.multipliers;
}

bool is_feasible(const HPolyhedron& poly) {
    return find_feasible_point(poly).has_value();
}

bool max_at_most(const HPolyhedron& poly, std::span<const Rational> objective, const Rational& bound) {
    if (objective.size() != poly.dimension())
        throw InputError("objective dimension mismatch");
    DualProblem d = build_dual(poly);
    StandardFormOptions opt;
    opt.stop_at = bound;
    StandardFormResult dr = solve_standard_form(d.m, objective, d.cost, opt);
    if (dr.status == LpStatus::Optimal)
        return dr.objective <= bound;
    if (dr.status == LpStatus::Unbounded)
        return true; // primal empty
    return !is_feasible(poly);
}

bool check_lp_result(const HPolyhedron& poly, std::span<const Rational> objective, Sense sense,
                     const LpResult& result, std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why)
            *why = msg;
        return false;
    };
    const std::size_t n = poly.dimension();
    const auto& rows = poly.rows();
    auto combine = [&](const std::vector<Rational>& y, std::vector<Rational>& lhs, Rational& rhs) {
        if (y.size() != rows.size())
            return false;
        lhs.assign(n, Rational(0));
        rhs = 0;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].rel == Relation::LessEqual && sgn(y[i]) < 0)
                return false;
            if (sgn(y[i]) == 0)
                continue;
            for (std::size_t j = 0; j < n; ++j)
                lhs[j] += y[i] * rows[i].coeffs[j];
            rhs += y[i] * rows[i].rhs;
        }
        return true;
    };
    std::vector<Rational> lhs;
    Rational rhs;
    switch (result.status) {
    case LpStatus::Optimal: {
        if (result.point.size() != n || !poly.satisfies(result.point))
            return fail("optimal point infeasible");
        if (!result.objective || *result.objective != dot(objective, result.point))
            return fail("objective value mismatch");
        if (!combine(result.certificate, lhs, rhs))
            return fail("dual multipliers malformed or negative");
        Rational s = sense == Sense::Maximize ? 1 : -1;
        for (std::size_t j = 0; j < n; ++j)
            if (lhs[j] != s * objective[j])
                return fail("dual combination does not reproduce the objective");
        if (rhs != s * *result.objective)
            return fail("dual bound differs from the optimum");
        return true;
    }
    case LpStatus::Infeasible: {
        if (!combine(result.certificate, lhs, rhs))
            return fail("Farkas multipliers malformed or negative");
        for (const auto& v : lhs)
            if (sgn(v) != 0)
                return fail("Farkas combination has a nonzero coefficient");
        if (rhs != -1)
            return fail("Farkas combination does not give 0 <= -1");
        return true;
    }
    case LpStatus::Unbounded: {
        if (result.point.size() != n || !poly.satisfies(result.point))
            return fail("unbounded: base point infeasible");
        const auto& r = result.certificate;
        if (r.size() != n)
            return fail("ray dimension mismatch");
        for (const auto& row : rows) {
            Rational v = dot(row.coeffs, r);
            if (row.rel == Relation::Equal ? sgn(v) != 0 : sgn(v) > 0)
                return fail("ray leaves the polyhedron");
        }
        Rational gain = dot(objective, r);
        if (sense == Sense::Maximize ? sgn(gain) <= 0 : sgn(gain) >= 0)
            return fail("ray does not improve the objective");
        return true;
    }
    }
    return fail("unknown status");
}

} // namespace prodrel

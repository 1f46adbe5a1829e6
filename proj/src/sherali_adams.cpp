#include "prodrel/sherali_adams.hpp"

#include "prodrel/errors.hpp"
#include "prodrel/fourier_motzkin.hpp"
#include "prodrel/hull.hpp"
#include "prodrel/lp.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>

namespace prodrel {

namespace {

// x_mask * w_frac (frac = -1: no fractional factor). (0, -1) is the constant.
using Monomial = std::pair<unsigned long long, long>;
using Expansion = std::map<Monomial, Rational>;

void check_box(const HPolyhedron& p, const VariableSplit& split) {
    for (std::size_t c : split.integer_cols) {
        std::vector<Rational> obj(p.dimension(), Rational(0));
        obj[c] = 1;
        bool upper = max_at_most(p, obj, 1);
        obj[c] = -1;
        bool lower = max_at_most(p, obj, 0);
        if (!upper || !lower)
            throw PreconditionError("integer variable '" + p.variables()[c] + "' is not confined to [0,1]");
    }
}

} // namespace

LiftedSystem sa_lift(const HPolyhedron& p, std::span<const std::string> integer_vars, int level) {
    VariableSplit split = split_variables(p, integer_vars);
    const int n = static_cast<int>(integer_vars.size());
    if (level < 0 || level > n)
        throw InputError("level " + std::to_string(level) + " outside 0.." + std::to_string(n));
    if (n >= 63)
        throw CapacityError("too many integer variables to lift");

    LiftedSystem out;
    out.level = level;
    out.original_vars = p.variables();
    out.integer_vars.assign(integer_vars.begin(), integer_vars.end());
    for (std::size_t c : split.fractional_cols)
        out.fractional_vars.push_back(p.variables()[c]);
    if (level == 0) {
        out.system = p;
        for (std::size_t i = 0; i < p.row_count(); ++i)
            out.origins.push_back({i, {}, {}});
        return out;
    }
    check_box(p, split);

    std::vector<long> col_int(p.dimension(), -1), col_frac(p.dimension(), -1);
    for (std::size_t i = 0; i < split.integer_cols.size(); ++i)
        col_int[split.integer_cols[i]] = static_cast<long>(i);
    for (std::size_t j = 0; j < split.fractional_cols.size(); ++j)
        col_frac[split.fractional_cols[j]] = static_cast<long>(j);

    std::vector<unsigned long long> us;
    for (unsigned long long m = 0; m < (1ULL << n); ++m)
        if (std::popcount(m) <= level)
            us.push_back(m);
    std::stable_sort(us.begin(), us.end(), [](auto a, auto b) {
        if (std::popcount(a) != std::popcount(b))
            return std::popcount(a) < std::popcount(b);
        return mask_to_set(a) < mask_to_set(b);
    });

    struct Pending {
        Expansion expr;
        Relation rel;
        LiftedRowOrigin origin;
    };
    std::vector<Pending> pending;
    std::set<ProductKey> lifted;
    for (std::size_t ri = 0; ri < p.row_count(); ++ri) {
        const Row& row = p.rows()[ri];
        for (auto u : us) {
            // W ranges over subsets of U.
            for (unsigned long long w = u;; w = (w - 1) & u) {
                // prod_{U-W} x_i prod_W (1 - x_i) = sum_{T <= W} (-1)^|T| x_{(U-W)+T}
                Expansion mult;
                for (unsigned long long t = w;; t = (t - 1) & w) {
                    mult[{(u & ~w) | t, -1}] += (std::popcount(t) % 2 ? -1 : 1);
                    if (t == 0)
                        break;
                }
                Expansion e;
                for (const auto& [mono, f] : mult) {
                    unsigned long long m = mono.first;
                    for (std::size_t c = 0; c < row.coeffs.size(); ++c) {
                        const Rational& a = row.coeffs[c];
                        if (sgn(a) == 0)
                            continue;
                        if (col_int[c] >= 0)
                            e[{m | (1ULL << col_int[c]), -1}] += f * a;
                        else
                            e[{m, col_frac[c]}] += f * a;
                    }
                    if (sgn(row.rhs) != 0)
                        e[{m, -1}] -= f * row.rhs;
                }
                pending.push_back({std::move(e), row.rel, {ri, mask_to_set(u), mask_to_set(w)}});
                if (w == 0)
                    break;
            }
        }
    }
    for (const auto& pr : pending)
        for (const auto& [mono, v] : pr.expr) {
            if (sgn(v) == 0)
                continue;
            int pc = std::popcount(mono.first);
            bool original = (mono.second < 0 && pc <= 1) || (mono.second >= 0 && pc == 0);
            if (!original)
                lifted.insert(ProductKey(mask_to_set(mono.first),
                                         mono.second < 0 ? std::nullopt : std::optional<long>(mono.second)));
        }

    std::vector<std::string> vars = p.variables();
    for (const auto& k : lifted) {
        out.lifted_keys.push_back(k);
        out.lifted_vars.push_back(key_variable_name(k, out.integer_vars, out.fractional_vars));
        vars.push_back(out.lifted_vars.back());
    }
    out.system = HPolyhedron(vars);
    std::map<ProductKey, std::size_t> lifted_col;
    for (std::size_t i = 0; i < out.lifted_keys.size(); ++i)
        lifted_col[out.lifted_keys[i]] = p.dimension() + i;

    std::set<std::vector<Rational>> seen;
    for (auto& pr : pending) {
        Row r;
        r.coeffs.assign(vars.size(), Rational(0));
        r.rel = pr.rel;
        r.rhs = 0;
        for (const auto& [mono, v] : pr.expr) {
            if (sgn(v) == 0)
                continue;
            int pc = std::popcount(mono.first);
            if (mono.second < 0 && pc == 0)
                r.rhs -= v;
            else if (mono.second < 0 && pc == 1)
                r.coeffs[split.integer_cols[static_cast<std::size_t>(std::countr_zero(mono.first))]] += v;
            else if (mono.second >= 0 && pc == 0)
                r.coeffs[split.fractional_cols[static_cast<std::size_t>(mono.second)]] += v;
            else
                r.coeffs[lifted_col.at(ProductKey(mask_to_set(mono.first),
                                                  mono.second < 0 ? std::nullopt
                                                                  : std::optional<long>(mono.second)))] += v;
        }
        if (is_zero_row(r)) {
            bool tautology = r.rel == Relation::Equal ? sgn(r.rhs) == 0 : sgn(r.rhs) >= 0;
            if (tautology)
                continue;
        }
        Row nr = normalize_row(r);
        std::vector<Rational> key = nr.coeffs;
        key.push_back(nr.rhs);
        key.push_back(nr.rel == Relation::Equal ? 1 : 0);
        if (!seen.insert(std::move(key)).second)
            continue;
        out.system.add_row(std::move(r));
        out.origins.push_back(std::move(pr.origin));
    }
    return out;
}

HPolyhedron sa_project(const LiftedSystem& lifted) {
    if (lifted.lifted_vars.size() > max_projected_lifted_vars)
        throw CapacityError("projection limited to " + std::to_string(max_projected_lifted_vars) +
                            " lifted variables, got " + std::to_string(lifted.lifted_vars.size()));
    if (lifted.lifted_vars.empty())
        return remove_redundant(lifted.system);
    return project_onto(lifted.system, lifted.original_vars);
}

std::vector<Rational> sa_extend_point(const LiftedSystem& lifted, std::span<const Rational> point) {
    const HPolyhedron& sys = lifted.system;
    if (point.size() != lifted.original_vars.size())
        throw InputError("point dimension differs from the original variables");
    std::vector<Rational> xs, ws;
    for (const auto& v : lifted.integer_vars)
        xs.push_back(point[static_cast<std::size_t>(
            std::find(lifted.original_vars.begin(), lifted.original_vars.end(), v) - lifted.original_vars.begin())]);
    for (const auto& v : lifted.fractional_vars)
        ws.push_back(point[static_cast<std::size_t>(
            std::find(lifted.original_vars.begin(), lifted.original_vars.end(), v) - lifted.original_vars.begin())]);
    std::vector<Rational> out(point.begin(), point.end());
    out.resize(sys.dimension());
    for (std::size_t i = 0; i < lifted.lifted_keys.size(); ++i) {
        const ProductKey& k = lifted.lifted_keys[i];
        Rational v = 1;
        for (int e : k.set)
            v *= xs[static_cast<std::size_t>(e)];
        if (k.frac)
            v *= ws[static_cast<std::size_t>(*k.frac)];
        out[lifted.original_vars.size() + i] = v;
    }
    return out;
}

MixedSectionTable sa_mixed_section(const LiftedSystem& lifted, const std::vector<std::vector<int>>& patterns) {
    MixedSectionTable t;
    t.x_vars = lifted.integer_vars;
    t.w_vars = lifted.fractional_vars;
    t.y_vars = lifted.lifted_vars;
    const std::size_t dw = t.w_vars.size();
    for (const auto& bits : patterns) {
        std::vector<AffineForm> forms;
        for (const auto& k : lifted.lifted_keys) {
            int prod = 1;
            for (int e : k.set)
                prod *= bits[static_cast<std::size_t>(e)];
            AffineForm f;
            f.w.assign(dw, Rational(0));
            f.constant = 0;
            if (k.frac)
                f.w[static_cast<std::size_t>(*k.frac)] = prod;
            else
                f.constant = prod;
            forms.push_back(std::move(f));
        }
        t.patterns.emplace(bits, std::move(forms));
    }
    return t;
}

BigInt sa_size_bound(const BigInt& r, unsigned long n, unsigned long t) {
    if (t > n)
        throw InputError("level exceeds the number of variables");
    BigInt pow;
    mpz_ui_pow_ui(pow.get_mpz_t(), 2, t);
    return r * binomial(n, t) * pow;
}

long sa_max_level_within(unsigned long n, const Rational& delta) {
    // C(n,t) 2^t <= 2^(p n / q)  <=>  (C(n,t) 2^t)^q <= 2^(p n)
    if (sgn(delta) < 0)
        return -1;
    const unsigned long q = delta.get_den().get_ui();
    const BigInt pn = delta.get_num() * BigInt(n);
    BigInt rhs;
    mpz_ui_pow_ui(rhs.get_mpz_t(), 2, pn.get_ui());
    long best = -1;
    for (unsigned long t = 0; t <= n / 2; ++t) {
        BigInt b = sa_size_bound(1, n, t), lhs;
        mpz_pow_ui(lhs.get_mpz_t(), b.get_mpz_t(), q);
        if (lhs > rhs)
            break;
        best = static_cast<long>(t);
    }
    return best;
}

} // namespace prodrel

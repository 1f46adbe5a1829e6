#include "prodrel/product.hpp"

#include "prodrel/errors.hpp"
#include "prodrel/hull.hpp"
#include "prodrel/io.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace prodrel {

namespace {

std::vector<int> support(std::span<const int> x) {
    std::vector<int> s;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] != 0 && x[i] != 1)
            throw InputError("product section needs a 0/1 vector");
        if (x[i])
            s.push_back(static_cast<int>(i));
    }
    return s;
}

// Subsets of `base`, as sorted index vectors (the empty set included).
std::vector<std::vector<int>> subsets_of(const std::vector<int>& base) {
    std::vector<std::vector<int>> out;
    const std::size_t b = base.size();
    if (b >= 63)
        throw CapacityError("support too large to enumerate subsets");
    for (unsigned long long m = 0; m < (1ULL << b); ++m) {
        std::vector<int> s;
        for (std::size_t i = 0; i < b; ++i)
            if (m >> i & 1ULL)
                s.push_back(base[i]);
        out.push_back(std::move(s));
    }
    return out;
}

} // namespace

SparseProductVector product_section(std::span<const int> x) {
    SparseProductVector f;
    for (auto& s : subsets_of(support(x)))
        if (!s.empty())
            f.emplace(ProductKey(std::move(s)), Rational(1));
    return f;
}

SparseProductVector mixed_product_section(std::span<const int> x, std::span<const Rational> w) {
    SparseProductVector f = product_section(x);
    for (auto& s : subsets_of(support(x)))
        for (std::size_t j = 0; j < w.size(); ++j)
            if (sgn(w[j]) != 0)
                f.emplace(ProductKey(s, static_cast<long>(j)), w[j]);
    return f;
}

Rational IndicatorExpansion::evaluate(std::span<const int> x) const {
    Rational v = constant;
    for (const auto& [k, a] : coefficients) {
        bool all = true;
        for (int i : k.set)
            all = all && x[static_cast<std::size_t>(i)] == 1;
        if (all)
            v += a;
    }
    return v;
}

IndicatorExpansion indicator_coefficients(std::span<const int> s) {
    const int d = static_cast<int>(s.size());
    if (d > max_indicator_dimension)
        throw CapacityError("indicator expansion limited to dimension " + std::to_string(max_indicator_dimension));
    std::vector<int> supp = support(s);
    std::vector<int> free;
    for (int i = 0; i < d; ++i)
        if (!s[static_cast<std::size_t>(i)])
            free.push_back(i);
    // a on supersets supp + T is defined by: a_supp = 1 and, for every strict
    // superset E', the coefficients on supp <= E <= E' sum to zero. Over the
    // free coordinates that is the Moebius inverse of the point mass at T = {}.
    const std::size_t nf = free.size();
    std::vector<Rational> a(1ULL << nf, Rational(0));
    a[0] = 1;
    for (std::size_t bit = 0; bit < nf; ++bit)
        for (unsigned long long t = 0; t < a.size(); ++t)
            if (t >> bit & 1ULL)
                a[t] -= a[t ^ (1ULL << bit)];

    IndicatorExpansion out;
    out.constant = 0;
    for (unsigned long long t = 0; t < a.size(); ++t) {
        if (sgn(a[t]) == 0)
            continue;
        std::vector<int> e = supp;
        for (std::size_t i = 0; i < nf; ++i)
            if (t >> i & 1ULL)
                e.push_back(free[i]);
        if (e.empty())
            out.constant = a[t];
        else
            out.coefficients.emplace(ProductKey(std::move(e)), a[t]);
    }
    return out;
}

std::vector<Rational> SubstitutionMatrix::apply(const SparseProductVector& f) const {
    std::vector<Rational> out = constants;
    for (std::size_t c = 0; c < columns.size(); ++c) {
        Rational v = value_at(f, columns[c]);
        if (sgn(v) == 0)
            continue;
        for (std::size_t r = 0; r < rows.size(); ++r)
            if (sgn(coeffs[r][c]) != 0)
                out[r] += coeffs[r][c] * v;
    }
    return out;
}

SubstitutionMatrix fourier_coefficients(int d, const std::map<std::vector<int>, std::vector<Rational>>& values,
                                        std::vector<std::string> row_names) {
    if (d > max_indicator_dimension)
        throw CapacityError("interpolation limited to dimension " + std::to_string(max_indicator_dimension));
    const std::size_t n = 1ULL << d;
    const std::size_t nr = row_names.size();
    // Index points by mask with bit i = x_i.
    std::vector<std::vector<Rational>> g(nr, std::vector<Rational>(n));
    for (std::size_t m = 0; m < n; ++m) {
        std::vector<int> x(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i)
            x[static_cast<std::size_t>(i)] = static_cast<int>(m >> i & 1ULL);
        auto it = values.find(x);
        if (it == values.end())
            throw InputError("interpolation table misses a 0/1 point");
        if (it->second.size() != nr)
            throw InputError("interpolation table entry has the wrong length");
        for (std::size_t r = 0; r < nr; ++r)
            g[r][m] = it->second[r];
    }
    for (auto& row : g)
        for (int bit = 0; bit < d; ++bit)
            for (std::size_t m = 0; m < n; ++m)
                if (m >> bit & 1ULL)
                    row[m] -= row[m ^ (1ULL << bit)];

    SubstitutionMatrix a;
    a.rows = std::move(row_names);
    a.constants.resize(nr);
    for (std::size_t r = 0; r < nr; ++r)
        a.constants[r] = g[r][0];
    std::vector<std::pair<ProductKey, std::size_t>> cols;
    for (std::size_t m = 1; m < n; ++m) {
        bool any = false;
        for (std::size_t r = 0; r < nr && !any; ++r)
            any = sgn(g[r][m]) != 0;
        if (any)
            cols.emplace_back(ProductKey(mask_to_set(m)), m);
    }
    std::sort(cols.begin(), cols.end());
    for (const auto& [k, m] : cols)
        a.columns.push_back(k);
    a.coeffs.assign(nr, std::vector<Rational>(cols.size()));
    for (std::size_t r = 0; r < nr; ++r)
        for (std::size_t c = 0; c < cols.size(); ++c)
            a.coeffs[r][c] = g[r][cols[c].second];
    return a;
}

SectionTable parse_section_table(std::string_view text, const HPolyhedron& q) {
    SectionTable g;
    std::size_t lineno = 0, pos = 0;
    std::optional<std::size_t> dx;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos)
            end = text.size();
        ++lineno;
        auto toks = split_ws(text.substr(pos, end - pos));
        pos = end + 1;
        if (toks.empty() || toks[0][0] == '#')
            continue;
        auto arrow = std::find(toks.begin(), toks.end(), "->");
        auto where = "line " + std::to_string(lineno) + ": ";
        if (arrow == toks.end())
            throw InputError(where + "expected 'point -> vector'");
        std::vector<int> point;
        for (auto it = toks.begin(); it != arrow; ++it) {
            if (*it != "0" && *it != "1")
                throw InputError(where + "point coordinates must be 0 or 1");
            point.push_back(*it == "1");
        }
        if (dx && *dx != point.size())
            throw InputError(where + "point length differs from earlier lines");
        dx = point.size();
        if (point.size() > q.dimension())
            throw InputError(where + "point longer than the formulation");
        std::vector<Rational> vec;
        for (auto it = arrow + 1; it != toks.end(); ++it) {
            try {
                vec.push_back(parse_rational(*it));
            } catch (const InputError& e) {
                throw InputError(where + e.what());
            }
        }
        if (vec.size() != q.dimension())
            throw InputError(where + "vector has " + std::to_string(vec.size()) + " entries, expected " +
                             std::to_string(q.dimension()));
        if (!g.entries.emplace(point, std::move(vec)).second)
            throw InputError(where + "duplicate point");
    }
    if (!dx)
        throw InputError("empty section table");
    g.x_vars.assign(q.variables().begin(), q.variables().begin() + static_cast<long>(*dx));
    return g;
}

std::string format_section_table(const SectionTable& g) {
    std::ostringstream os;
    for (const auto& [pt, vec] : g.entries) {
        for (int b : pt)
            os << b << ' ';
        os << "->";
        for (const auto& v : vec)
            os << ' ' << format_rational(v);
        os << '\n';
    }
    return os.str();
}

std::string key_variable_name(const ProductKey& key, std::span<const std::string> x_vars,
                              std::span<const std::string> w_vars) {
    if (key.set.empty())
        return w_vars[static_cast<std::size_t>(*key.frac)];
    if (key.set.size() == 1 && !key.frac)
        return x_vars[static_cast<std::size_t>(key.set[0])];
    std::string s = key.frac ? "v{" : "z{";
    for (std::size_t i = 0; i < key.set.size(); ++i)
        s += (i ? "," : "") + std::to_string(key.set[i] + 1);
    s += '}';
    if (key.frac)
        s += "w" + std::to_string(*key.frac + 1);
    return s;
}

namespace {

std::string point_text(const std::vector<int>& p) {
    std::string s = "(";
    for (std::size_t i = 0; i < p.size(); ++i)
        s += (i ? "," : "") + std::to_string(p[i]);
    return s + ")";
}

std::string row_text(const HPolyhedron& q, std::size_t i) {
    const Row& r = q.rows()[i];
    std::string s;
    for (std::size_t j = 0; j < r.coeffs.size(); ++j) {
        if (sgn(r.coeffs[j]) == 0)
            continue;
        if (!s.empty())
            s += " + ";
        s += format_rational(r.coeffs[j]) + "*" + q.variables()[j];
    }
    if (s.empty())
        s = "0";
    return "row " + std::to_string(i + 1) + " [" + s + (r.rel == Relation::Equal ? " == " : " <= ") +
           format_rational(r.rhs) + "]";
}

// Builds T[Q]: every column of Q outside `replaced` is kept under its product
// key; replaced column r becomes constants[r] + sum_c coeffs[r][c] z_c.
Translation substitute(const HPolyhedron& q, const std::vector<std::size_t>& replaced,
                       const std::vector<std::pair<std::size_t, ProductKey>>& kept, SubstitutionMatrix a,
                       std::span<const std::string> x_vars, std::span<const std::string> w_vars) {
    std::set<ProductKey> keyset;
    for (const auto& [col, k] : kept)
        keyset.insert(k);
    for (const auto& k : a.columns)
        keyset.insert(k);
    std::vector<ProductKey> keys(keyset.begin(), keyset.end());
    std::vector<std::string> names;
    for (const auto& k : keys)
        names.push_back(key_variable_name(k, x_vars, w_vars));
    auto index = [&](const ProductKey& k) {
        return static_cast<std::size_t>(std::lower_bound(keys.begin(), keys.end(), k) - keys.begin());
    };
    Translation t{HPolyhedron(names), a};
    for (const auto& r : q.rows()) {
        SparseTerms terms;
        Rational rhs = r.rhs;
        for (const auto& [col, k] : kept)
            if (sgn(r.coeffs[col]) != 0)
                terms.emplace_back(index(k), r.coeffs[col]);
        for (std::size_t i = 0; i < replaced.size(); ++i) {
            const Rational& c = r.coeffs[replaced[i]];
            if (sgn(c) == 0)
                continue;
            rhs -= c * a.constants[i];
            for (std::size_t j = 0; j < a.columns.size(); ++j)
                if (sgn(a.coeffs[i][j]) != 0)
                    terms.emplace_back(index(a.columns[j]), c * a.coeffs[i][j]);
        }
        t.system.add_row(terms, r.rel, rhs);
    }
    return t;
}

} // namespace

Translation translate_ef(const HPolyhedron& q, const SectionTable& g) {
    const std::size_t dx = g.x_vars.size();
    std::vector<std::size_t> xcols;
    for (const auto& v : g.x_vars)
        xcols.push_back(q.index_of(v));
    std::vector<bool> is_x(q.dimension(), false);
    for (std::size_t c : xcols)
        is_x[c] = true;
    std::vector<std::size_t> ycols;
    std::vector<std::string> ynames;
    for (std::size_t j = 0; j < q.dimension(); ++j)
        if (!is_x[j]) {
            ycols.push_back(j);
            ynames.push_back(q.variables()[j]);
        }

    // The table must be a section: feasible for Q, projecting to its point.
    for (const auto& [pt, vec] : g.entries) {
        if (pt.size() != dx || vec.size() != q.dimension())
            throw InputError("section entry " + point_text(pt) + " has the wrong shape");
        for (std::size_t i = 0; i < dx; ++i)
            if (vec[xcols[i]] != pt[i])
                throw CertificateError("section value at " + point_text(pt) + " does not project to the point");
        if (auto bad = q.first_violated(vec))
            throw CertificateError("section value at " + point_text(pt) + " violates " + row_text(q, *bad));
    }
    for (const auto& p : enumerate_feasible_points(q, g.x_vars))
        if (!g.entries.count(p.bits))
            throw InputError("section table misses feasible point " + point_text(p.bits));

    // Zero extension to all of {0,1}^dx, y-part only.
    std::map<std::vector<int>, std::vector<Rational>> values;
    for (unsigned long long m = 0; m < (1ULL << dx); ++m) {
        std::vector<int> x(dx);
        for (std::size_t i = 0; i < dx; ++i)
            x[i] = static_cast<int>(m >> i & 1ULL);
        std::vector<Rational> y(ycols.size(), Rational(0));
        if (auto it = g.entries.find(x); it != g.entries.end())
            for (std::size_t i = 0; i < ycols.size(); ++i)
                y[i] = it->second[ycols[i]];
        values.emplace(std::move(x), std::move(y));
    }
    SubstitutionMatrix a = fourier_coefficients(static_cast<int>(dx), values, ynames);
    std::vector<std::pair<std::size_t, ProductKey>> kept;
    for (std::size_t i = 0; i < dx; ++i)
        kept.emplace_back(xcols[i], ProductKey({static_cast<int>(i)}));
    return substitute(q, ycols, kept, std::move(a), g.x_vars, {});
}

Translation translate_mixed_ef(const HPolyhedron& q, const MixedSectionTable& g, const HPolyhedron& p) {
    const std::size_t dx = g.x_vars.size(), dw = g.w_vars.size(), dy = g.y_vars.size();
    if (dx + dw + dy != q.dimension())
        throw InputError("mixed section: x, w and y names must cover Q's variables");
    std::vector<std::size_t> xq, wq, yq;
    for (const auto& v : g.x_vars)
        xq.push_back(q.index_of(v));
    for (const auto& v : g.w_vars)
        wq.push_back(q.index_of(v));
    for (const auto& v : g.y_vars)
        yq.push_back(q.index_of(v));

    std::vector<std::string> pw_order(g.w_vars);
    VariableSplit split = split_variables(p, g.x_vars);
    if (split.fractional_cols.size() != dw)
        throw InputError("mixed section: P must be over exactly the x and w variables");
    std::vector<std::size_t> wp; // position in P's slice order of each w var
    for (const auto& v : g.w_vars) {
        std::size_t c = p.index_of(v);
        auto it = std::find(split.fractional_cols.begin(), split.fractional_cols.end(), c);
        wp.push_back(static_cast<std::size_t>(it - split.fractional_cols.begin()));
    }

    // Every feasible pattern needs a table, and the affine section must map
    // each slice vertex into Q (affinity extends this to the whole slice).
    std::vector<std::vector<int>> feasible;
    for (const auto& pt : enumerate_feasible_points(p, g.x_vars)) {
        auto it = g.patterns.find(pt.bits);
        if (it == g.patterns.end())
            throw InputError("mixed section: missing table for feasible pattern " + point_text(pt.bits));
        if (it->second.size() != dy)
            throw InputError("mixed section: pattern " + point_text(pt.bits) + " needs one form per y variable");
        feasible.push_back(pt.bits);
        HPolyhedron slice = fix_integers(p, split, pt.bits);
        for (const auto& ws : enumerate_vertices(slice)) {
            std::vector<Rational> vec(q.dimension(), Rational(0));
            for (std::size_t i = 0; i < dx; ++i)
                vec[xq[i]] = pt.bits[i];
            for (std::size_t j = 0; j < dw; ++j)
                vec[wq[j]] = ws[wp[j]];
            for (std::size_t i = 0; i < dy; ++i) {
                const AffineForm& f = it->second[i];
                Rational v = f.constant;
                for (std::size_t j = 0; j < dw && j < f.w.size(); ++j)
                    v += f.w[j] * vec[wq[j]];
                vec[yq[i]] = v;
            }
            if (auto bad = q.first_violated(vec))
                throw CertificateError("mixed section at pattern " + point_text(pt.bits) + " violates " +
                                       row_text(q, *bad));
        }
    }

    // y_i = sum_{x'} sum_E a^{x'}_E (sum_j b_ij z_{E w_j} + c_i z_E).
    std::map<ProductKey, std::vector<Rational>> acc;
    std::vector<Rational> constants(dy, Rational(0));
    auto add = [&](const ProductKey& k, std::size_t row, const Rational& v) {
        auto& col = acc[k];
        if (col.empty())
            col.assign(dy, Rational(0));
        col[row] += v;
    };
    for (const auto& bits : feasible) {
        const auto& forms = g.patterns.at(bits);
        IndicatorExpansion chi = indicator_coefficients(bits);
        std::vector<std::pair<std::vector<int>, Rational>> terms;
        if (sgn(chi.constant) != 0)
            terms.emplace_back(std::vector<int>{}, chi.constant);
        for (const auto& [k, a] : chi.coefficients)
            terms.emplace_back(k.set, a);
        for (const auto& [e, a] : terms)
            for (std::size_t i = 0; i < dy; ++i) {
                const AffineForm& f = forms[i];
                for (std::size_t j = 0; j < dw && j < f.w.size(); ++j)
                    if (sgn(f.w[j]) != 0)
                        add(ProductKey(e, static_cast<long>(j)), i, a * f.w[j]);
                if (sgn(f.constant) == 0)
                    continue;
                if (e.empty())
                    constants[i] += a * f.constant;
                else
                    add(ProductKey(e), i, a * f.constant);
            }
    }
    SubstitutionMatrix a;
    a.rows = g.y_vars;
    a.constants = constants;
    for (const auto& [k, col] : acc) {
        bool any = false;
        for (const auto& v : col)
            any = any || sgn(v) != 0;
        if (any)
            a.columns.push_back(k);
    }
    a.coeffs.assign(dy, std::vector<Rational>(a.columns.size()));
    for (std::size_t c = 0; c < a.columns.size(); ++c)
        for (std::size_t i = 0; i < dy; ++i)
            a.coeffs[i][c] = acc[a.columns[c]][i];

    std::vector<std::pair<std::size_t, ProductKey>> kept;
    for (std::size_t i = 0; i < dx; ++i)
        kept.emplace_back(xq[i], ProductKey({static_cast<int>(i)}));
    for (std::size_t j = 0; j < dw; ++j)
        kept.emplace_back(wq[j], ProductKey({}, static_cast<long>(j)));
    return substitute(q, yq, kept, std::move(a), g.x_vars, g.w_vars);
}

} // namespace prodrel

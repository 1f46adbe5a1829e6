#include "prodrel/cfl/general.hpp"

#include "prodrel/errors.hpp"
#include "prodrel/lp.hpp"

namespace prodrel::cfl {

std::string y_name(int i) { return "y" + std::to_string(i + 1); }
std::string x_name(int i, long j) { return "x" + std::to_string(i + 1) + "_" + std::to_string(j + 1); }

namespace {

void check_data(const CflData& d) {
    if (d.facilities() == 0 || d.clients < 0)
        throw InputError("CFL data needs at least one facility and a nonnegative client count");
    for (const auto& u : d.capacity)
        if (u < 0)
            throw InputError("negative capacity");
}

void guard(const CflData& d) {
    if (d.facilities() > max_exact_facilities)
        throw CapacityError("at most " + std::to_string(max_exact_facilities) + " facilities, got " +
                            std::to_string(d.facilities()));
}

std::string block_label(unsigned o, int n) {
    std::string s;
    for (int i = 0; i < n; ++i)
        if (o >> i & 1u)
            s += (s.empty() ? "" : ".") + std::to_string(i + 1);
    return "[" + s + "]";
}

} // namespace

HPolyhedron classic_lp(const CflData& data) {
    check_data(data);
    const int n = data.facilities();
    const long m = data.clients;
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i)
        names.push_back(y_name(i));
    for (int i = 0; i < n; ++i)
        for (long j = 0; j < m; ++j)
            names.push_back(x_name(i, j));
    HPolyhedron p(names);
    auto xc = [&](int i, long j) { return static_cast<std::size_t>(n + i * m + j); };
    for (int i = 0; i < n; ++i)
        for (long j = 0; j < m; ++j)
            p.add_row({{xc(i, j), Rational(1)}, {static_cast<std::size_t>(i), Rational(-1)}}, Relation::LessEqual, 0);
    for (long j = 0; j < m; ++j) {
        SparseTerms t;
        for (int i = 0; i < n; ++i)
            t.emplace_back(xc(i, j), 1);
        p.add_row(t, Relation::Equal, 1);
    }
    for (int i = 0; i < n; ++i) {
        SparseTerms t;
        for (long j = 0; j < m; ++j)
            t.emplace_back(xc(i, j), 1);
        t.emplace_back(static_cast<std::size_t>(i), -data.capacity[i]);
        p.add_row(t, Relation::LessEqual, 0);
    }
    for (std::size_t c = 0; c < names.size(); ++c) {
        p.add_row({{c, Rational(1)}}, Relation::LessEqual, 1);
        p.add_row({{c, Rational(-1)}}, Relation::LessEqual, 0);
    }
    return p;
}

std::vector<std::string> classic_integer_vars(const CflData& data) {
    std::vector<std::string> v;
    for (int i = 0; i < data.facilities(); ++i)
        v.push_back(y_name(i));
    return v;
}

bool metric_ok(const CflObjective& obj, std::string* why) {
    const std::size_t n = obj.connection.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t i2 = 0; i2 < n; ++i2)
            for (std::size_t j = 0; j < obj.connection[i].size(); ++j)
                for (std::size_t j2 = 0; j2 < obj.connection[i].size(); ++j2)
                    if (obj.connection[i][j] >
                        obj.connection[i][j2] + obj.connection[i2][j2] + obj.connection[i2][j]) {
                        if (why)
                            *why = "c(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") exceeds the path via " +
                                   std::to_string(i2 + 1) + "," + std::to_string(j2 + 1);
                        return false;
                    }
    return true;
}

IntegerOptimum integer_opt_exact(const CflData& data, const CflObjective& obj) {
    check_data(data);
    guard(data);
    const int n = data.facilities();
    const long m = data.clients;
    if (obj.opening.size() != static_cast<std::size_t>(n) || obj.connection.size() != static_cast<std::size_t>(n))
        throw InputError("objective does not match the instance");
    IntegerOptimum best;
    bool found = false;
    for (unsigned o = 0; o < (1u << n); ++o) {
        std::vector<int> open;
        Rational cap = 0, opening = 0;
        for (int i = 0; i < n; ++i)
            if (o >> i & 1u) {
                open.push_back(i);
                cap += data.capacity[i];
                opening += obj.opening[i];
            }
        if (cap < m)
            continue;
        // Transportation LP over the open facilities.
        std::vector<std::string> names;
        for (int i : open)
            for (long j = 0; j < m; ++j)
                names.push_back(x_name(i, j));
        HPolyhedron t(names);
        std::vector<Rational> cost;
        const long k = static_cast<long>(open.size());
        for (long a = 0; a < k; ++a)
            for (long j = 0; j < m; ++j)
                cost.push_back(obj.connection[open[a]][j]);
        for (long j = 0; j < m; ++j) {
            SparseTerms s;
            for (long a = 0; a < k; ++a)
                s.emplace_back(static_cast<std::size_t>(a * m + j), 1);
            t.add_row(s, Relation::Equal, 1);
        }
        for (long a = 0; a < k; ++a) {
            SparseTerms s;
            for (long j = 0; j < m; ++j)
                s.emplace_back(static_cast<std::size_t>(a * m + j), 1);
            t.add_row(s, Relation::LessEqual, data.capacity[open[a]]);
        }
        for (std::size_t c = 0; c < names.size(); ++c)
            t.add_row({{c, Rational(-1)}}, Relation::LessEqual, 0);
        Rational value = opening;
        if (m > 0) {
            LpResult r = solve_lp(t, cost, Sense::Minimize);
            if (r.status != LpStatus::Optimal)
                continue;
            value += *r.objective;
        }
        ++best.feasible_subsets;
        if (!found || value < best.value) {
            found = true;
            best.value = value;
            best.open.assign(n, 0);
            for (int i : open)
                best.open[i] = 1;
        }
    }
    if (!found)
        throw PreconditionError("no facility subset can serve all clients");
    return best;
}

std::size_t exact_ef_row_count(const CflData& data) {
    const std::size_t n = data.facilities(), m = data.clients;
    return 1 + n + n * m + (std::size_t{1} << n) * (1 + m + 3 * n * m + 2 * n);
}

HPolyhedron exact_ef(const CflData& data) {
    check_data(data);
    guard(data);
    const int n = data.facilities();
    const long m = data.clients;
    const unsigned blocks = 1u << n;
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i)
        names.push_back(y_name(i));
    for (int i = 0; i < n; ++i)
        for (long j = 0; j < m; ++j)
            names.push_back(x_name(i, j));
    const std::size_t per = 1 + n + n * m;
    auto base = [&](unsigned o) { return static_cast<std::size_t>(n + n * m + o * per); };
    for (unsigned o = 0; o < blocks; ++o) {
        std::string b = block_label(o, n);
        names.push_back("s" + b);
        for (int i = 0; i < n; ++i)
            names.push_back("y" + b + "_" + std::to_string(i + 1));
        for (int i = 0; i < n; ++i)
            for (long j = 0; j < m; ++j)
                names.push_back("x" + b + "_" + std::to_string(i + 1) + "_" + std::to_string(j + 1));
    }
    HPolyhedron p(names);
    auto s = [&](unsigned o) { return base(o); };
    auto y = [&](unsigned o, int i) { return base(o) + 1 + i; };
    auto x = [&](unsigned o, int i, long j) { return base(o) + 1 + n + i * m + j; };

    SparseTerms sum;
    for (unsigned o = 0; o < blocks; ++o)
        sum.emplace_back(s(o), 1);
    p.add_row(sum, Relation::Equal, 1);
    for (int i = 0; i < n; ++i) {
        SparseTerms t{{static_cast<std::size_t>(i), Rational(1)}};
        for (unsigned o = 0; o < blocks; ++o)
            t.emplace_back(y(o, i), -1);
        p.add_row(t, Relation::Equal, 0);
    }
    for (int i = 0; i < n; ++i)
        for (long j = 0; j < m; ++j) {
            SparseTerms t{{static_cast<std::size_t>(n + i * m + j), Rational(1)}};
            for (unsigned o = 0; o < blocks; ++o)
                t.emplace_back(x(o, i, j), -1);
            p.add_row(t, Relation::Equal, 0);
        }
    for (unsigned o = 0; o < blocks; ++o) {
        p.add_row({{s(o), Rational(-1)}}, Relation::LessEqual, 0);
        for (int i = 0; i < n; ++i)
            for (long j = 0; j < m; ++j)
                p.add_row({{x(o, i, j), Rational(1)}, {y(o, i), Rational(-1)}}, Relation::LessEqual, 0);
        for (long j = 0; j < m; ++j) {
            SparseTerms t{{s(o), Rational(-1)}};
            for (int i = 0; i < n; ++i)
                t.emplace_back(x(o, i, j), 1);
            p.add_row(t, Relation::Equal, 0);
        }
        for (int i = 0; i < n; ++i)
            for (long j = 0; j < m; ++j) {
                p.add_row({{x(o, i, j), Rational(-1)}}, Relation::LessEqual, 0);
                p.add_row({{x(o, i, j), Rational(1)}, {s(o), Rational(-1)}}, Relation::LessEqual, 0);
            }
        for (int i = 0; i < n; ++i) {
            SparseTerms t{{y(o, i), -data.capacity[i]}};
            for (long j = 0; j < m; ++j)
                t.emplace_back(x(o, i, j), 1);
            p.add_row(t, Relation::LessEqual, 0);
        }
        for (int i = 0; i < n; ++i) {
            if (o >> i & 1u)
                p.add_row({{y(o, i), Rational(1)}, {s(o), Rational(-1)}}, Relation::Equal, 0);
            else
                p.add_row({{y(o, i), Rational(1)}}, Relation::Equal, 0);
        }
    }
    return p;
}

} // namespace prodrel::cfl

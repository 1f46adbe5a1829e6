#pragma once

// Independent simulator of the two experiments, written from the
// experiment descriptions with plain loops (no masks, no closed forms).

#include "prodrel/rational.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace oracle {

using prodrel::Rational;

struct Outcome {
    Rational prob;
    std::vector<bool> open;
    std::vector<Rational> load;
};

struct Setup {
    int n;
    long m;
    Rational U, eps, p2, p1, ybar_l, load_l;
    std::vector<int> k, l, rest; // rest = F - k - l
};

inline Rational pw2(int e) {
    Rational r = 1;
    for (int i = 0; i < (e < 0 ? -e : e); ++i)
        r *= 2;
    return e < 0 ? 1 / r : r;
}

inline Setup setup(int n, const std::vector<int>& l) {
    Setup s;
    s.n = n;
    s.m = 1;
    for (int i = 0; i < 4; ++i)
        s.m *= n;
    s.m += 1;
    s.eps = pw2(-n * n);
    s.U = (Rational(s.m) - s.eps) / n;
    Rational nn = Rational(n) * n * (1 + Rational(1) / n);
    s.p2 = 20 / nn;
    s.p1 = 1 - s.p2;
    s.ybar_l = 20 * pw2(n - 1) / (nn * (pw2(n) - 1));
    // sum_j xbar_ij for i in l, over the expected opening.
    s.load_l = Rational(s.m) * (Rational(1) / (Rational(n) * n)) / n / s.ybar_l;
    s.l = l;
    for (int i = 0; i < n; ++i)
        s.k.push_back(i);
    for (int i = n; i < 3 * n; ++i) {
        bool in_l = false;
        for (int j : l)
            in_l = in_l || j == i;
        if (!in_l)
            s.rest.push_back(i);
    }
    return s;
}

inline bool member(const std::vector<int>& v, int i) {
    for (int x : v)
        if (x == i)
            return true;
    return false;
}

// All q subsets of F - k meeting l, as facility lists.
inline std::vector<std::vector<int>> case2_choices(const Setup& s) {
    std::vector<int> pool;
    for (int i = s.n; i < 3 * s.n; ++i)
        pool.push_back(i);
    std::vector<std::vector<int>> out;
    for (long bits = 0; bits < (1L << pool.size()); ++bits) {
        std::vector<int> q;
        bool meets = false;
        for (std::size_t t = 0; t < pool.size(); ++t)
            if (bits >> t & 1L) {
                q.push_back(pool[t]);
                meets = meets || member(s.l, pool[t]);
            }
        if (meets)
            out.push_back(q);
    }
    return out;
}

inline Outcome case2_outcome(const Setup& s, const std::vector<int>& q, const Rational& prob) {
    Outcome o{prob, std::vector<bool>(3 * s.n, false), std::vector<Rational>(3 * s.n, Rational(0))};
    Rational rest = s.m;
    for (int i : s.k)
        o.open[i] = true;
    for (int i : q) {
        o.open[i] = true;
        if (member(s.l, i)) {
            o.load[i] = s.load_l;
            rest -= s.load_l;
        }
    }
    for (int i : s.k)
        o.load[i] = rest / s.n;
    return o;
}

inline std::vector<Outcome> experiment_d(const Setup& s) {
    std::vector<Outcome> out;
    Outcome c1{s.p1, std::vector<bool>(3 * s.n, true), std::vector<Rational>(3 * s.n, Rational(0))};
    for (int i : s.l)
        c1.open[i] = false;
    for (int i : s.k)
        c1.load[i] = Rational(s.m) / s.n;
    out.push_back(c1);
    auto qs = case2_choices(s);
    for (const auto& q : qs)
        out.push_back(case2_outcome(s, q, s.p2 / static_cast<long>(qs.size())));
    return out;
}

// D*_{k,l} for the pair (l, l2).
inline std::vector<Outcome> experiment_dstar(const Setup& s, const std::vector<int>& l2) {
    std::vector<int> only_l;
    for (int i : s.l)
        if (!member(l2, i))
            only_l.push_back(i);
    std::vector<Outcome> out;
    Outcome c1{s.p1, std::vector<bool>(3 * s.n, true), std::vector<Rational>(3 * s.n, Rational(0))};
    for (int i : l2)
        c1.open[i] = false;
    for (int i : s.k)
        c1.load[i] = s.U;
    for (int i : only_l)
        c1.load[i] = s.eps / static_cast<long>(only_l.size());
    out.push_back(c1);
    auto qs = case2_choices(s);
    const Rational pq = s.p2 / static_cast<long>(qs.size());
    for (const auto& q : qs) {
        bool is_b = static_cast<int>(q.size()) == 2 * s.n - s.n;
        for (int i = s.n; i < 3 * s.n && is_b; ++i)
            is_b = member(q, i) != member(l2, i);
        if (!is_b) {
            out.push_back(case2_outcome(s, q, pq));
            continue;
        }
        Outcome o = case2_outcome(s, q, pq);
        // Take the case 1* surplus back, spread over l - l'.
        Rational cut = s.eps * s.p1 / pq / static_cast<long>(only_l.size());
        Rational rest = s.m;
        for (int i : only_l) {
            o.load[i] = s.load_l - cut;
            rest -= o.load[i];
        }
        for (int i : s.k)
            o.load[i] = rest / s.n;
        out.push_back(o);
    }
    return out;
}

// E[prod_{i in set} y_i * (x_{i0,j} if tagged)], clients exchangeable.
inline Rational expect(const Setup& s, const std::vector<Outcome>& d, const std::vector<int>& set,
                       std::optional<int> x_facility) {
    Rational e = 0;
    for (const auto& o : d) {
        bool all = true;
        for (int i : set)
            all = all && o.open[i];
        if (!all)
            continue;
        e += x_facility ? o.prob * o.load[*x_facility] / s.m : o.prob;
    }
    return e;
}

} // namespace oracle

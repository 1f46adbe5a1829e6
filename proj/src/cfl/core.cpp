#include "prodrel/cfl/core.hpp"

#include "prodrel/errors.hpp"
#include "prodrel/parallel.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace prodrel::cfl {

ExpectedVector expected_vector(const CflInstance& inst, FacilitySet l) {
    require_legal_l(inst, l);
    const int n = inst.n;
    const Rational n2 = Rational(n) * n;
    ExpectedVector v{std::vector<Rational>(inst.facilities()), std::vector<Rational>(inst.facilities())};
    for (int i = 0; i < inst.facilities(); ++i) {
        if (contains_facility(inst.k, i)) {
            v.y[i] = 1;
            v.x[i] = (1 - 1 / n2) / n;
        } else if (contains_facility(l, i)) {
            v.y[i] = 20 * pow2(n - 1) / (n2 * (1 + ratio(1, n)) * (pow2(n) - 1));
            v.x[i] = (1 / n2) / n;
        } else {
            v.y[i] = 1 - 10 / (n2 * (1 + ratio(1, n)));
            v.x[i] = 0;
        }
    }
    return v;
}

namespace {

void check_key(const CflInstance& inst, const CflKey& key) {
    if ((key.set & ~inst.all()) != 0)
        throw InputError("key " + key_label(key) + " names a facility outside the instance");
    if (key.x && (key.x->first < 0 || key.x->first >= inst.facilities() || key.x->second < 0 ||
                  key.x->second >= inst.m))
        throw InputError("key " + key_label(key) + " names an assignment outside the instance");
}

// Number of case 2 choices q containing a facilities of l and r of the rest
// of the pool (q must meet l).
Rational case2_count(const CflInstance& inst, int a, int r) {
    Rational c = pow2(2 * inst.n - a - r);
    if (a == 0)
        c -= pow2(inst.n - r);
    return c;
}

// Sum of |q & l| over the same choices.
Rational case2_l_mass(const CflInstance& inst, int a, int r) {
    const int n = inst.n;
    return pow2(n - r) * (a * pow2(n - a) + (n - a) * pow2(n - a - 1));
}

Rational counting_coord(const CflInstance& inst, FacilitySet l, const CflKey& key) {
    const FacilitySet rest = inst.pool & ~l;
    const int a = popcount(key.set & l), r = popcount(key.set & rest);
    const Rational n2 = Rational(inst.case2_subsets);
    if (!key.x)
        return (a == 0 ? inst.p_case1 : Rational(0)) + inst.p_case2 * case2_count(inst, a, r) / n2;
    const int i = key.x->first;
    if (contains_facility(inst.k, i)) {
        Rational c1 = a == 0 ? inst.p_case1 / inst.n : Rational(0);
        Rational c2 = inst.p_case2 / (n2 * inst.n * inst.m) *
                      (inst.m * case2_count(inst, a, r) - inst.load_l * case2_l_mass(inst, a, r));
        return c1 + c2;
    }
    if (contains_facility(l, i)) {
        const int a2 = popcount((key.set | (FacilitySet{1} << i)) & l);
        return inst.p_case2 * case2_count(inst, a2, r) / n2 * inst.load_l / inst.m;
    }
    return 0;
}

Rational enumeration_coord(const CflInstance& inst, FacilitySet l, const CflKey& key) {
    if (inst.n > max_enumeration_n)
        throw CapacityError("enumeration backend limited to n <= " + std::to_string(max_enumeration_n) +
                            "; use the counting backend");
    const int i = key.x ? key.x->first : -1;
    const Rational per_q = inst.p_case2 / Rational(inst.case2_subsets);
    Rational e = 0;
    if ((key.set & l) == 0) {
        if (!key.x)
            e += inst.p_case1;
        else if (contains_facility(inst.k, i))
            e += inst.p_case1 * ratio(inst.m, inst.n) / inst.m;
    }
    // Group q by |q & l|: load of k depends on it only.
    std::vector<long> hits(inst.n + 1, 0);
    for (FacilitySet q = 0;; q = (q - inst.pool) & inst.pool) {
        const FacilitySet open = inst.k | q;
        if ((q & l) && (key.set & ~open) == 0 && (i < 0 || contains_facility(open, i)))
            ++hits[popcount(q & l)];
        if (q == inst.pool)
            break;
    }
    for (int t = 1; t <= inst.n; ++t) {
        if (!hits[t])
            continue;
        Rational value = 1;
        if (key.x) {
            if (contains_facility(inst.k, i))
                value = (inst.m - t * inst.load_l) / inst.n / inst.m;
            else if (contains_facility(l, i))
                value = inst.load_l / inst.m;
            else
                value = 0;
        }
        e += per_q * hits[t] * value;
    }
    return e;
}

} // namespace

Rational core_coord(const CflInstance& inst, FacilitySet l, const CflKey& key, Backend backend) {
    require_legal_l(inst, l);
    check_key(inst, key);
    return backend == Backend::Counting ? counting_coord(inst, l, key) : enumeration_coord(inst, l, key);
}

Rational case1_coord(const CflInstance& inst, FacilitySet l, const CflKey& key) {
    require_legal_l(inst, l);
    check_key(inst, key);
    if (key.set & l)
        return 0;
    if (!key.x)
        return inst.p_case1;
    return contains_facility(inst.k, key.x->first) ? inst.p_case1 / inst.n : Rational(0);
}

Rational star_vector_coord(const CflInstance& inst, FacilitySet l, FacilitySet l2, const CflKey& key) {
    require_pair(inst, l, l2);
    Rational z = core_coord(inst, l, key);
    const FacilitySet e = key.set;
    if ((e & l2) == 0 && (e & l & ~l2) != 0)
        return z + case1_coord(inst, l2, key);
    if ((e & l) == 0 && (e & l2 & ~l) != 0)
        return z - case1_coord(inst, l, key);
    return z;
}

std::vector<CflKey> make_window(const CflInstance& inst, const WindowConfig& cfg) {
    const int f = inst.facilities();
    std::vector<CflKey> out;
    std::set<std::pair<FacilitySet, std::pair<int, long>>> seen;
    auto add = [&](const CflKey& k) {
        auto id = std::make_pair(k.set, k.x ? *k.x : std::make_pair(-1, -1L));
        if (seen.insert(id).second)
            out.push_back(k);
    };
    // Subsets of size <= s in size order, then lexicographic.
    auto subsets_upto = [&](int s, bool with_empty) {
        std::vector<FacilitySet> v;
        if (with_empty)
            v.push_back(0);
        for (int size = 1; size <= s; ++size) {
            std::vector<int> idx(size);
            for (int i = 0; i < size; ++i)
                idx[i] = i;
            while (true) {
                FacilitySet m = 0;
                for (int i : idx)
                    m |= FacilitySet{1} << i;
                v.push_back(m);
                int i = size - 1;
                while (i >= 0 && idx[i] == f - size + i)
                    --i;
                if (i < 0)
                    break;
                ++idx[i];
                for (int j = i + 1; j < size; ++j)
                    idx[j] = idx[j - 1] + 1;
            }
        }
        return v;
    };
    for (FacilitySet s : subsets_upto(std::min(cfg.max_set, f), false))
        add(CflKey{s, std::nullopt});

    std::mt19937_64 rng(cfg.seed);
    std::uniform_int_distribution<long> client(0, inst.m - 1);
    std::vector<long> clients;
    while (static_cast<int>(clients.size()) < std::min<long>(cfg.sampled_clients, inst.m)) {
        long j = client(rng);
        if (std::find(clients.begin(), clients.end(), j) == clients.end())
            clients.push_back(j);
    }
    std::sort(clients.begin(), clients.end());
    for (long j : clients)
        for (FacilitySet s : subsets_upto(std::min(cfg.max_mixed_set, f), true))
            for (int i = 0; i < f; ++i)
                add(CflKey{s, std::make_pair(i, j)});

    // Larger keys: an inclusion density per facility class.
    static const double densities[] = {0.125, 0.25, 0.5, 0.75, 1.0};
    std::uniform_int_distribution<int> pick(0, 4), fac(0, f - 1);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    int made = 0;
    while (made < cfg.random_keys) {
        double dk = densities[pick(rng)], dp = densities[pick(rng)];
        FacilitySet s = 0;
        for (int i = 0; i < f; ++i)
            if (coin(rng) < (contains_facility(inst.k, i) ? dk : dp))
                s |= FacilitySet{1} << i;
        CflKey k{s, std::make_pair(fac(rng), client(rng))};
        std::size_t before = out.size();
        add(k);
        made += out.size() > before;
    }
    return out;
}

std::vector<CflKey> pair_keys(const CflInstance& inst, FacilitySet l, FacilitySet l2) {
    require_pair(inst, l, l2);
    const FacilitySet rest = inst.pool & ~(l | l2);
    const FacilitySet only_l = l & ~l2, only_l2 = l2 & ~l, both = l & l2;
    const FacilitySet all = inst.all();
    std::vector<FacilitySet> sets{all & ~l,        all & ~l2,        inst.k | only_l, inst.k | only_l2,
                                  rest | only_l,   rest | only_l2,   only_l,          only_l2,
                                  inst.k | rest,   all & ~(l | l2),  both ? both : only_l, inst.k | both};
    std::vector<int> reps;
    for (FacilitySet cls : {inst.k, only_l, only_l2, both, rest})
        if (cls)
            reps.push_back(facility_list(cls).front());
    std::vector<CflKey> out;
    for (FacilitySet s : sets) {
        if (s)
            out.push_back(CflKey{s, std::nullopt});
        for (int i : reps)
            out.push_back(CflKey{s, std::make_pair(i, inst.m - 1)});
    }
    return out;
}

namespace {

template <class Lhs, class Rhs>
IdentityReport compare_keys(const std::vector<CflKey>& keys, unsigned jobs, Lhs&& lhs, Rhs&& rhs) {
    std::vector<Rational> a(keys.size()), b(keys.size());
    parallel_for(keys.size(), jobs, [&](std::size_t i) {
        a[i] = lhs(keys[i]);
        b[i] = rhs(keys[i]);
    });
    IdentityReport r;
    r.keys_checked = keys.size();
    for (std::size_t i = 0; i < keys.size(); ++i)
        if (a[i] != b[i]) {
            r.ok = false;
            if (r.mismatches.size() < 10)
                r.mismatches.push_back({keys[i], a[i], b[i]});
        }
    return r;
}

} // namespace

IdentityReport verify_star_expectation(const CflInstance& inst, FacilitySet l, FacilitySet l2,
                                       const std::vector<CflKey>& keys, ShortfallSplit split, unsigned jobs) {
    ExperimentSpec spec = dstar_spec(inst, l, l2, split);
    return compare_keys(
        keys, jobs, [&](const CflKey& k) -> Rational { return star_vector_coord(inst, l, l2, k); },
        [&](const CflKey& k) -> Rational { return expectation(spec, inst, k); });
}

IdentityReport midpoint_identity(const CflInstance& inst, FacilitySet l, FacilitySet l2,
                                 const std::vector<CflKey>& keys, unsigned jobs) {
    require_pair(inst, l, l2);
    return compare_keys(
        keys, jobs,
        [&](const CflKey& k) -> Rational { return star_vector_coord(inst, l, l2, k) + star_vector_coord(inst, l2, l, k); },
        [&](const CflKey& k) -> Rational { return core_coord(inst, l, k) + core_coord(inst, l2, k); });
}

IdentityReport compare_backends(const CflInstance& inst, FacilitySet l, const std::vector<CflKey>& keys,
                                unsigned jobs) {
    return compare_keys(
        keys, jobs, [&](const CflKey& k) -> Rational { return core_coord(inst, l, k, Backend::Counting); },
        [&](const CflKey& k) -> Rational { return core_coord(inst, l, k, Backend::Enumeration); });
}

} // namespace prodrel::cfl

#include "prodrel/cfl/instance.hpp"

#include "prodrel/errors.hpp"
#include "prodrel/io.hpp"

#include <charconv>

namespace prodrel::cfl {

CflInstance make_instance(int n) {
    if (n < min_n)
        throw ValidityError("n = " + std::to_string(n) + ": case 2 probability 20/(n(n+1)) exceeds 1; need n >= 4");
    if (n > max_n)
        throw CapacityError("n = " + std::to_string(n) + ": at most " + std::to_string(max_n) + " supported");
    CflInstance c;
    c.n = n;
    const long n4 = static_cast<long>(n) * n * n * n;
    c.m = n4 + 1;
    c.eps = pow2(-static_cast<long>(n) * n);
    c.capacity = (Rational(c.m) - c.eps) / n;
    c.p_case2 = ratio(20, n * (n + 1));
    c.p_case1 = 1 - c.p_case2;
    Rational two_n = pow2(n);
    c.y_l = c.p_case2 * pow2(n - 1) / (two_n - 1);
    c.load_l = Rational(c.m) / (static_cast<long>(n) * n * n) / c.y_l;
    c.case2_subsets = BigInt(two_n * two_n - two_n);
    c.k = (FacilitySet{1} << n) - 1;
    c.pool = ((FacilitySet{1} << (3 * n)) - 1) & ~c.k;
    return c;
}

bool is_legal_l(const CflInstance& inst, FacilitySet l) {
    return (l & ~inst.pool) == 0 && popcount(l) == inst.n;
}

void require_legal_l(const CflInstance& inst, FacilitySet l) {
    if (!is_legal_l(inst, l))
        throw InputError("l = {" + format_facility_set(l) + "} must be " + std::to_string(inst.n) +
                         " facilities from " + std::to_string(inst.n) + ".." + std::to_string(3 * inst.n - 1));
}

void require_pair(const CflInstance& inst, FacilitySet l, FacilitySet l2) {
    require_legal_l(inst, l);
    require_legal_l(inst, l2);
    if (l == l2)
        throw InputError("l and l' must differ");
}

FacilitySet default_l(const CflInstance& inst) { return inst.k << inst.n; }

std::vector<FacilitySet> all_l_sets(const CflInstance& inst) {
    std::vector<FacilitySet> out;
    const int n = inst.n, p = 2 * n;
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i)
        idx[i] = i;
    while (true) {
        FacilitySet s = 0;
        for (int i : idx)
            s |= FacilitySet{1} << (n + i);
        out.push_back(s);
        int i = n - 1;
        while (i >= 0 && idx[i] == p - n + i)
            --i;
        if (i < 0)
            break;
        ++idx[i];
        for (int j = i + 1; j < n; ++j)
            idx[j] = idx[j - 1] + 1;
    }
    return out;
}

BigInt core_size(int n) { return binomial(2 * n, n); }

FacilitySet parse_facility_set(const std::string& text) {
    FacilitySet s = 0;
    std::string t = text;
    for (char& c : t)
        if (c == ',')
            c = ' ';
    for (const auto& tok : split_ws(t)) {
        int v = -1;
        auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc() || p != tok.data() + tok.size() || v < 0 || v >= 63)
            throw InputError("bad facility index '" + tok + "'");
        s |= FacilitySet{1} << v;
    }
    return s;
}

std::vector<int> facility_list(FacilitySet s) {
    std::vector<int> v;
    for (int i = 0; s; ++i, s >>= 1)
        if (s & 1ULL)
            v.push_back(i);
    return v;
}

std::string format_facility_set(FacilitySet s) {
    std::string out;
    for (int i : facility_list(s))
        out += (out.empty() ? "" : ",") + std::to_string(i);
    return out;
}

ProductKey to_product_key(const CflInstance& inst, const CflKey& key) {
    std::optional<long> frac;
    if (key.x)
        frac = key.x->first * inst.m + key.x->second;
    return ProductKey(facility_list(key.set), frac);
}

CflKey from_product_key(const CflInstance& inst, const ProductKey& key) {
    CflKey k;
    for (int i : key.set) {
        if (i < 0 || i >= inst.facilities())
            throw InputError("key " + format_key(key) + " names a facility outside the instance");
        k.set |= FacilitySet{1} << i;
    }
    if (key.frac) {
        long f = *key.frac;
        if (f < 0 || f >= inst.facilities() * inst.m)
            throw InputError("key " + format_key(key) + " names an assignment outside the instance");
        k.x = std::make_pair(static_cast<int>(f / inst.m), f % inst.m);
    }
    return k;
}

std::string key_label(const CflKey& key) {
    std::string s = "{";
    bool first = true;
    for (int i : facility_list(key.set)) {
        s += (first ? "y" : ",y") + std::to_string(i + 1);
        first = false;
    }
    s += "}";
    if (key.x)
        s += "x[" + std::to_string(key.x->first + 1) + "," + std::to_string(key.x->second + 1) + "]";
    return s;
}

} // namespace prodrel::cfl

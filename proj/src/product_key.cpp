#include "prodrel/product_key.hpp"

#include "prodrel/errors.hpp"

#include <algorithm>
#include <charconv>

namespace prodrel {

ProductKey::ProductKey(std::vector<int> s, std::optional<long> f) : set(std::move(s)), frac(f) {
    std::sort(set.begin(), set.end());
    if (std::adjacent_find(set.begin(), set.end()) != set.end())
        throw InputError("product key with repeated index");
    if (set.empty() && !frac)
        throw InputError("product key needs a nonempty set or a fractional tag");
}

std::strong_ordering ProductKey::operator<=>(const ProductKey& o) const {
    if (auto c = set.size() <=> o.set.size(); c != 0)
        return c;
    if (auto c = set <=> o.set; c != 0)
        return c;
    if (frac.has_value() != o.frac.has_value())
        return frac.has_value() ? std::strong_ordering::greater : std::strong_ordering::less;
    if (!frac)
        return std::strong_ordering::equal;
    return *frac <=> *o.frac;
}

std::string format_key(const ProductKey& key) {
    std::string s = "{";
    for (std::size_t i = 0; i < key.set.size(); ++i) {
        if (i)
            s += ',';
        s += std::to_string(key.set[i] + 1);
    }
    s += '}';
    if (key.frac)
        s += "*w[" + std::to_string(*key.frac + 1) + "]";
    return s;
}

namespace {

long parse_index(std::string_view t, std::string_view whole) {
    long v = 0;
    auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || p != t.data() + t.size() || v < 1)
        throw InputError("bad index in product key '" + std::string(whole) + "'");
    return v - 1;
}

} // namespace

ProductKey parse_key(std::string_view text) {
    if (text.empty() || text[0] != '{')
        throw InputError("product key must start with '{': '" + std::string(text) + "'");
    auto close = text.find('}');
    if (close == std::string_view::npos)
        throw InputError("unterminated product key '" + std::string(text) + "'");
    std::vector<int> set;
    std::string_view body = text.substr(1, close - 1);
    while (!body.empty()) {
        auto comma = body.find(',');
        set.push_back(static_cast<int>(parse_index(body.substr(0, comma), text)));
        if (comma == std::string_view::npos)
            break;
        body.remove_prefix(comma + 1);
    }
    std::string_view rest = text.substr(close + 1);
    std::optional<long> frac;
    if (!rest.empty()) {
        if (rest.size() < 5 || rest.substr(0, 3) != "*w[" || rest.back() != ']')
            throw InputError("bad fractional tag in product key '" + std::string(text) + "'");
        frac = parse_index(rest.substr(3, rest.size() - 4), text);
    }
    return ProductKey(std::move(set), frac);
}

Rational value_at(const SparseProductVector& v, const ProductKey& key) {
    auto it = v.find(key);
    return it == v.end() ? Rational(0) : it->second;
}

std::vector<int> mask_to_set(unsigned long long mask) {
    std::vector<int> s;
    for (int i = 0; mask; ++i, mask >>= 1)
        if (mask & 1)
            s.push_back(i);
    return s;
}

unsigned long long set_to_mask(const std::vector<int>& set) {
    unsigned long long m = 0;
    for (int i : set)
        m |= 1ULL << i;
    return m;
}

std::vector<std::vector<int>> nonempty_subsets(int d) {
    std::vector<std::vector<int>> out;
    for (unsigned long long m = 1; m < (1ULL << d); ++m)
        out.push_back(mask_to_set(m));
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    return out;
}

} // namespace prodrel

#include "prodrel/rational.hpp"

#include "prodrel/errors.hpp"

#include <cctype>

namespace prodrel {

namespace {

bool is_integer_literal(std::string_view s, bool allow_sign) {
    std::size_t i = 0;
    if (allow_sign && !s.empty() && (s[0] == '-' || s[0] == '+'))
        i = 1;
    if (i == s.size())
        return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            return false;
    return true;
}

} // namespace

Rational parse_rational(std::string_view text) {
    auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
    if (!is_integer_literal(num, true) || !is_integer_literal(den, false))
        throw InputError("not a rational number: '" + std::string(text) + "'");
    std::string n(num);
    if (n[0] == '+')
        n.erase(0, 1);
    BigInt p(n, 10), q(std::string(den), 10);
    if (q == 0)
        throw InputError("zero denominator: '" + std::string(text) + "'");
    Rational r(p, q);
    r.canonicalize();
    return r;
}

std::string format_rational(const Rational& value) {
    return value.get_str(10);
}

Rational ratio(long num, long den) {
    if (den == 0)
        throw InputError("zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

Rational pow2(long e) {
    BigInt p;
    mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(e < 0 ? -e : e));
    if (e >= 0)
        return Rational(p);
    Rational r(BigInt(1), p);
    r.canonicalize();
    return r;
}

BigInt binomial(unsigned long n, unsigned long k) {
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i)
        if (sgn(a[i]) != 0 && sgn(b[i]) != 0)
            s += a[i] * b[i];
    return s;
}

} // namespace prodrel

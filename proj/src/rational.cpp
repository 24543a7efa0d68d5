#include "lcf/rational.hpp"

#include "lcf/error.hpp"

#include <cctype>
#include <limits>

namespace lcf {

namespace {

Integer parse_integer(std::string_view s, std::string_view whole)
{
    std::size_t i = 0;
    bool neg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
        neg = s[i] == '-';
        ++i;
    }
    if (i == s.size())
        throw ParseError("malformed rational '" + std::string(whole) + "'");
    for (std::size_t k = i; k < s.size(); ++k)
        if (!std::isdigit(static_cast<unsigned char>(s[k])))
            throw ParseError("malformed rational '" + std::string(whole) + "' (use a/b)");
    Integer z(std::string(s.substr(i)), 10);
    return neg ? Integer(-z) : z;
}

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

} // namespace

Rational parse_rational(std::string_view text)
{
    std::string_view t = trim(text);
    auto slash = t.find('/');
    Integer num, den(1);
    if (slash == std::string_view::npos) {
        num = parse_integer(t, text);
    } else {
        num = parse_integer(trim(t.substr(0, slash)), text);
        den = parse_integer(trim(t.substr(slash + 1)), text);
    }
    if (den == 0)
        throw ParseError("zero denominator in '" + std::string(text) + "'");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

std::string to_string(const Integer& z) { return z.get_str(); }

std::string to_string(const Rational& r)
{
    Rational c = r;
    c.canonicalize();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

Integer floor(const Rational& r)
{
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

Integer ipow(const Integer& base, unsigned long e)
{
    Integer out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
    return out;
}

Rational rpow(const Rational& base, unsigned long e)
{
    Rational out(ipow(base.get_num(), e), ipow(base.get_den(), e));
    out.canonicalize();
    return out;
}

std::int64_t to_int64(const Integer& z)
{
    if (!mpz_fits_slong_p(z.get_mpz_t()))
        throw PreconditionViolated("integer " + z.get_str() + " exceeds 64-bit range");
    return static_cast<std::int64_t>(z.get_si());
}

unsigned long valuation(Integer n, unsigned long p)
{
    unsigned long e = 0;
    if (n == 0)
        return 0;
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
        n /= p;
        ++e;
    }
    return e;
}

double to_double(const Rational& r) { return r.get_d(); }

} // namespace lcf

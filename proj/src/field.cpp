#include "lcf/field.hpp"

#include "lcf/error.hpp"

#include <cctype>
#include <limits>
#include <sstream>

namespace lcf {

namespace {

using SmallPoly = std::vector<std::uint32_t>; // over F_p, lowest first

void trim(SmallPoly& f)
{
    while (!f.empty() && f.back() == 0)
        f.pop_back();
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p)
{
    std::int64_t t = 0, nt = 1, r = p, nr = a;
    while (nr != 0) {
        std::int64_t qq = r / nr;
        std::int64_t tmp = t - qq * nt;
        t = nt;
        nt = tmp;
        tmp = r - qq * nr;
        r = nr;
        nr = tmp;
    }
    if (t < 0)
        t += p;
    return static_cast<std::uint32_t>(t);
}

SmallPoly small_mod(SmallPoly f, const SmallPoly& g, std::uint32_t p)
{
    trim(f);
    std::uint32_t li = inv_mod(g.back(), p);
    std::size_t dg = g.size() - 1;
    while (f.size() > dg && !f.empty()) {
        std::uint64_t c = std::uint64_t(f.back()) * li % p;
        std::size_t shift = f.size() - 1 - dg;
        for (std::size_t i = 0; i <= dg; ++i) {
            std::uint64_t sub = c * g[i] % p;
            f[shift + i] = static_cast<std::uint32_t>((f[shift + i] + p - sub) % p);
        }
        trim(f);
    }
    return f;
}

SmallPoly small_mulmod(const SmallPoly& a, const SmallPoly& b, const SmallPoly& mod,
                       std::uint32_t p)
{
    if (a.empty() || b.empty())
        return {};
    SmallPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = static_cast<std::uint32_t>((r[i + j] + std::uint64_t(a[i]) * b[j]) % p);
    return small_mod(std::move(r), mod, p);
}

bool small_irreducible(const SmallPoly& f, std::uint32_t p)
{
    std::size_t m = f.size() - 1;
    if (m <= 1)
        return m == 1;
    // Trial division by every monic polynomial of degree 1..m/2.
    for (std::size_t d = 1; d <= m / 2; ++d) {
        std::uint64_t count = 1;
        for (std::size_t i = 0; i < d; ++i)
            count *= p;
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            SmallPoly g(d + 1, 0);
            std::uint64_t t = idx;
            for (std::size_t i = 0; i < d; ++i) {
                g[i] = static_cast<std::uint32_t>(t % p);
                t /= p;
            }
            g[d] = 1;
            if (small_mod(f, g, p).empty())
                return false;
        }
    }
    return true;
}

SmallPoly decode(std::uint32_t c, std::uint32_t p, std::uint32_t m)
{
    SmallPoly v(m, 0);
    for (std::uint32_t i = 0; i < m; ++i) {
        v[i] = c % p;
        c /= p;
    }
    trim(v);
    return v;
}

std::uint32_t encode(const SmallPoly& v, std::uint32_t p)
{
    std::uint32_t c = 0;
    for (std::size_t i = v.size(); i-- > 0;)
        c = c * p + v[i];
    return c;
}

std::string_view strip(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

} // namespace

bool is_prime(std::uint64_t n)
{
    if (n < 2)
        return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

FieldPtr Field::make(std::uint32_t p, std::uint32_t m)
{
    if (!lcf::is_prime(p))
        throw PreconditionViolated("field characteristic " + std::to_string(p) + " is not prime");
    if (m == 0)
        throw PreconditionViolated("extension degree must be at least 1");
    if (m == 1)
        return std::make_shared<const Field>(p, SmallPoly{0, 1});
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < m; ++i)
        count *= p;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        SmallPoly g(m + 1, 0);
        std::uint64_t t = idx;
        for (std::uint32_t i = 0; i < m; ++i) {
            g[i] = static_cast<std::uint32_t>(t % p);
            t /= p;
        }
        g[m] = 1;
        if (g[0] != 0 && small_irreducible(g, p))
            return make(p, g);
    }
    throw InternalInvariantViolated("no irreducible polynomial found");
}

FieldPtr Field::make(std::uint32_t p, const std::vector<std::uint32_t>& modulus)
{
    if (!lcf::is_prime(p))
        throw PreconditionViolated("field characteristic " + std::to_string(p) + " is not prime");
    if (modulus.size() < 2 || modulus.back() != 1)
        throw PreconditionViolated("field modulus must be monic of degree at least 1");
    for (auto c : modulus)
        if (c >= p)
            throw PreconditionViolated("field modulus coefficient out of range");
    if (modulus.size() == 2)
        return std::make_shared<const Field>(p, SmallPoly{0, 1});
    if (!small_irreducible(modulus, p))
        throw PreconditionViolated("field modulus is not irreducible over F_" + std::to_string(p));
    return std::make_shared<const Field>(p, modulus);
}

Field::Field(std::uint32_t p, std::vector<std::uint32_t> modulus)
    : p_(p), m_(static_cast<std::uint32_t>(modulus.size() - 1)), q_(1), modulus_(std::move(modulus))
{
    if (m_ == 1) {
        q_ = p_;
        return;
    }
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < m_; ++i) {
        q *= p_;
        if (q > (1u << 22))
            throw PreconditionViolated("extension fields are limited to q <= 2^22");
    }
    q_ = static_cast<std::uint32_t>(q);
    log_.assign(q_, 0);
    exp_.assign(q_ - 1, 0);
    for (std::uint32_t g = 2; g < q_; ++g) {
        SmallPoly gen = decode(g, p_, m_);
        SmallPoly x{1};
        bool ok = true;
        for (std::uint32_t i = 0; i < q_ - 1; ++i) {
            std::uint32_t code = encode(x, p_);
            if (i > 0 && code == 1) {
                ok = false;
                break;
            }
            exp_[i] = code;
            x = small_mulmod(x, gen, modulus_, p_);
        }
        if (!ok)
            continue;
        for (std::uint32_t i = 0; i < q_ - 1; ++i)
            log_[exp_[i]] = i;
        return;
    }
    throw InternalInvariantViolated("no primitive element found");
}

bool Field::same(const Field& other) const
{
    return this == &other || (p_ == other.p_ && modulus_ == other.modulus_);
}

void require_same_field(const Field& a, const Field& b)
{
    if (!a.same(b))
        throw SpecMismatch("mixed fields: " + a.describe() + " vs " + b.describe());
}

std::uint32_t Field::add_digits(std::uint32_t a, std::uint32_t b) const
{
    std::uint32_t out = 0, scale = 1;
    for (std::uint32_t i = 0; i < m_; ++i) {
        std::uint32_t s = a % p_ + b % p_;
        if (s >= p_)
            s -= p_;
        out += s * scale;
        scale *= p_;
        a /= p_;
        b /= p_;
    }
    return out;
}

std::uint32_t Field::neg_digits(std::uint32_t a) const
{
    std::uint32_t out = 0, scale = 1;
    for (std::uint32_t i = 0; i < m_; ++i) {
        std::uint32_t d = a % p_;
        out += (d == 0 ? 0 : p_ - d) * scale;
        scale *= p_;
        a /= p_;
    }
    return out;
}

std::uint32_t Field::inv(std::uint32_t a) const
{
    if (a == 0)
        throw DivisionByZero("inverse of zero in " + describe());
    if (m_ == 1)
        return inv_mod(a, p_);
    std::uint32_t l = log_[a];
    return exp_[l == 0 ? 0 : q_ - 1 - l];
}

std::uint32_t Field::pow(std::uint32_t a, std::uint64_t e) const
{
    if (e == 0)
        return 1;
    if (a == 0)
        return 0;
    if (m_ > 1)
        return exp_[static_cast<std::uint32_t>((std::uint64_t(log_[a]) * (e % (q_ - 1))) % (q_ - 1))];
    std::uint64_t r = 1, b = a;
    while (e) {
        if (e & 1)
            r = r * b % p_;
        b = b * b % p_;
        e >>= 1;
    }
    return static_cast<std::uint32_t>(r);
}

std::uint32_t Field::frobenius(std::uint32_t a) const { return m_ == 1 ? a : pow(a, p_); }

std::uint32_t Field::frobenius(std::uint32_t a, std::uint64_t k) const
{
    if (m_ == 1)
        return a;
    k %= m_;
    for (std::uint64_t i = 0; i < k; ++i)
        a = pow(a, p_);
    return a;
}

std::uint32_t Field::from_int(std::int64_t n) const
{
    std::int64_t r = n % static_cast<std::int64_t>(p_);
    if (r < 0)
        r += p_;
    return static_cast<std::uint32_t>(r);
}

std::string Field::format(std::uint32_t a) const
{
    if (m_ == 1)
        return std::to_string(a);
    if (a == 0)
        return "0";
    SmallPoly v = decode(a, p_, m_);
    std::string out;
    for (std::size_t i = v.size(); i-- > 0;) {
        if (v[i] == 0)
            continue;
        if (!out.empty())
            out += "+";
        if (i == 0) {
            out += std::to_string(v[i]);
            continue;
        }
        if (v[i] != 1)
            out += std::to_string(v[i]) + "*";
        out += "x";
        if (i > 1)
            out += "^" + std::to_string(i);
    }
    return out;
}

std::uint32_t Field::parse(std::string_view text) const
{
    std::string_view s = strip(text);
    if (s.size() >= 2 && s.front() == '(' && s.back() == ')')
        s = strip(s.substr(1, s.size() - 2));
    if (s.empty())
        throw ParseError("empty field element");
    SmallPoly acc(m_, 0);
    std::size_t i = 0;
    auto fail = [&]() -> ParseError {
        return ParseError("malformed field element '" + std::string(text) + "'");
    };
    auto read_int = [&](std::int64_t& out) {
        std::size_t st = i;
        std::int64_t v = 0;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            v = v * 10 + (s[i] - '0');
            if (v > (std::int64_t(1) << 40))
                throw fail();
            ++i;
        }
        if (i == st)
            return false;
        out = v;
        return true;
    };
    auto skip_ws = [&]() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i])))
            ++i;
    };
    bool first = true;
    while (true) {
        skip_ws();
        if (i >= s.size())
            break;
        int sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            sign = s[i] == '-' ? -1 : 1;
            ++i;
            skip_ws();
        } else if (!first) {
            throw fail();
        }
        first = false;
        std::int64_t coef = 1;
        bool have_coef = read_int(coef);
        skip_ws();
        std::int64_t power = 0;
        if (have_coef && i < s.size() && s[i] == '*') {
            ++i;
            skip_ws();
            if (i >= s.size() || s[i] != 'x')
                throw fail();
        }
        if (i < s.size() && s[i] == 'x') {
            if (m_ == 1)
                throw fail();
            ++i;
            power = 1;
            skip_ws();
            if (i < s.size() && s[i] == '^') {
                ++i;
                skip_ws();
                if (!read_int(power))
                    throw fail();
            }
        } else if (!have_coef) {
            throw fail();
        }
        if (power >= static_cast<std::int64_t>(m_))
            throw ParseError("field element '" + std::string(text) + "' is not reduced");
        std::uint32_t c = from_int(sign * coef);
        acc[power] = (acc[power] + c) % p_;
    }
    if (m_ == 1)
        return acc[0];
    trim(acc);
    return encode(acc, p_);
}

std::string Field::describe() const
{
    std::string out = "F_" + std::to_string(q_);
    if (m_ == 1)
        return out;
    std::string mod;
    for (std::size_t i = modulus_.size(); i-- > 0;) {
        if (modulus_[i] == 0)
            continue;
        if (!mod.empty())
            mod += "+";
        if (i == 0) {
            mod += std::to_string(modulus_[i]);
            continue;
        }
        if (modulus_[i] != 1)
            mod += std::to_string(modulus_[i]) + "*";
        mod += "x";
        if (i > 1)
            mod += "^" + std::to_string(i);
    }
    return out + " = F_" + std::to_string(p_) + "[x]/(" + mod + ")";
}

FieldElement::FieldElement(FieldPtr f, std::uint32_t code) : f_(std::move(f)), c_(code)
{
    if (c_ >= f_->q())
        throw PreconditionViolated("field element code out of range");
}

std::vector<std::uint32_t> FieldElement::coords() const
{
    std::vector<std::uint32_t> v(f_->m(), 0);
    std::uint32_t c = c_;
    for (std::uint32_t i = 0; i < f_->m(); ++i) {
        v[i] = c % f_->p();
        c /= f_->p();
    }
    return v;
}

void FieldElement::check(const FieldElement& o) const { require_same_field(*f_, *o.f_); }

FieldElement FieldElement::operator+(const FieldElement& o) const
{
    check(o);
    return FieldElement(f_, f_->add(c_, o.c_));
}
FieldElement FieldElement::operator-(const FieldElement& o) const
{
    check(o);
    return FieldElement(f_, f_->sub(c_, o.c_));
}
FieldElement FieldElement::operator*(const FieldElement& o) const
{
    check(o);
    return FieldElement(f_, f_->mul(c_, o.c_));
}
FieldElement FieldElement::operator/(const FieldElement& o) const
{
    check(o);
    return FieldElement(f_, f_->div(c_, o.c_));
}
FieldElement FieldElement::operator-() const { return FieldElement(f_, f_->neg(c_)); }
FieldElement FieldElement::inv() const { return FieldElement(f_, f_->inv(c_)); }
FieldElement FieldElement::frobenius() const { return FieldElement(f_, f_->frobenius(c_)); }
FieldElement FieldElement::pow(std::uint64_t e) const { return FieldElement(f_, f_->pow(c_, e)); }

bool FieldElement::operator==(const FieldElement& o) const
{
    check(o);
    return c_ == o.c_;
}

} // namespace lcf

#include "lcf/laurent.hpp"

#include "lcf/error.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace lcf {

std::int64_t LogAbs::value() const
{
    if (is_neg_inf())
        throw PreconditionViolated("log of |0| has no finite value");
    return v_;
}

std::string LogAbs::to_string() const { return is_neg_inf() ? "-inf" : std::to_string(v_); }

Coeffs series_inverse(const Field& F, const Coeffs& c, std::size_t n)
{
    if (c.empty() || c[0] == 0)
        throw DivisionByZero("series inverse needs a nonzero constant term");
    Coeffs g{F.inv(c[0])};
    std::size_t prec = 1;
    while (prec < n) {
        std::size_t next = std::min(2 * prec, n);
        Coeffs e = kernel::mul_low(F, c, g, next);
        e.resize(next, 0);
        // e = 1 + O(t^prec); correct g by g * (e - 1).
        e[0] = F.sub(e[0], 1);
        Coeffs corr = kernel::mul_low(F, g, e, next);
        g.resize(next, 0);
        for (std::size_t i = 0; i < corr.size(); ++i)
            g[i] = F.sub(g[i], corr[i]);
        prec = next;
    }
    g.resize(n, 0);
    return g;
}

LaurentSeries::LaurentSeries(FieldPtr f, std::int64_t val, Coeffs c)
    : f_(std::move(f)), val_(val), c_(std::move(c))
{
    std::size_t z = 0;
    while (z < c_.size() && c_[z] == 0)
        ++z;
    if (z > 0) {
        c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(z));
        val_ += static_cast<std::int64_t>(z);
    }
}

LaurentSeries LaurentSeries::zero(FieldPtr f, std::int64_t abs) { return LaurentSeries(std::move(f), abs, {}); }

LaurentSeries LaurentSeries::from_coeffs(FieldPtr f, std::int64_t val, Coeffs c)
{
    for (auto x : c)
        if (x >= f->q())
            throw PreconditionViolated("series coefficient code out of range");
    return LaurentSeries(std::move(f), val, std::move(c));
}

LaurentSeries LaurentSeries::from_rational(const Poly& num, const Poly& den, std::int64_t target_known)
{
    require_same_field(*num.field(), *den.field());
    if (den.is_zero())
        throw DivisionByZero("from_rational with zero denominator");
    if (target_known < 0)
        throw PreconditionViolated("negative precision request");
    const FieldPtr& f = num.field();
    if (num.is_zero())
        return zero(f, target_known);
    std::size_t k = static_cast<std::size_t>(target_known);
    Coeffs rn(num.coeffs().rbegin(), num.coeffs().rend());
    Coeffs rd(den.coeffs().rbegin(), den.coeffs().rend());
    Coeffs inv = series_inverse(*f, rd, k);
    Coeffs prod = kernel::mul_low(*f, rn, inv, k);
    prod.resize(k, 0);
    return LaurentSeries(f, den.degree() - num.degree(), std::move(prod));
}

LaurentSeries LaurentSeries::from_poly(const Poly& f, std::int64_t abs)
{
    if (f.is_zero())
        return zero(f.field(), abs);
    std::int64_t val = -f.degree();
    if (abs <= val)
        return zero(f.field(), abs);
    Coeffs c(static_cast<std::size_t>(abs - val), 0);
    for (std::size_t i = 0; i < c.size() && i < f.coeffs().size(); ++i)
        c[i] = f.coeffs()[f.coeffs().size() - 1 - i];
    return LaurentSeries(f.field(), val, std::move(c));
}

void LaurentSeries::check(const LaurentSeries& o) const { require_same_field(*f_, *o.f_); }

std::uint32_t LaurentSeries::coeff_at(std::int64_t n) const
{
    if (n >= abs_precision())
        throw InsufficientPrecision("coefficient of T^{-" + std::to_string(n) +
                                    "} lies beyond the known precision " +
                                    std::to_string(abs_precision()));
    if (n < val_)
        return 0;
    return c_[static_cast<std::size_t>(n - val_)];
}

LaurentSeries LaurentSeries::operator+(const LaurentSeries& o) const
{
    check(o);
    std::int64_t abs = std::min(abs_precision(), o.abs_precision());
    std::int64_t lo = std::min(is_zero() ? abs : val_, o.is_zero() ? abs : o.val_);
    if (lo >= abs)
        return zero(f_, abs);
    Coeffs r(static_cast<std::size_t>(abs - lo), 0);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        std::int64_t n = val_ + static_cast<std::int64_t>(i);
        if (n >= abs)
            break;
        r[static_cast<std::size_t>(n - lo)] = c_[i];
    }
    for (std::size_t i = 0; i < o.c_.size(); ++i) {
        std::int64_t n = o.val_ + static_cast<std::int64_t>(i);
        if (n >= abs)
            break;
        auto& slot = r[static_cast<std::size_t>(n - lo)];
        slot = f_->add(slot, o.c_[i]);
    }
    return LaurentSeries(f_, lo, std::move(r));
}

LaurentSeries LaurentSeries::operator-() const
{
    Coeffs r(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i)
        r[i] = f_->neg(c_[i]);
    return LaurentSeries(f_, val_, std::move(r));
}

LaurentSeries LaurentSeries::operator-(const LaurentSeries& o) const { return *this + (-o); }

LaurentSeries LaurentSeries::scale(std::uint32_t c) const
{
    if (c == 0)
        return zero(f_, abs_precision());
    Coeffs r(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i)
        r[i] = f_->mul(c_[i], c);
    return LaurentSeries(f_, val_, std::move(r));
}

LaurentSeries LaurentSeries::operator*(const LaurentSeries& o) const
{
    check(o);
    if (is_zero() && o.is_zero())
        return zero(f_, val_ + o.val_);
    if (is_zero())
        return zero(f_, val_ + o.val_);
    if (o.is_zero())
        return zero(f_, val_ + o.val_);
    std::size_t k = std::min(c_.size(), o.c_.size());
    Coeffs r = kernel::mul_low(*f_, c_, o.c_, k);
    r.resize(k, 0);
    return LaurentSeries(f_, val_ + o.val_, std::move(r));
}

LaurentSeries LaurentSeries::inv() const
{
    if (is_zero())
        throw DivisionByZero("inverse of a series that is zero to precision " +
                             std::to_string(abs_precision()));
    return LaurentSeries(f_, -val_, series_inverse(*f_, c_, c_.size()));
}

LaurentSeries LaurentSeries::frobenius_pow(unsigned k) const
{
    std::int64_t step = 1;
    for (unsigned i = 0; i < k; ++i)
        step *= f_->p();
    if (is_zero())
        return zero(f_, val_ * step);
    Coeffs r(c_.size() * static_cast<std::size_t>(step), 0);
    for (std::size_t i = 0; i < c_.size(); ++i)
        r[i * static_cast<std::size_t>(step)] = f_->frobenius(c_[i], k);
    return LaurentSeries(f_, val_ * step, std::move(r));
}

LaurentSeries LaurentSeries::shift(std::int64_t e) const { return LaurentSeries(f_, val_ - e, c_); }

LaurentSeries LaurentSeries::truncate(std::int64_t abs) const
{
    if (abs >= abs_precision())
        return *this;
    if (is_zero() || abs <= val_)
        return zero(f_, abs);
    Coeffs r(c_.begin(), c_.begin() + (abs - val_));
    return LaurentSeries(f_, val_, std::move(r));
}

bool LaurentSeries::operator==(const LaurentSeries& o) const
{
    check(o);
    return val_ == o.val_ && c_ == o.c_;
}

std::string LaurentSeries::to_string() const
{
    std::string out = "T^{" + std::to_string(-val_) + "}:";
    for (auto c : c_)
        out += " " + f_->format(c);
    out += " (known=" + std::to_string(c_.size()) + ")";
    return out;
}

LaurentSeries LaurentSeries::parse(FieldPtr f, std::string_view text)
{
    auto fail = [&](const std::string& why) {
        return ParseError("malformed series '" + std::string(text.substr(0, 60)) + "': " + why);
    };
    std::string s(text);
    if (s.rfind("T^{", 0) != 0)
        throw fail("expected leading 'T^{'");
    auto close = s.find("}:");
    if (close == std::string::npos)
        throw fail("expected '}:'");
    std::int64_t e = 0;
    try {
        std::size_t used = 0;
        e = std::stoll(s.substr(3, close - 3), &used);
        if (used != close - 3)
            throw fail("bad exponent");
    } catch (const std::logic_error&) {
        throw fail("bad exponent");
    }
    auto kpos = s.rfind("(known=");
    if (kpos == std::string::npos || s.back() != ')')
        throw fail("expected '(known=K)'");
    std::int64_t known = 0;
    try {
        known = std::stoll(s.substr(kpos + 7, s.size() - kpos - 8));
    } catch (const std::logic_error&) {
        throw fail("bad known count");
    }
    std::istringstream body(s.substr(close + 2, kpos - close - 2));
    Coeffs c;
    std::string tok;
    while (body >> tok)
        c.push_back(f->parse(tok));
    if (static_cast<std::int64_t>(c.size()) != known)
        throw fail("coefficient count does not match known");
    if (!c.empty() && c[0] == 0)
        throw fail("leading coefficient must be nonzero");
    return LaurentSeries(std::move(f), -e, std::move(c));
}

Poly polynomial_part(const LaurentSeries& x)
{
    const FieldPtr& f = x.field();
    if (x.abs_precision() < 1)
        throw InsufficientPrecision("polynomial part needs coefficients down to T^0, known only to T^{" +
                                    std::to_string(-(x.abs_precision() - 1)) + "}");
    if (x.is_zero() || x.val() > 0)
        return Poly(f);
    std::int64_t deg = -x.val();
    Coeffs c(static_cast<std::size_t>(deg + 1), 0);
    for (std::int64_t e = 0; e <= deg; ++e)
        c[static_cast<std::size_t>(e)] = x.coeff_at(-e);
    return Poly(f, std::move(c));
}

} // namespace lcf

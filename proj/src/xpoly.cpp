#include "lcf/xpoly.hpp"

#include "lcf/error.hpp"

#include <algorithm>

namespace lcf {

XPoly::XPoly(FieldPtr f, std::vector<Poly> coeffs) : f_(std::move(f)), c_(std::move(coeffs))
{
    for (const auto& c : c_)
        require_same_field(*f_, *c.field());
    trim();
}

void XPoly::trim()
{
    while (!c_.empty() && c_.back().is_zero())
        c_.pop_back();
}

XPoly XPoly::operator+(const XPoly& o) const
{
    std::vector<Poly> r(std::max(c_.size(), o.c_.size()), Poly(f_));
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] = coeff(i) + o.coeff(i);
    return XPoly(f_, std::move(r));
}

XPoly XPoly::operator-(const XPoly& o) const
{
    std::vector<Poly> r(std::max(c_.size(), o.c_.size()), Poly(f_));
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] = coeff(i) - o.coeff(i);
    return XPoly(f_, std::move(r));
}

XPoly XPoly::operator*(const XPoly& o) const
{
    if (is_zero() || o.is_zero())
        return XPoly(f_);
    std::vector<Poly> r(c_.size() + o.c_.size() - 1, Poly(f_));
    for (std::size_t i = 0; i < c_.size(); ++i)
        for (std::size_t j = 0; j < o.c_.size(); ++j)
            r[i + j] += c_[i] * o.c_[j];
    return XPoly(f_, std::move(r));
}

XPoly XPoly::scale(const Poly& c) const
{
    std::vector<Poly> r;
    r.reserve(c_.size());
    for (const auto& x : c_)
        r.push_back(x * c);
    return XPoly(f_, std::move(r));
}

std::int64_t XPoly::height() const
{
    if (is_zero())
        throw PreconditionViolated("height of the zero polynomial");
    std::int64_t h = NEG_INF;
    for (const auto& c : c_)
        h = std::max(h, c.degree());
    return h;
}

XPoly XPoly::primitive() const
{
    if (is_zero())
        return *this;
    Poly g(f_);
    for (const auto& c : c_) {
        g = gcd(g, c);
        if (g.degree() == 0)
            break;
    }
    std::vector<Poly> r;
    r.reserve(c_.size());
    for (const auto& c : c_)
        r.push_back(g.degree() > 0 ? c / g : c);
    std::uint32_t li = f_->inv(r.back().lead());
    for (auto& c : r)
        c = c.scale(li);
    return XPoly(f_, std::move(r));
}

XPoly XPoly::mobius(const Poly& u, const Poly& v, const Poly& s, const Poly& t) const
{
    if (is_zero())
        return *this;
    std::size_t n = c_.size() - 1;
    XPoly lin1(f_, {v, u});
    XPoly lin2(f_, {t, s});
    std::vector<XPoly> pw1{XPoly(f_, {Poly::constant(f_, 1)})};
    std::vector<XPoly> pw2{XPoly(f_, {Poly::constant(f_, 1)})};
    for (std::size_t i = 1; i <= n; ++i) {
        pw1.push_back(pw1.back() * lin1);
        pw2.push_back(pw2.back() * lin2);
    }
    XPoly out(f_);
    for (std::size_t i = 0; i <= n; ++i)
        if (!c_[i].is_zero())
            out = out + (pw1[i] * pw2[n - i]).scale(c_[i]);
    return out;
}

LaurentSeries XPoly::eval(const LaurentSeries& x) const
{
    if (is_zero())
        return LaurentSeries::zero(f_, x.abs_precision());
    // Coefficients are exact; give them far more precision than x carries.
    std::int64_t h = height();
    std::int64_t span = x.abs_precision() + static_cast<std::int64_t>(c_.size()) * (h + 1 + std::max<std::int64_t>(0, -x.val())) + 8;
    LaurentSeries acc = LaurentSeries::from_poly(c_.back(), span);
    for (std::size_t i = c_.size() - 1; i-- > 0;)
        acc = acc * x + LaurentSeries::from_poly(c_[i], span);
    return acc;
}

bool XPoly::operator==(const XPoly& o) const
{
    require_same_field(*f_, *o.f_);
    if (c_.size() != o.c_.size())
        return false;
    for (std::size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != o.c_[i])
            return false;
    return true;
}

std::string XPoly::to_string() const
{
    if (is_zero())
        return "0";
    std::string out;
    for (std::size_t i = c_.size(); i-- > 0;) {
        if (c_[i].is_zero())
            continue;
        if (!out.empty())
            out += " + ";
        out += "(" + c_[i].to_string() + ")";
        if (i >= 1)
            out += "*X";
        if (i > 1)
            out += "^" + std::to_string(i);
    }
    return out;
}

} // namespace lcf

#pragma once

// Polynomials in X with coefficients in F_q[T].

#include "lcf/laurent.hpp"
#include "lcf/poly.hpp"

#include <string>
#include <vector>

namespace lcf {

class XPoly {
public:
    explicit XPoly(FieldPtr f) : f_(std::move(f)) {}
    /// coeffs[i] multiplies X^i.
    XPoly(FieldPtr f, std::vector<Poly> coeffs);

    const FieldPtr& field() const { return f_; }
    const std::vector<Poly>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    /// Degree in X, NEG_INF for zero.
    std::int64_t degree() const { return c_.empty() ? NEG_INF : std::int64_t(c_.size()) - 1; }
    Poly coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Poly(f_); }

    XPoly operator+(const XPoly& o) const;
    XPoly operator-(const XPoly& o) const;
    XPoly operator*(const XPoly& o) const;
    XPoly scale(const Poly& c) const;

    /// log_q of the height: maximal coefficient degree. Throws on zero.
    std::int64_t height() const;
    /// Divides by the gcd of the coefficients and makes the leading
    /// X-coefficient monic in T.
    XPoly primitive() const;
    /// Sum c_i (uX+v)^i (sX+t)^{n-i}, n = degree.
    XPoly mobius(const Poly& u, const Poly& v, const Poly& s, const Poly& t) const;
    /// P(x) with exact coefficients; precision follows the series rules.
    LaurentSeries eval(const LaurentSeries& x) const;

    bool operator==(const XPoly& o) const;
    std::string to_string() const;

private:
    void trim();
    FieldPtr f_;
    std::vector<Poly> c_;
};

} // namespace lcf

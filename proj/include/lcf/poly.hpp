#pragma once

// Polynomials in F_q[T].

#include "lcf/field.hpp"

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lcf {

/// Degree of the zero polynomial and log_q|0|.
inline constexpr std::int64_t NEG_INF = std::numeric_limits<std::int64_t>::min();

using Coeffs = std::vector<std::uint32_t>;

class Poly {
public:
    explicit Poly(FieldPtr f);
    Poly(FieldPtr f, Coeffs coeffs);

    static Poly constant(FieldPtr f, std::uint32_t c);
    static Poly monomial(FieldPtr f, std::uint32_t c, std::size_t degree);
    /// The indeterminate T.
    static Poly T(FieldPtr f);
    static Poly parse(FieldPtr f, std::string_view text);

    const FieldPtr& field() const { return f_; }
    const Coeffs& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
    /// NEG_INF for the zero polynomial.
    std::int64_t degree() const { return c_.empty() ? NEG_INF : std::int64_t(c_.size()) - 1; }
    std::uint32_t coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
    FieldElement coefficient(std::size_t i) const { return FieldElement(f_, coeff(i)); }
    std::uint32_t lead() const { return c_.empty() ? 0 : c_.back(); }

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator-() const;
    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }
    Poly scale(std::uint32_t c) const;
    Poly scale(const FieldElement& c) const;
    /// f * T^k.
    Poly shift(std::size_t k) const;

    bool operator==(const Poly& o) const;
    bool operator!=(const Poly& o) const { return !(*this == o); }

    /// Scaled to leading coefficient 1; zero stays zero.
    Poly monic() const;
    FieldElement eval(const FieldElement& x) const;
    /// f^{p^k}: coefficient Frobenius and exponents multiplied by p^k.
    Poly frobenius_pow(unsigned k) const;
    Poly derivative() const;

    /// "c_d*T^d + ... + c_0", coefficient 1 omitted, "0" for zero.
    std::string to_string() const;

private:
    void check(const Poly& o) const;
    FieldPtr f_;
    Coeffs c_;
};

/// f = quot * g + rem with deg rem < deg g. Throws DivisionByZero on g = 0.
std::pair<Poly, Poly> divmod(const Poly& f, const Poly& g);
Poly operator/(const Poly& f, const Poly& g);
Poly operator%(const Poly& f, const Poly& g);
/// Monic gcd; gcd(0, 0) = 0.
Poly gcd(const Poly& f, const Poly& g);
/// Returns (g, s, t) with s f + t h = g monic.
struct XGcd {
    Poly g, s, t;
};
XGcd xgcd(const Poly& f, const Poly& h);
/// Modular exponentiation f^e mod m.
Poly powmod(const Poly& f, const std::uint64_t e, const Poly& m);

namespace kernel {

// Raw coefficient-vector arithmetic shared by Poly and LaurentSeries.
void normalize(Coeffs& c);
Coeffs add(const Field& F, const Coeffs& a, const Coeffs& b);
Coeffs sub(const Field& F, const Coeffs& a, const Coeffs& b);
/// Full product, not normalized; empty when either input is empty.
Coeffs mul(const Field& F, const Coeffs& a, const Coeffs& b);
/// Product truncated to its first n coefficients.
Coeffs mul_low(const Field& F, const Coeffs& a, const Coeffs& b, std::size_t n);

Coeffs mul_schoolbook(const Field& F, const Coeffs& a, const Coeffs& b);
Coeffs mul_karatsuba(const Field& F, const Coeffs& a, const Coeffs& b);
/// Kronecker substitution through GMP integer multiplication (prime fields).
Coeffs mul_kronecker(const Field& F, const Coeffs& a, const Coeffs& b);

} // namespace kernel

} // namespace lcf

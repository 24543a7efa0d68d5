#pragma once

// Truncated Laurent series in F_q((T^{-1})).
//
// A series x = sum_{n >= val} c_n T^{-n} stores c_val .. c_{val+known-1}.
// Coefficients from val + known on are unknown, and reading one throws.
// The zero series is represented with known = 0 and val equal to its
// absolute precision: every coefficient below T^{-val} is zero.

#include "lcf/poly.hpp"

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace lcf {

/// log_q of an absolute value, NEG_INF for |0|.
class LogAbs {
public:
    constexpr LogAbs() : v_(NEG_INF) {}
    constexpr explicit LogAbs(std::int64_t v) : v_(v) {}
    static constexpr LogAbs neg_inf() { return LogAbs(); }

    constexpr bool is_neg_inf() const { return v_ == NEG_INF; }
    /// Throws PreconditionViolated on NEG_INF.
    std::int64_t value() const;
    constexpr std::int64_t raw() const { return v_; }

    constexpr auto operator<=>(const LogAbs&) const = default;
    std::string to_string() const;

private:
    std::int64_t v_;
};

class LaurentSeries {
public:
    /// Zero to absolute precision abs: all coefficients of T^{-n}, n < abs, vanish.
    static LaurentSeries zero(FieldPtr f, std::int64_t abs);
    /// Coefficients c[i] of T^{-(val+i)}; all of them are treated as known.
    /// Leading zeros are absorbed into val.
    static LaurentSeries from_coeffs(FieldPtr f, std::int64_t val, Coeffs c);
    /// num/den to target_known coefficients.
    static LaurentSeries from_rational(const Poly& num, const Poly& den, std::int64_t target_known);
    /// A polynomial known down to T^{-(abs-1)}.
    static LaurentSeries from_poly(const Poly& f, std::int64_t abs);
    static LaurentSeries parse(FieldPtr f, std::string_view text);

    const FieldPtr& field() const { return f_; }
    std::int64_t val() const { return val_; }
    std::int64_t known() const { return static_cast<std::int64_t>(c_.size()); }
    /// First exponent n whose coefficient of T^{-n} is unknown.
    std::int64_t abs_precision() const { return val_ + known(); }
    bool is_zero() const { return c_.empty(); }
    const Coeffs& coeffs() const { return c_; }

    /// Coefficient of T^{-n}. Throws InsufficientPrecision past the budget.
    std::uint32_t coeff_at(std::int64_t n) const;
    LogAbs logabs() const { return is_zero() ? LogAbs::neg_inf() : LogAbs(-val_); }

    LaurentSeries operator+(const LaurentSeries& o) const;
    LaurentSeries operator-(const LaurentSeries& o) const;
    LaurentSeries operator*(const LaurentSeries& o) const;
    LaurentSeries operator/(const LaurentSeries& o) const { return *this * o.inv(); }
    LaurentSeries operator-() const;
    LaurentSeries scale(std::uint32_t c) const;
    /// Throws DivisionByZero on zero, InsufficientPrecision when known = 0.
    LaurentSeries inv() const;
    /// x^{p^k}.
    LaurentSeries frobenius_pow(unsigned k) const;
    /// x * T^e.
    LaurentSeries shift(std::int64_t e) const;
    /// Drops everything from T^{-abs} on.
    LaurentSeries truncate(std::int64_t abs) const;

    /// Exact structural equality (val, known and coefficients).
    bool operator==(const LaurentSeries& o) const;

    std::string to_string() const;

private:
    LaurentSeries(FieldPtr f, std::int64_t val, Coeffs c);
    void check(const LaurentSeries& o) const;

    FieldPtr f_;
    std::int64_t val_;
    Coeffs c_;
};

/// The polynomial part a_0 of x. Needs x known down to T^0.
Poly polynomial_part(const LaurentSeries& x);

/// Inverse of the power series c_0 + c_1 t + ... to n terms (c_0 != 0).
Coeffs series_inverse(const Field& F, const Coeffs& c, std::size_t n);

} // namespace lcf

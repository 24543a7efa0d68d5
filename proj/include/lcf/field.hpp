#pragma once

// Finite fields F_q, q = p^m, in a polynomial basis over F_p.
//
// An element is stored as a code c = sum coords[i] * p^i where coords are the
// coefficients of the basis polynomial in x (x a root of the modulus).  For
// m = 1 the code is the residue itself.

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace lcf {

class Field;
using FieldPtr = std::shared_ptr<const Field>;

class Field {
public:
    /// F_p (m = 1) or F_{p^m} with the first monic irreducible modulus of
    /// degree m, ordered by the integer c_0 + c_1 p + ... + c_{m-1} p^{m-1}.
    static FieldPtr make(std::uint32_t p, std::uint32_t m = 1);
    /// F_{p^m} with a caller-supplied modulus, lowest coefficient first,
    /// monic of degree m. Rejected unless irreducible over F_p.
    static FieldPtr make(std::uint32_t p, const std::vector<std::uint32_t>& modulus);

    std::uint32_t p() const { return p_; }
    std::uint32_t m() const { return m_; }
    std::uint32_t q() const { return q_; }
    bool is_prime() const { return m_ == 1; }
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }

    bool same(const Field& other) const;

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const
    {
        if (m_ == 1) {
            std::uint64_t s = std::uint64_t(a) + b;
            return static_cast<std::uint32_t>(s >= p_ ? s - p_ : s);
        }
        if (p_ == 2)
            return a ^ b;
        return add_digits(a, b);
    }
    std::uint32_t neg(std::uint32_t a) const
    {
        if (m_ == 1)
            return a == 0 ? 0 : p_ - a;
        if (p_ == 2)
            return a;
        return neg_digits(a);
    }
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const
    {
        if (m_ == 1)
            return static_cast<std::uint32_t>(std::uint64_t(a) * b % p_);
        if (a == 0 || b == 0)
            return 0;
        std::uint32_t e = log_[a] + log_[b];
        if (e >= q_ - 1)
            e -= q_ - 1;
        return exp_[e];
    }
    /// Throws DivisionByZero on 0.
    std::uint32_t inv(std::uint32_t a) const;
    std::uint32_t div(std::uint32_t a, std::uint32_t b) const { return mul(a, inv(b)); }
    std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;
    /// x -> x^p.
    std::uint32_t frobenius(std::uint32_t a) const;
    /// x -> x^{p^k}.
    std::uint32_t frobenius(std::uint32_t a, std::uint64_t k) const;
    /// Image of an integer in the prime subfield.
    std::uint32_t from_int(std::int64_t n) const;

    /// Bare element text: "3" for F_p, "x^2+2*x+1" for extensions.
    std::string format(std::uint32_t a) const;
    std::uint32_t parse(std::string_view text) const;
    /// "F_4 = F_2[x]/(x^2+x+1)".
    std::string describe() const;

    Field(std::uint32_t p, std::vector<std::uint32_t> modulus);

private:
    std::uint32_t add_digits(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t neg_digits(std::uint32_t a) const;

    std::uint32_t p_;
    std::uint32_t m_;
    std::uint32_t q_;
    std::vector<std::uint32_t> modulus_;
    std::vector<std::uint32_t> log_;
    std::vector<std::uint32_t> exp_;
};

/// A single element of F_q carrying its field.
class FieldElement {
public:
    FieldElement(FieldPtr f, std::uint32_t code);
    static FieldElement zero(FieldPtr f) { return FieldElement(std::move(f), 0); }
    static FieldElement one(FieldPtr f) { return FieldElement(std::move(f), 1); }

    const FieldPtr& field() const { return f_; }
    std::uint32_t code() const { return c_; }
    bool is_zero() const { return c_ == 0; }
    /// Polynomial-basis coordinates, length m.
    std::vector<std::uint32_t> coords() const;

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator/(const FieldElement& o) const;
    FieldElement operator-() const;
    FieldElement inv() const;
    FieldElement frobenius() const;
    FieldElement pow(std::uint64_t e) const;

    bool operator==(const FieldElement& o) const;
    bool operator!=(const FieldElement& o) const { return !(*this == o); }

    std::string to_string() const { return f_->format(c_); }

private:
    void check(const FieldElement& o) const;
    FieldPtr f_;
    std::uint32_t c_;
};

/// Throws SpecMismatch unless a and b describe the same field.
void require_same_field(const Field& a, const Field& b);

bool is_prime(std::uint64_t n);

} // namespace lcf

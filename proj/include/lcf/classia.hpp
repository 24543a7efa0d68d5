#pragma once

// Class IA continued fractions: twisted-periodic quotient patterns, exact
// degree-ratio bounds and algebraic-degree certificates.

#include "lcf/contfrac.hpp"
#include "lcf/field.hpp"
#include "lcf/laurent.hpp"
#include "lcf/poly.hpp"
#include "lcf/rational.hpp"
#include "lcf/xpoly.hpp"

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace lcf {

/// [a_0, ..., a_{t-1}, b_1, b_2, ...] with b_{j+s} = unit^{+1} b_j^{p^k} for
/// odd j and unit^{-1} b_j^{p^k} for even j. The first listed quotient is
/// a_0 (or b_1 when the preperiod is empty).
struct ClassIAPattern {
    FieldPtr field;
    std::vector<Poly> preperiod;
    std::vector<Poly> seed;
    std::uint32_t unit = 1;
    unsigned k = 1;

    /// Throws PreconditionViolated on an empty seed, a seed quotient of
    /// degree < 1, a zero unit or a non-initial preperiod quotient of degree < 1.
    void validate() const;
    std::vector<std::int64_t> seed_degrees() const;
    /// p^k.
    Integer frobenius_factor() const;
};

/// First n quotients.
std::vector<Poly> generate_quotients(const ClassIAPattern& pat, std::size_t n);
/// Degrees of the first n quotients, without building the polynomials.
std::vector<Integer> generate_degrees(const ClassIAPattern& pat, std::size_t n);

/// Lazy quotient source with a memo.
class ClassIASource : public QuotientSource {
public:
    explicit ClassIASource(ClassIAPattern pat);
    FieldPtr field() const override { return pat_.field; }
    std::optional<Poly> quotient(std::size_t n) const override;
    const ClassIAPattern& pattern() const { return pat_; }

private:
    ClassIAPattern pat_;
    mutable std::mutex mu_;
    mutable std::vector<Poly> cache_;
};

struct RatioBounds {
    std::vector<Rational> r;
    Rational limsup;
    Rational liminf;
};

RatioBounds ratio_bounds(const ClassIAPattern& pat);
RatioBounds ratio_bounds(const std::vector<std::int64_t>& seed_degrees, const Integer& pk);

/// Preperiod degree D = sum(d_i) / (p^k - 1) for which the ratios
/// deg q_{n+1}/deg q_n hit the bounds exactly from the start. nullopt when
/// k = 0 or the division is not exact.
std::optional<Integer> balancing_degree(const ClassIAPattern& pat);

struct EmpiricalRatios {
    /// deg q_{n+1} / deg q_n for n = 1 .. N-2 (N quotients a_0 .. a_{N-1}).
    std::vector<Rational> ratios;
    /// Number of leading ratios left out of the extrema.
    std::size_t skipped = 0;
    Rational max;
    Rational min;
    std::size_t argmax = 0;
    std::size_t argmin = 0;
};

/// Ratios from quotient degrees; skips the first t+s ratios (t the preperiod
/// length, s the seed length) before taking extrema.
EmpiricalRatios empirical_ratios(const ClassIAPattern& pat, std::size_t n);
/// Same from an explicit degree list; deg a_0 is ignored.
EmpiricalRatios empirical_ratios(const std::vector<Integer>& degrees, std::size_t skip);

/// Valuation sentinel for a vanishing coefficient.
inline constexpr std::int64_t VAL_INFINITE = INT64_MAX;

/// valuations[i-1] = v(a_i) for X^m + a_1 X^{m-1} + ... + a_m. True iff
/// v(a_i)/i > v(a_m)/m for all 1 <= i < m. Throws PreconditionViolated unless
/// v(a_m) > 0 and gcd(v(a_m), m) = 1.
bool newton_irreducible(const std::vector<std::int64_t>& valuations, std::int64_t m);

struct ValuationCheck {
    std::int64_t i = 0;
    std::int64_t expected = 0;
    std::int64_t computed = 0;
    bool ok = false;
};

struct DegreeCertificate {
    Integer degree;
    std::vector<ValuationCheck> checks;
    bool newton = false;
    /// a q_{s-1} X^{p^k+1} - a p_{s-1} X^{p^k} + q_{s-2} X - p_{s-2}, vanishing at [b_1, b_2, ...].
    XPoly relation{FieldPtr{}};
    /// The relation evaluated at the series vanishes below T^{-residual_precision}.
    std::int64_t residual_precision = 0;
    /// Absolute precision used for [b_1, b_2, ...].
    std::int64_t precision = 0;
};

/// Certifies deg = p^k + 1. Requires gcd(deg b_s, p) = 1 (PreconditionViolated
/// otherwise); throws InsufficientPrecision when the needed precision exceeds
/// budget and CertificateFailed at the first wrong valuation.
DegreeCertificate degree_certificate(const ClassIAPattern& pat, std::int64_t budget);

/// Absolute precision degree_certificate asks for.
std::int64_t certificate_precision(const ClassIAPattern& pat);

} // namespace lcf

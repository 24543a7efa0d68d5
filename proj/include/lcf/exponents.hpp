#pragma once

// Heights, Liouville-type checks, exponent brackets and hypothesis checkers
// for families of rational and quadratic approximations.

#include "lcf/contfrac.hpp"
#include "lcf/laurent.hpp"
#include "lcf/poly.hpp"
#include "lcf/rational.hpp"
#include "lcf/xpoly.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace lcf {

/// One approximation alpha_j of a target xi. All quantities are log_q.
struct ApproximationRecord {
    std::size_t j = 0;
    /// log H(alpha_j).
    std::int64_t h = 0;
    /// -log |xi - alpha_j|.
    std::int64_t dist = 0;
    /// -log |alpha_j - alpha_j'| for quadratic alpha_j.
    std::optional<std::int64_t> conj;
    /// log H(alpha_{j+1}) when known.
    std::optional<std::int64_t> h_next;
};

enum class EstimateMethod { Ratio, Brute, BestQuad, BestRational };
const char* method_name(EstimateMethod m);

struct ExponentEstimate {
    int n = 1;
    Rational lower;
    Rational upper;
    EstimateMethod method = EstimateMethod::Ratio;
    /// Index range [window_lo, window_hi] the bracket was taken over.
    std::size_t window_lo = 0;
    std::size_t window_hi = 0;
};

/// log_q H(P): the largest coefficient degree.
std::int64_t height(const XPoly& P);
/// log_q H of a rational p/q in lowest terms.
std::int64_t rational_height(const Poly& p, const Poly& q);

/// Reads a_0 .. a_N and brackets the last `window` ratios deg q_{n+1}/deg q_n
/// (n = 1 .. N-1).
ExponentEstimate w1_estimate(const QuotientSource& src, std::size_t N, std::size_t window);
/// Same from the degrees of a_0 .. a_N.
ExponentEstimate w1_estimate(const std::vector<Integer>& degrees, std::size_t window);

/// A point of known degree and height with a way to expand it.
struct AlgebraicPoint {
    std::optional<int> degree;
    std::int64_t height = 0;
    std::function<LaurentSeries(std::int64_t)> value;
    /// Exact vanishing test for P at the point, when available.
    std::function<bool(const XPoly&)> is_root;

    static AlgebraicPoint rational(const Poly& p, const Poly& q);
    static AlgebraicPoint quadratic(const QuadraticNumber& a);
};

struct LiouvilleVerdict {
    bool holds = false;
    /// log_q of the left side; NEG_INF when it vanished to the evaluated precision.
    std::int64_t lhs = 0;
    /// log_q of the lower bound.
    std::int64_t rhs = 0;
    /// lhs - rhs; negative when the inequality fails.
    std::int64_t margin = 0;
};

/// |P(alpha)| >= H(P)^{-n+1} H(alpha)^{-m}, m = deg P, n = deg alpha.
/// NotApplicable without a degree; PreconditionViolated when P(alpha) = 0.
LiouvilleVerdict liouville_check(const XPoly& P, const AlgebraicPoint& alpha);
/// |alpha - beta| >= H(alpha)^{-n} H(beta)^{-m}, m = deg alpha, n = deg beta.
LiouvilleVerdict liouville_check(const AlgebraicPoint& alpha, const AlgebraicPoint& beta);
/// |alpha - alpha'| >= H(alpha)^{-1} for a separable quadratic.
LiouvilleVerdict galois_check(const QuadraticNumber& alpha);

struct BruteForceResult {
    ExponentEstimate estimate;
    /// Polynomials enumerated (nonzero, height >= 1).
    std::uint64_t enumerated = 0;
    /// Polynomials with P(xi) = 0 to every known digit; excluded.
    std::uint64_t zero_to_precision = 0;
    /// A polynomial attaining the best exponent.
    XPoly best{FieldPtr{}};
    std::int64_t best_h = 0;
    std::int64_t best_dist = 0;
};

/// Largest -log|P(xi)| / log H(P) over nonzero P with deg_X P <= n and
/// 1 <= log H(P) <= h_max. The count q^{(n+1)(h_max+1)} must not exceed
/// 2^24 (EnumerationTooLarge). xi must be known to `precision` digits.
BruteForceResult brute_force_wn(const LaurentSeries& xi, int n, int h_max, std::int64_t precision);

struct RecordCheck {
    std::size_t j = 0;
    Rational dist_ratio;
    std::optional<Rational> conj_ratio;
    std::optional<Rational> height_ratio;
    Rational tolerance;
};

struct VerdictReport {
    bool ok = false;
    std::string failure;
    std::optional<std::size_t> failing_j;
    std::size_t window_lo = 0;
    std::size_t window_hi = 0;
    std::vector<RecordCheck> rows;
    /// Bracket for w_n^* and w_n, and for w_n - w_n^* when conjugates are used.
    Rational wstar_lo, wstar_hi;
    Rational w_lo, w_hi;
    std::optional<Rational> gap_lo, gap_hi;
    /// Smallest C for which every hypothesis holds with tolerance C/h_j.
    Rational needed_constant;
};

struct BestParams {
    int d = 1;
    Rational theta, rho, delta;
    /// Only for quadratic approximations.
    std::optional<Rational> eps, chi;
    /// Tolerance C/h_j on every limit comparison.
    Rational tolerance_constant = 3;
    /// Fraction of leading records skipped.
    Rational discard = Rational(1, 5);
};

/// Evaluates the hypotheses without throwing.
VerdictReport evaluate_bestrational(const std::vector<ApproximationRecord>& records, const BestParams& p);
VerdictReport evaluate_bestquad(const std::vector<ApproximationRecord>& records, const BestParams& p);
/// Throw HypothesisViolated (resp. SideConditionViolated) on failure.
VerdictReport check_bestrational(const std::vector<ApproximationRecord>& records, const BestParams& p);
VerdictReport check_bestquad(const std::vector<ApproximationRecord>& records, const BestParams& p);

/// Records of the convergents p_j/q_j, j = 1 .. count.
std::vector<ApproximationRecord> convergent_records(const QuotientSource& src, std::size_t count);

} // namespace lcf

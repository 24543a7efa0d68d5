#pragma once

// Explicit families: parameter search and Class IA patterns with prescribed
// ratio bounds, expansions with prescribed growth, quotient schedules with
// their quadratic approximants, and gap series.

#include "lcf/classia.hpp"
#include "lcf/contfrac.hpp"
#include "lcf/exponents.hpp"
#include "lcf/poly.hpp"
#include "lcf/rational.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

namespace lcf {

struct SeqParams {
    std::size_t j = 0;
    unsigned long k = 0;
    unsigned long n = 0;
    /// u = r^y / p^x.
    Rational u;
    unsigned long x = 0;
    unsigned long y = 0;
};

/// Checks gcd(num u, p) = 1, p^m | den u, n >= 3 and
/// 2d-1 < min{w, u, p^k/(w u^{n-2})}, max{...} = w.
bool seq_params_valid(int d, const Rational& w, unsigned long p, const SeqParams& s);

/// Emits parameters with strictly increasing k. u is searched among r^y/p^x
/// (r = 3 for p = 2, else 2) in rectangles x in [m, m+R], y in [0, R] for
/// R = 1 .. max_window.
class SeqSearch {
public:
    SeqSearch(int d, Rational w, unsigned long p, unsigned long max_window = 96);
    /// Throws SearchExhausted when the window holds no admissible u.
    SeqParams next();
    unsigned long m() const { return m_; }
    unsigned long r() const { return r_; }

private:
    int d_;
    Rational w_;
    unsigned long p_;
    unsigned long m_ = 0;
    unsigned long r_ = 2;
    unsigned long window_;
    std::size_t j_ = 0;
    unsigned long last_k_ = 0;
};

std::vector<SeqParams> seq_search(int d, const Rational& w, unsigned long p, std::size_t count,
                                  unsigned long max_window = 96);

/// Polynomial of degree `degree` used for seed quotient i (0-based).
using QuotientStyle = std::function<Poly(std::size_t i, std::int64_t degree)>;
QuotientStyle monomial_style(FieldPtr f);
/// T^d + 1.
QuotientStyle shifted_style(FieldPtr f);

struct MainalgBuild {
    ClassIAPattern pattern;
    std::vector<Integer> degrees;
    /// r_i from the closed forms (a-b)/((p^k-1)b), ... .
    std::vector<Rational> r_closed;
    RatioBounds bounds;
};

/// Seed degrees d_1..d_n of the pattern for these parameters.
std::vector<Integer> mainalg_degrees(int d, const Rational& w, unsigned long p, const SeqParams& s);
MainalgBuild build_mainalg(FieldPtr f, const SeqParams& s, int d, const Rational& w, QuotientStyle style = {});

/// [0; a_1, a_2, ...] with a_1 = T + eps_1, a_n = T^{floor((w-1) deg Q_{n-1})} + eps_n.
class RealEqualSource : public QuotientSource {
public:
    using Bits = std::function<bool(std::size_t)>;
    RealEqualSource(FieldPtr f, Rational w, Bits eps);
    FieldPtr field() const override { return f_; }
    std::optional<Poly> quotient(std::size_t n) const override;
    /// deg a_0 .. deg a_{n-1}.
    std::vector<Integer> degrees(std::size_t n) const;

private:
    FieldPtr f_;
    Rational w_;
    Bits eps_;
};

/// Requires w >= 2d-1 and w >= 2 (the second keeps every a_n non-constant).
std::shared_ptr<RealEqualSource> build_realequal(FieldPtr f, int d, const Rational& w, RealEqualSource::Bits eps);

/// floor(w^i) for rational w > 1, cached.
class PowerFloors {
public:
    explicit PowerFloors(Rational w) : w_(std::move(w)) {}
    Integer at(std::size_t i) const;
    /// Largest i with floor(w^i) <= n.
    std::size_t index_below(const Integer& n) const;
    const Rational& base() const { return w_; }

private:
    Rational w_;
    mutable std::mutex mu_;
    mutable std::vector<Integer> cache_;
};

enum class ApproximantKind { Conti1, Conti2, Gap, Convergent };
const char* kind_name(ApproximantKind k);

/// Quotient schedules of the two families; symbol 0 = a, 1 = b, 2 = c.
class ContiFamily {
public:
    /// Throws ThresholdViolated or PreconditionViolated.
    static std::shared_ptr<ContiFamily> conti1(int d, const Rational& w, Poly a, Poly b);
    static std::shared_ptr<ContiFamily> conti2(int d, const Rational& w, const Rational& eta, Poly a, Poly b, Poly c);

    ApproximantKind kind() const { return kind_; }
    FieldPtr field() const { return a_.field(); }
    int d() const { return d_; }
    const Rational& w() const { return floors_.base(); }
    const Rational& eta() const { return eta_; }

    /// Symbol of a_n for n >= 1.
    int symbol(std::uint64_t n) const;
    Poly quotient(std::uint64_t n) const;
    /// Number of a, b, c among a_1 .. a_upto.
    std::array<std::uint64_t, 3> count_symbols(std::uint64_t upto) const;
    /// floor(eta w^j) and m_j (conti2 only).
    std::uint64_t period_length(std::size_t j) const;
    std::uint64_t repeat_count(std::size_t j) const;

    /// Cut index floor(w^j).
    std::uint64_t cut(std::size_t j) const;
    /// First index where approximant j differs from the target.
    std::uint64_t divergence(std::size_t j) const;
    std::shared_ptr<QuotientSource> target() const;
    std::vector<Poly> approximant_preperiod(std::size_t j) const;
    std::vector<Poly> approximant_period(std::size_t j) const;
    /// Rough coefficient count of approximant j's minimal polynomial.
    std::uint64_t approximant_cost(std::size_t j) const;
    QuadraticNumber approximant(std::size_t j) const;
    /// Record for approximant j; the distance comes from degree counts.
    ApproximationRecord record(const QuadraticNumber& alpha, std::size_t j) const;
    /// Records for j = 1 .. j_max; throws InsufficientPrecision before
    /// building an approximant whose cost exceeds budget.
    std::vector<ApproximationRecord> records(std::size_t j_max, std::uint64_t budget) const;

    /// Limits of dist/h and conj/h, and the exponent values.
    Rational dist_limit() const;
    Rational conj_limit() const;
    Rational wstar_target() const;
    Rational w_target() const;
    /// The bestquad parameters matching the family.
    BestParams best_params() const;

private:
    ContiFamily(ApproximantKind kind, int d, Rational w, Rational eta, Poly a, Poly b, Poly c);
    const Poly& poly_of(int sym) const;

    ApproximantKind kind_;
    int d_;
    PowerFloors floors_;
    Rational eta_;
    Poly a_, b_, c_;
};

/// Exact threshold tests.
bool conti1_threshold_ok(int d, const Rational& w);
bool conti2_threshold_ok(int d, const Rational& w, const Rational& eta);

/// Sum_j T^{-n_j} with rational approximants p_j / T^{n_j}.
class GapFamily {
public:
    using Schedule = std::function<Integer(std::size_t)>;
    explicit GapFamily(FieldPtr f, Schedule n);
    /// n_j as a checked 64-bit value; verifies strict increase up to j.
    std::int64_t exponent(std::size_t j) const;
    LaurentSeries series(std::int64_t abs) const;
    /// (p_j, q_j) with q_j = T^{n_j}.
    std::pair<Poly, Poly> approximant(std::size_t j) const;
    ApproximationRecord record(std::size_t j) const;
    std::vector<ApproximationRecord> records(std::size_t j_lo, std::size_t j_hi) const;
    const FieldPtr& field() const { return f_; }

private:
    FieldPtr f_;
    Schedule n_;
};

GapFamily build_gap_series(FieldPtr f, GapFamily::Schedule n);
/// Schedule n_j = base^j.
GapFamily::Schedule geometric_schedule(unsigned long base);

} // namespace lcf

#pragma once

// Continued fractions in F_q((T^{-1})): expansion, convergents, quadratic
// values of ultimately periodic expansions and exact distances.
//
// Indexing: x = [a_0; a_1, a_2, ...] with deg a_n >= 1 for n >= 1,
// p_{-1} = 1, q_{-1} = 0, p_0 = a_0, q_0 = 1.

#include "lcf/laurent.hpp"
#include "lcf/poly.hpp"
#include "lcf/xpoly.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace lcf {

enum class StopReason {
    Requested,       ///< max_quotients reached
    RationalTail,    ///< x equals the last convergent to every known digit
    BudgetExhausted, ///< the next quotient cannot be certified
};

const char* stop_reason_name(StopReason r);

struct CFExpansion {
    FieldPtr field;
    std::vector<Poly> quotients;
    /// True when the expansion terminated (rational input).
    bool complete = false;
    StopReason reason = StopReason::Requested;
    /// On BudgetExhausted: absolute precision needed for one more quotient.
    std::int64_t required_precision = 0;

    /// "[a0; a1, a2]".
    std::string to_string() const;
    static CFExpansion parse(FieldPtr f, const std::string& text, bool complete = true);
};

struct Convergent {
    Poly p;
    Poly q;
    std::size_t index;
};

/// Streams convergents as quotients arrive.
class ConvergentStream {
public:
    explicit ConvergentStream(FieldPtr f);
    const Convergent& push(const Poly& a);
    std::size_t size() const { return n_; }

private:
    FieldPtr f_;
    Poly p1_, p2_, q1_, q2_;
    Convergent last_;
    std::size_t n_ = 0;
};

std::vector<Convergent> convergents(const CFExpansion& e);

/// 2x2 polynomial matrix [[a, b], [c, d]].
struct Mat2 {
    Poly a, b, c, d;
    Mat2 operator*(const Mat2& o) const;
};

/// Product M(a_lo) ... M(a_{hi-1}) with M(a) = [[a, 1], [1, 0]], by a
/// balanced product tree. For lo = 0, hi = n+1 this is
/// [[p_n, p_{n-1}], [q_n, q_{n-1}]]. An empty range gives the identity.
Mat2 cf_matrix(FieldPtr f, const std::vector<Poly>& quotients, std::size_t lo, std::size_t hi);

/// Expands x, certifying each quotient; throws InsufficientPrecision when the
/// budget runs out before max_quotients and the tail is not rational.
CFExpansion cf_expand(const LaurentSeries& x, std::size_t max_quotients);
/// Same, but returns the certified prefix with its stop reason.
CFExpansion cf_expand_partial(const LaurentSeries& x, std::size_t max_quotients);

/// Value of e to target_known coefficients. For an incomplete expansion
/// only the digits fixed by the prefix can be produced.
LaurentSeries cf_value(const CFExpansion& e, std::int64_t target_known);

/// Source of partial quotients; nullopt marks the end of a finite expansion.
class QuotientSource {
public:
    virtual ~QuotientSource() = default;
    virtual FieldPtr field() const = 0;
    virtual std::optional<Poly> quotient(std::size_t n) const = 0;
};

class ListSource : public QuotientSource {
public:
    explicit ListSource(CFExpansion e) : e_(std::move(e)) {}
    FieldPtr field() const override { return e_.field; }
    /// Throws InsufficientPrecision past an incomplete prefix.
    std::optional<Poly> quotient(std::size_t n) const override;

private:
    CFExpansion e_;
};

class PeriodicSource : public QuotientSource {
public:
    PeriodicSource(FieldPtr f, std::vector<Poly> preperiod, std::vector<Poly> period);
    FieldPtr field() const override { return f_; }
    std::optional<Poly> quotient(std::size_t n) const override;

private:
    FieldPtr f_;
    std::vector<Poly> pre_, per_;
};

class RuleSource : public QuotientSource {
public:
    using Rule = std::function<Poly(std::size_t)>;
    RuleSource(FieldPtr f, Rule rule) : f_(std::move(f)), rule_(std::move(rule)) {}
    FieldPtr field() const override { return f_; }
    std::optional<Poly> quotient(std::size_t n) const override { return rule_(n); }

private:
    FieldPtr f_;
    Rule rule_;
};

/// First n quotients of a source (stops early at the end of a finite one).
CFExpansion take(const QuotientSource& src, std::size_t n);

struct QuadraticNumber {
    Poly A, B, C;
    /// Root tag: the expansion of the intended root.
    std::vector<Poly> preperiod;
    std::vector<Poly> period;
    std::int64_t height_log = 0;
    /// Monic irreducible pi of F_q[T] modulo which AX^2+BX+C has no root.
    Poly inert_prime;

    XPoly minimal_polynomial() const;
    /// The tagged root to absolute precision abs, by Newton iteration on the
    /// minimal polynomial started from a short prefix of the tag.
    LaurentSeries root(std::int64_t abs) const;
    /// The Galois conjugate -B/A - root.
    LaurentSeries conjugate(std::int64_t abs) const;
    PeriodicSource source() const;
};

/// Minimal polynomial of [pre; period-bar]. Throws DegenerateQuadratic when
/// no irreducibility certificate is found.
QuadraticNumber quadratic_value(const std::vector<Poly>& preperiod, const std::vector<Poly>& period);

/// Builds a QuadraticNumber from coefficients, normalizing and certifying
/// irreducibility; the tag must describe one of its roots.
QuadraticNumber quadratic_from_coefficients(const Poly& A, const Poly& B, const Poly& C,
                                            std::vector<Poly> preperiod, std::vector<Poly> period);

/// Searches small monic irreducibles pi for one modulo which AX^2+BX+C has no
/// root in F_q[T]/(pi).
std::optional<Poly> find_inert_prime(const Poly& A, const Poly& B, const Poly& C);

/// log_q |alpha - alpha'|.
LogAbs conjugate_distance(const QuadraticNumber& alpha);

/// log_q |x - y| by direct subtraction. Throws when x = y to all known digits.
LogAbs cf_distance(const LaurentSeries& x, const LaurentSeries& y);

/// log_q |x - y| for two expansions. With a hint (the number of leading
/// quotients a_0 .. a_{hint-1} the two share) the value comes from degree
/// arithmetic alone; without one the values are subtracted as series.
LogAbs cf_distance(const QuotientSource& x, const QuotientSource& y,
                   std::optional<std::size_t> shared_prefix_hint,
                   std::size_t scan_limit = 1u << 22);

/// Index of the first quotient where x and y differ, scanning up to limit.
std::optional<std::size_t> first_difference(const QuotientSource& x, const QuotientSource& y,
                                            std::size_t limit);

} // namespace lcf

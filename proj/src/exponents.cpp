#include "lcf/exponents.hpp"

#include "lcf/error.hpp"

#include <algorithm>

namespace lcf {

const char* method_name(EstimateMethod m)
{
    switch (m) {
    case EstimateMethod::Ratio: return "ratio";
    case EstimateMethod::Brute: return "brute";
    case EstimateMethod::BestQuad: return "bestquad";
    case EstimateMethod::BestRational: return "bestrational";
    }
    return "unknown";
}

std::int64_t height(const XPoly& P) { return P.height(); }

std::int64_t rational_height(const Poly& p, const Poly& q)
{
    if (q.is_zero())
        throw DivisionByZero("rational with zero denominator");
    Poly g = gcd(p, q);
    Poly pp = p.is_zero() ? p : p / g;
    Poly qq = q / g;
    return std::max(pp.is_zero() ? std::int64_t(0) : pp.degree(), qq.degree());
}

ExponentEstimate w1_estimate(const std::vector<Integer>& degrees, std::size_t window)
{
    if (degrees.size() < 2)
        throw PreconditionViolated("w1_estimate needs a_0 .. a_N with N >= 2");
    const std::size_t N = degrees.size() - 1;
    if (window < 2 || window > N - 1)
        throw PreconditionViolated("window " + std::to_string(window) + " must lie in [2, N-1] = [2, " +
                                   std::to_string(N - 1) + "]");
    std::vector<Integer> degq(N + 1, 0);
    for (std::size_t n = 1; n <= N; ++n) {
        if (degrees[n] < 1)
            throw PreconditionViolated("partial quotient a_" + std::to_string(n) + " has degree < 1");
        degq[n] = degq[n - 1] + degrees[n];
    }
    ExponentEstimate e;
    e.n = 1;
    e.method = EstimateMethod::Ratio;
    e.window_lo = N - window;
    e.window_hi = N - 1;
    bool first = true;
    for (std::size_t n = e.window_lo; n <= e.window_hi; ++n) {
        Rational r(degq[n + 1], degq[n]);
        r.canonicalize();
        if (first || r < e.lower)
            e.lower = r;
        if (first || r > e.upper)
            e.upper = r;
        first = false;
    }
    return e;
}

ExponentEstimate w1_estimate(const QuotientSource& src, std::size_t N, std::size_t window)
{
    std::vector<Integer> deg;
    for (std::size_t n = 0; n <= N; ++n) {
        auto a = src.quotient(n);
        if (!a)
            throw PreconditionViolated("the expansion ends at index " + std::to_string(n));
        deg.push_back(Integer(static_cast<long>(a->is_zero() ? 0 : a->degree())));
    }
    return w1_estimate(deg, window);
}

namespace {

// Pseudo-remainder of P modulo the quadratic A X^2 + B X + C.
XPoly quadratic_remainder(XPoly P, const QuadraticNumber& a)
{
    const XPoly M = a.minimal_polynomial();
    const FieldPtr& f = a.A.field();
    while (P.degree() >= 2) {
        std::size_t d = static_cast<std::size_t>(P.degree());
        std::vector<Poly> shift(d - 2, Poly(f));
        shift.push_back(P.coeff(d));
        P = P.scale(a.A) - M * XPoly(f, shift);
    }
    return P;
}

LaurentSeries eval_at(const XPoly& P, const AlgebraicPoint& a, std::int64_t abs)
{
    std::int64_t extra = 16;
    for (int tries = 0; tries < 40; ++tries) {
        LaurentSeries v = P.eval(a.value(abs + extra));
        if (v.abs_precision() >= abs)
            return v.truncate(abs);
        extra *= 2;
    }
    throw InsufficientPrecision("could not evaluate to precision " + std::to_string(abs));
}

LiouvilleVerdict verdict(const LaurentSeries& v, std::int64_t rhs)
{
    LiouvilleVerdict out;
    out.rhs = rhs;
    if (v.is_zero()) {
        out.lhs = NEG_INF;
        out.margin = -1;
        out.holds = false;
        return out;
    }
    out.lhs = -v.val();
    out.margin = out.lhs - rhs;
    out.holds = out.margin >= 0;
    return out;
}

} // namespace

AlgebraicPoint AlgebraicPoint::rational(const Poly& p, const Poly& q)
{
    if (q.is_zero())
        throw DivisionByZero("rational point with zero denominator");
    AlgebraicPoint out;
    out.degree = 1;
    out.height = rational_height(p, q);
    out.value = [p, q](std::int64_t abs) {
        if (p.is_zero())
            return LaurentSeries::zero(q.field(), abs);
        std::int64_t val = q.degree() - p.degree();
        return LaurentSeries::from_rational(p, q, std::max<std::int64_t>(0, abs - val));
    };
    out.is_root = [p, q](const XPoly& P) {
        if (P.is_zero())
            return true;
        const FieldPtr& f = p.field();
        std::size_t m = static_cast<std::size_t>(P.degree());
        Poly acc(f);
        Poly pp = Poly::constant(f, 1);
        std::vector<Poly> qpow{Poly::constant(f, 1)};
        for (std::size_t i = 1; i <= m; ++i)
            qpow.push_back(qpow.back() * q);
        for (std::size_t i = 0; i <= m; ++i) {
            acc += P.coeff(i) * pp * qpow[m - i];
            pp *= p;
        }
        return acc.is_zero();
    };
    return out;
}

AlgebraicPoint AlgebraicPoint::quadratic(const QuadraticNumber& a)
{
    AlgebraicPoint out;
    out.degree = 2;
    out.height = a.height_log;
    out.value = [a](std::int64_t abs) { return a.root(abs); };
    out.is_root = [a](const XPoly& P) { return quadratic_remainder(P, a).is_zero(); };
    return out;
}

LiouvilleVerdict liouville_check(const XPoly& P, const AlgebraicPoint& alpha)
{
    if (!alpha.degree)
        throw NotApplicable("the degree of alpha is unknown");
    if (P.degree() < 1)
        throw PreconditionViolated("P must be non-constant");
    const std::int64_t m = P.degree();
    const std::int64_t n = *alpha.degree;
    const std::int64_t rhs = -(n - 1) * height(P) - m * alpha.height;
    if (alpha.is_root && alpha.is_root(P))
        throw PreconditionViolated("P(alpha) = 0");
    return verdict(eval_at(P, alpha, -rhs + 1), rhs);
}

LiouvilleVerdict liouville_check(const AlgebraicPoint& alpha, const AlgebraicPoint& beta)
{
    if (!alpha.degree || !beta.degree)
        throw NotApplicable("a degree is unknown");
    const std::int64_t m = *alpha.degree, n = *beta.degree;
    const std::int64_t rhs = -n * alpha.height - m * beta.height;
    const std::int64_t abs = -rhs + 1;
    LaurentSeries d = alpha.value(abs) - beta.value(abs);
    return verdict(d.truncate(abs), rhs);
}

LiouvilleVerdict galois_check(const QuadraticNumber& alpha)
{
    LiouvilleVerdict out;
    out.lhs = conjugate_distance(alpha).value();
    out.rhs = -alpha.height_log;
    out.margin = out.lhs - out.rhs;
    out.holds = out.margin >= 0;
    return out;
}

BruteForceResult brute_force_wn(const LaurentSeries& xi, int n, int h_max, std::int64_t precision)
{
    const FieldPtr& f = xi.field();
    if (n < 1 || h_max < 1)
        throw PreconditionViolated("brute force needs n >= 1 and h_max >= 1");
    const std::size_t slots = static_cast<std::size_t>(n + 1) * static_cast<std::size_t>(h_max + 1);
    {
        long double count = 1;
        for (std::size_t i = 0; i < slots; ++i)
            count *= f->q();
        if (count > static_cast<long double>(1u << 24))
            throw EnumerationTooLarge("q^{(n+1)(h_max+1)} = " + std::to_string(f->q()) + "^" + std::to_string(slots) +
                                      " exceeds 2^24");
    }
    // Basis T^e xi^i, all known to `precision`.
    std::vector<LaurentSeries> basis;
    LaurentSeries power = LaurentSeries::from_poly(Poly::constant(f, 1), precision + h_max + 1);
    std::int64_t V = precision;
    for (int i = 0; i <= n; ++i) {
        if (i > 0)
            power = power * xi;
        for (int e = 0; e <= h_max; ++e) {
            LaurentSeries b = power.shift(e);
            if (b.abs_precision() < precision)
                throw InsufficientPrecision("T^" + std::to_string(e) + " xi^" + std::to_string(i) +
                                            " is known only to precision " + std::to_string(b.abs_precision()) +
                                            "; " + std::to_string(precision) + " requested");
            b = b.truncate(precision);
            if (!b.is_zero())
                V = std::min(V, b.val());
            basis.push_back(std::move(b));
        }
    }
    if (V >= precision)
        throw InsufficientPrecision("every basis element vanishes below precision " + std::to_string(precision));
    const std::size_t L = static_cast<std::size_t>(precision - V);
    std::vector<Coeffs> dense(basis.size(), Coeffs(L, 0));
    for (std::size_t b = 0; b < basis.size(); ++b)
        for (std::size_t k = 0; k < basis[b].coeffs().size(); ++k)
            dense[b][static_cast<std::size_t>(basis[b].val() - V) + k] = basis[b].coeffs()[k];

    BruteForceResult out;
    out.estimate.n = n;
    out.estimate.method = EstimateMethod::Brute;
    out.estimate.window_lo = 1;
    out.estimate.window_hi = static_cast<std::size_t>(h_max);
    Coeffs acc(L, 0);
    std::vector<std::uint32_t> digit(slots, 0);
    std::vector<int> col_nonzero(static_cast<std::size_t>(h_max + 1), 0);
    bool have = false;
    std::int64_t best_dist = 0, best_h = 1;
    std::vector<std::uint32_t> best_digits;
    auto add_scaled = [&](std::size_t b, std::uint32_t c) {
        const Coeffs& v = dense[b];
        for (std::size_t k = 0; k < L; ++k)
            if (v[k])
                acc[k] = f->add(acc[k], f->mul(c, v[k]));
    };
    for (;;) {
        // Odometer step over the coefficient codes.
        std::size_t pos = 0;
        while (pos < slots) {
            std::uint32_t old = digit[pos];
            std::uint32_t nw = old + 1 == f->q() ? 0 : old + 1;
            digit[pos] = nw;
            const int e = static_cast<int>(pos % static_cast<std::size_t>(h_max + 1));
            col_nonzero[static_cast<std::size_t>(e)] += (nw != 0) - (old != 0);
            add_scaled(pos, f->sub(nw, old));
            if (nw != 0)
                break;
            ++pos;
        }
        if (pos == slots)
            break;
        int h = h_max;
        while (h >= 0 && col_nonzero[static_cast<std::size_t>(h)] == 0)
            --h;
        if (h < 1)
            continue;
        ++out.enumerated;
        std::size_t k0 = 0;
        while (k0 < L && acc[k0] == 0)
            ++k0;
        if (k0 == L) {
            ++out.zero_to_precision;
            continue;
        }
        std::int64_t dist = V + static_cast<std::int64_t>(k0);
        // dist/h > best_dist/best_h
        if (!have || static_cast<__int128>(dist) * best_h > static_cast<__int128>(best_dist) * h) {
            have = true;
            best_dist = dist;
            best_h = h;
            best_digits = digit;
        }
    }
    if (!have)
        throw InsufficientPrecision("every enumerated polynomial vanishes at xi to precision " +
                                    std::to_string(precision));
    Rational r(Integer(static_cast<long>(best_dist)), Integer(static_cast<long>(best_h)));
    r.canonicalize();
    out.estimate.lower = out.estimate.upper = r;
    out.best_h = best_h;
    out.best_dist = best_dist;
    std::vector<Poly> cs;
    for (int i = 0; i <= n; ++i) {
        Coeffs c(static_cast<std::size_t>(h_max + 1));
        for (int e = 0; e <= h_max; ++e)
            c[static_cast<std::size_t>(e)] = best_digits[static_cast<std::size_t>(i * (h_max + 1) + e)];
        cs.push_back(Poly(f, c));
    }
    out.best = XPoly(f, cs);
    return out;
}

namespace {

Rational ratio(std::int64_t a, std::int64_t b)
{
    Rational r(Integer(static_cast<long>(a)), Integer(static_cast<long>(b)));
    r.canonicalize();
    return r;
}

struct Evaluation {
    VerdictReport rep;
    bool side_failure = false;
};

Evaluation evaluate(const std::vector<ApproximationRecord>& records, const BestParams& p, bool quad)
{
    Evaluation ev;
    VerdictReport& rep = ev.rep;
    const Rational d(p.d);
    auto fail = [&](std::string why, std::optional<std::size_t> j) {
        if (rep.failure.empty()) {
            rep.failure = std::move(why);
            rep.failing_j = j;
        }
    };
    rep.needed_constant = 0;
    if (quad) {
        rep.wstar_lo = d - 1 + p.delta;
        rep.wstar_hi = d - 1 + p.rho;
        if (p.eps && p.chi) {
            rep.gap_lo = *p.eps;
            rep.gap_hi = *p.chi;
            rep.w_lo = rep.wstar_lo + *p.eps;
            rep.w_hi = rep.wstar_hi + *p.chi;
        } else {
            rep.w_lo = rep.wstar_lo;
            rep.w_hi = rep.wstar_hi;
        }
        if (p.d < 2)
            fail("d must be >= 2", std::nullopt);
        if (2 * d * p.theta > (d - 2 + p.rho) * p.delta) {
            ev.side_failure = true;
            fail("side condition 2 d theta <= (d-2+rho) delta fails", std::nullopt);
        }
        if (p.eps && 2 * d * p.theta > (d - 2 + p.delta) * p.delta) {
            ev.side_failure = true;
            fail("side condition 2 d theta <= (d-2+delta) delta fails", std::nullopt);
        }
    } else {
        rep.wstar_lo = rep.w_lo = d - 1 + p.delta;
        Rational a = d - 1 + p.rho, b = d * p.theta / p.delta;
        rep.wstar_hi = rep.w_hi = std::max(a, b);
    }
    if (records.empty()) {
        fail("empty record window", std::nullopt);
        return ev;
    }
    for (std::size_t i = 1; i < records.size(); ++i)
        if (records[i].h <= records[i - 1].h)
            fail("heights do not increase at j = " + std::to_string(records[i].j), records[i].j);
    Integer skip_i = floor(p.discard * Rational(static_cast<long>(records.size())));
    std::size_t skip = static_cast<std::size_t>(skip_i.get_ui());
    if (skip >= records.size()) {
        fail("empty record window", std::nullopt);
        return ev;
    }
    rep.window_lo = records[skip].j;
    rep.window_hi = records.back().j;
    const Rational dist_lo = d + p.delta, dist_hi = d + p.rho;
    std::optional<Rational> best_eps_gap;
    for (std::size_t i = skip; i < records.size(); ++i) {
        const auto& r = records[i];
        if (r.h <= 0) {
            fail("non-positive height at j = " + std::to_string(r.j), r.j);
            continue;
        }
        RecordCheck row;
        row.j = r.j;
        row.tolerance = p.tolerance_constant / Rational(static_cast<long>(r.h));
        row.dist_ratio = ratio(r.dist, r.h);
        const Rational H(static_cast<long>(r.h));
        auto need = [&](const Rational& excess) {
            if (excess * H > rep.needed_constant)
                rep.needed_constant = excess * H;
        };
        if (row.dist_ratio < dist_lo - row.tolerance)
            fail("dist/h = " + to_string(row.dist_ratio) + " below d+delta at j = " + std::to_string(r.j), r.j);
        need(dist_lo - row.dist_ratio);
        if (row.dist_ratio > dist_hi + row.tolerance)
            fail("dist/h = " + to_string(row.dist_ratio) + " above d+rho at j = " + std::to_string(r.j), r.j);
        need(row.dist_ratio - dist_hi);
        if (r.h_next) {
            row.height_ratio = ratio(*r.h_next, r.h);
            if (*row.height_ratio > p.theta + row.tolerance)
                fail("height ratio " + to_string(*row.height_ratio) + " above theta at j = " + std::to_string(r.j),
                     r.j);
            need(*row.height_ratio - p.theta);
        }
        if (quad && (p.eps || p.chi)) {
            if (!r.conj) {
                fail("conjugate distance missing at j = " + std::to_string(r.j), r.j);
            } else {
                row.conj_ratio = ratio(*r.conj, r.h);
                if (p.chi) {
                    if (*row.conj_ratio > *p.chi + row.tolerance)
                        fail("conj/h = " + to_string(*row.conj_ratio) + " above chi at j = " + std::to_string(r.j),
                             r.j);
                    need(*row.conj_ratio - *p.chi);
                }
                if (p.eps) {
                    Rational gap = (*p.eps - *row.conj_ratio) * H;
                    if (!best_eps_gap || gap < *best_eps_gap)
                        best_eps_gap = gap;
                }
            }
        }
        rep.rows.push_back(std::move(row));
    }
    if (best_eps_gap) {
        if (*best_eps_gap > p.tolerance_constant)
            fail("conj/h stays below eps on the whole window", std::nullopt);
        if (*best_eps_gap > rep.needed_constant)
            rep.needed_constant = *best_eps_gap;
    }
    rep.ok = rep.failure.empty();
    return ev;
}

VerdictReport checked(Evaluation ev)
{
    if (!ev.rep.ok) {
        std::string msg = ev.rep.failure + " (tolerance constant needed: " + to_string(ev.rep.needed_constant) + ")";
        if (ev.side_failure)
            throw SideConditionViolated(msg);
        throw HypothesisViolated(msg);
    }
    return ev.rep;
}

} // namespace

VerdictReport evaluate_bestrational(const std::vector<ApproximationRecord>& records, const BestParams& p)
{
    return evaluate(records, p, false).rep;
}

VerdictReport evaluate_bestquad(const std::vector<ApproximationRecord>& records, const BestParams& p)
{
    return evaluate(records, p, true).rep;
}

VerdictReport check_bestrational(const std::vector<ApproximationRecord>& records, const BestParams& p)
{
    return checked(evaluate(records, p, false));
}

VerdictReport check_bestquad(const std::vector<ApproximationRecord>& records, const BestParams& p)
{
    return checked(evaluate(records, p, true));
}

std::vector<ApproximationRecord> convergent_records(const QuotientSource& src, std::size_t count)
{
    ConvergentStream cs(src.field());
    std::vector<Convergent> cv;
    for (std::size_t n = 0; n <= count + 1; ++n) {
        auto a = src.quotient(n);
        if (!a)
            throw PreconditionViolated("the expansion ends at index " + std::to_string(n));
        cv.push_back(cs.push(*a));
    }
    std::vector<ApproximationRecord> out;
    for (std::size_t j = 1; j <= count; ++j) {
        ApproximationRecord r;
        r.j = j;
        r.h = rational_height(cv[j].p, cv[j].q);
        r.dist = cv[j].q.degree() + cv[j + 1].q.degree();
        r.h_next = rational_height(cv[j + 1].p, cv[j + 1].q);
        out.push_back(r);
    }
    return out;
}

} // namespace lcf

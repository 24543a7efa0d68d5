#include "lcf/classia.hpp"

#include "lcf/error.hpp"

#include <algorithm>
#include <numeric>

namespace lcf {

void ClassIAPattern::validate() const
{
    if (!field)
        throw PreconditionViolated("pattern has no field");
    if (seed.empty())
        throw PreconditionViolated("seed must be nonempty");
    for (std::size_t j = 0; j < seed.size(); ++j)
        if (seed[j].degree() < 1)
            throw PreconditionViolated("seed quotient b_" + std::to_string(j + 1) + " must have degree >= 1");
    for (std::size_t i = 1; i < preperiod.size(); ++i)
        if (preperiod[i].degree() < 1)
            throw PreconditionViolated("preperiod quotient a_" + std::to_string(i) + " must have degree >= 1");
    if (unit == 0 || unit >= field->q())
        throw PreconditionViolated("unit must be a nonzero element of F_" + std::to_string(field->q()));
}

std::vector<std::int64_t> ClassIAPattern::seed_degrees() const
{
    std::vector<std::int64_t> d;
    for (const auto& b : seed)
        d.push_back(b.degree());
    return d;
}

Integer ClassIAPattern::frobenius_factor() const { return ipow(Integer(field->p()), k); }

namespace {

// Twist applied to b_{j+s}: unit for odd j, unit^{-1} for even j.
std::uint32_t twist(const ClassIAPattern& pat, std::size_t j)
{
    return j % 2 == 1 ? pat.unit : pat.field->inv(pat.unit);
}

} // namespace

std::vector<Poly> generate_quotients(const ClassIAPattern& pat, std::size_t n)
{
    pat.validate();
    std::vector<Poly> out;
    out.reserve(n);
    for (std::size_t i = 0; i < pat.preperiod.size() && out.size() < n; ++i)
        out.push_back(pat.preperiod[i]);
    const std::size_t t = pat.preperiod.size();
    const std::size_t s = pat.seed.size();
    while (out.size() < n) {
        std::size_t j = out.size() - t + 1;
        if (j <= s)
            out.push_back(pat.seed[j - 1]);
        else
            out.push_back(out[out.size() - s].frobenius_pow(pat.k).scale(twist(pat, j - s)));
    }
    return out;
}

std::vector<Integer> generate_degrees(const ClassIAPattern& pat, std::size_t n)
{
    pat.validate();
    const Integer pk = pat.frobenius_factor();
    std::vector<Integer> out;
    out.reserve(n);
    for (std::size_t i = 0; i < pat.preperiod.size() && out.size() < n; ++i) {
        std::int64_t d = pat.preperiod[i].degree();
        out.push_back(Integer(static_cast<long>(d == NEG_INF ? 0 : d)));
    }
    const std::size_t t = pat.preperiod.size();
    const std::size_t s = pat.seed.size();
    while (out.size() < n) {
        std::size_t j = out.size() - t + 1;
        if (j <= s)
            out.push_back(Integer(static_cast<long>(pat.seed[j - 1].degree())));
        else
            out.push_back(out[out.size() - s] * pk);
    }
    return out;
}

ClassIASource::ClassIASource(ClassIAPattern pat) : pat_(std::move(pat)) { pat_.validate(); }

std::optional<Poly> ClassIASource::quotient(std::size_t n) const
{
    std::lock_guard<std::mutex> lock(mu_);
    const std::size_t t = pat_.preperiod.size();
    const std::size_t s = pat_.seed.size();
    while (cache_.size() <= n) {
        std::size_t i = cache_.size();
        if (i < t) {
            cache_.push_back(pat_.preperiod[i]);
            continue;
        }
        std::size_t j = i - t + 1;
        if (j <= s)
            cache_.push_back(pat_.seed[j - 1]);
        else
            cache_.push_back(cache_[i - s].frobenius_pow(pat_.k).scale(twist(pat_, j - s)));
    }
    return cache_[n];
}

RatioBounds ratio_bounds(const std::vector<std::int64_t>& d, const Integer& pk)
{
    if (d.empty())
        throw PreconditionViolated("ratio bounds of an empty seed");
    RatioBounds out;
    Integer before = 0;
    Integer total = 0;
    for (auto x : d) {
        if (x < 1)
            throw PreconditionViolated("seed degrees must be >= 1");
        total += Integer(static_cast<long>(x));
    }
    Integer after = total;
    for (auto x : d) {
        Integer di(static_cast<long>(x));
        Rational r(di, pk * before + after);
        r.canonicalize();
        out.r.push_back(r);
        before += di;
        after -= di;
    }
    const Rational& mx = *std::max_element(out.r.begin(), out.r.end());
    const Rational& mn = *std::min_element(out.r.begin(), out.r.end());
    Rational scale(pk - 1);
    out.limsup = 1 + scale * mx;
    out.liminf = 1 + scale * mn;
    return out;
}

RatioBounds ratio_bounds(const ClassIAPattern& pat)
{
    pat.validate();
    return ratio_bounds(pat.seed_degrees(), pat.frobenius_factor());
}

std::optional<Integer> balancing_degree(const ClassIAPattern& pat)
{
    pat.validate();
    Integer pk = pat.frobenius_factor();
    if (pk == 1)
        return std::nullopt;
    Integer total = 0;
    for (auto x : pat.seed_degrees())
        total += Integer(static_cast<long>(x));
    Integer den = pk - 1;
    if (total % den != 0)
        return std::nullopt;
    return Integer(total / den);
}

EmpiricalRatios empirical_ratios(const std::vector<Integer>& degrees, std::size_t skip)
{
    EmpiricalRatios out;
    out.skipped = skip;
    Integer prev = 0;
    for (std::size_t n = 1; n < degrees.size(); ++n) {
        Integer cur = prev + degrees[n];
        if (n >= 2) {
            Rational r(cur, prev);
            r.canonicalize();
            out.ratios.push_back(r);
        }
        prev = cur;
    }
    if (out.ratios.size() <= skip)
        throw PreconditionViolated("only " + std::to_string(out.ratios.size()) + " ratios, " +
                                   std::to_string(skip) + " skipped");
    out.argmax = out.argmin = skip;
    for (std::size_t i = skip; i < out.ratios.size(); ++i) {
        if (out.ratios[i] > out.ratios[out.argmax])
            out.argmax = i;
        if (out.ratios[i] < out.ratios[out.argmin])
            out.argmin = i;
    }
    out.max = out.ratios[out.argmax];
    out.min = out.ratios[out.argmin];
    return out;
}

EmpiricalRatios empirical_ratios(const ClassIAPattern& pat, std::size_t n)
{
    return empirical_ratios(generate_degrees(pat, n), pat.preperiod.size() + pat.seed.size());
}

bool newton_irreducible(const std::vector<std::int64_t>& v, std::int64_t m)
{
    if (m < 1 || static_cast<std::int64_t>(v.size()) != m)
        throw PreconditionViolated("expected " + std::to_string(m) + " valuations, got " + std::to_string(v.size()));
    const std::int64_t vm = v.back();
    if (vm == VAL_INFINITE || vm <= 0)
        throw PreconditionViolated("v(a_m) must be a positive integer");
    if (std::gcd(vm, m) != 1)
        throw PreconditionViolated("gcd(v(a_m), m) = " + std::to_string(std::gcd(vm, m)) + " != 1");
    for (std::int64_t i = 1; i < m; ++i) {
        std::int64_t vi = v[static_cast<std::size_t>(i - 1)];
        if (vi == VAL_INFINITE)
            continue;
        if (!(static_cast<__int128>(vi) * m > static_cast<__int128>(vm) * i))
            return false;
    }
    return true;
}

namespace {

std::int64_t small_pk(const ClassIAPattern& pat)
{
    Integer pk = pat.frobenius_factor();
    if (pk > 1 << 20)
        throw PreconditionViolated("p^k = " + to_string(pk) + " is too large for a certificate");
    return to_int64(pk);
}

} // namespace

std::int64_t certificate_precision(const ClassIAPattern& pat)
{
    pat.validate();
    const std::int64_t pk = small_pk(pat);
    auto d = pat.seed_degrees();
    std::int64_t tail = 0;
    for (std::size_t j = 1; j < d.size(); ++j)
        tail += d[j];
    return pk * d[0] + 2 * tail + 1;
}

DegreeCertificate degree_certificate(const ClassIAPattern& pat, std::int64_t budget)
{
    pat.validate();
    const FieldPtr& f = pat.field;
    const std::int64_t pk = small_pk(pat);
    const auto d = pat.seed_degrees();
    const std::size_t s = d.size();
    const std::int64_t ds = d.back();
    if (std::gcd(ds, static_cast<std::int64_t>(f->p())) != 1)
        throw PreconditionViolated("gcd(deg b_s, p) = gcd(" + std::to_string(ds) + ", " + std::to_string(f->p()) +
                                   ") != 1");
    std::int64_t tail = 0;
    for (std::size_t j = 1; j < s; ++j)
        tail += d[j];
    const std::int64_t P = certificate_precision(pat);
    if (P > budget)
        throw InsufficientPrecision("the certificate needs precision " + std::to_string(P) + ", budget is " +
                                    std::to_string(budget));

    DegreeCertificate cert;
    cert.degree = Integer(static_cast<long>(pk + 1));
    cert.precision = P;

    // The relation is checked at a wider precision than the valuations need.
    const std::int64_t R = std::max(P, std::min(budget, 2 * P + 32));

    // beta = [b_1; b_2, ...] from enough generated quotients to fix R digits.
    ClassIAPattern bp = pat;
    bp.preperiod.clear();
    ClassIASource src(bp);
    CFExpansion e;
    e.field = f;
    std::int64_t deg_q = 0;
    for (std::size_t n = 0;; ++n) {
        Poly a = *src.quotient(n);
        if (n >= 1)
            deg_q += a.degree();
        e.quotients.push_back(std::move(a));
        if (n >= s && 2 * deg_q + 1 >= R)
            break;
    }
    const std::int64_t known = R + d[0];
    LaurentSeries beta = cf_value(e, known);

    Mat2 m = cf_matrix(f, pat.seed, 0, s);
    const Poly& p1 = m.a; // p_{s-1}
    const Poly& p2 = m.b; // p_{s-2}
    const Poly& q1 = m.c; // q_{s-1}
    const Poly& q2 = m.d; // q_{s-2}
    const std::int64_t wide = known + pk * d[0] + 2 * tail + 8;

    LaurentSeries diff = beta - LaurentSeries::from_rational(p1, q1, wide);
    LaurentSeries power = LaurentSeries::from_poly(Poly::constant(f, 1), wide);
    std::vector<std::int64_t> vals;
    for (std::int64_t i = 1; i <= pk; ++i) {
        LaurentSeries c = diff * power;
        std::int64_t expected = (pk - i + 1) * d[0] + 2 * tail;
        if (i == pk) {
            if (s >= 2)
                c = c + LaurentSeries::from_rational(q2, q1.scale(pat.unit), wide);
            expected = ds;
        }
        ValuationCheck chk;
        chk.i = i;
        chk.expected = expected;
        chk.computed = c.is_zero() ? VAL_INFINITE : c.val();
        chk.ok = chk.computed == expected;
        cert.checks.push_back(chk);
        if (!chk.ok)
            throw CertificateFailed("v(c_" + std::to_string(i) + ") = " +
                                    (c.is_zero() ? std::string("inf") : std::to_string(c.val())) + ", expected " +
                                    std::to_string(expected));
        vals.push_back(chk.computed);
        if (i < pk)
            power = power * beta;
    }
    cert.newton = newton_irreducible(vals, pk);
    if (!cert.newton)
        throw CertificateFailed("Newton polygon test rejects the cofactor");

    std::vector<Poly> rc(static_cast<std::size_t>(pk + 2), Poly(f));
    rc[0] = -p2;
    rc[1] = q2;
    rc[static_cast<std::size_t>(pk)] -= p1.scale(pat.unit);
    rc[static_cast<std::size_t>(pk + 1)] = q1.scale(pat.unit);
    cert.relation = XPoly(f, rc);

    LaurentSeries bp_k = beta.frobenius_pow(pat.k);
    auto lift = [&](const Poly& c) { return LaurentSeries::from_poly(c, wide * (pk + 1)); };
    LaurentSeries res = lift(rc[static_cast<std::size_t>(pk + 1)]) * beta * bp_k - lift(p1.scale(pat.unit)) * bp_k +
                        lift(q2) * beta - lift(p2);
    cert.residual_precision = res.abs_precision();
    if (!res.is_zero())
        throw CertificateFailed("the relation does not vanish at the series (residual " + res.to_string() + ")");
    return cert;
}

} // namespace lcf

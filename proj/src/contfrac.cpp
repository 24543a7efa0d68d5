#include "lcf/contfrac.hpp"

#include "lcf/error.hpp"

#include <algorithm>

namespace lcf {

const char* stop_reason_name(StopReason r)
{
    switch (r) {
    case StopReason::Requested: return "requested";
    case StopReason::RationalTail: return "rational_tail";
    case StopReason::BudgetExhausted: return "budget_exhausted";
    }
    return "unknown";
}

std::string CFExpansion::to_string() const
{
    std::string out = "[";
    for (std::size_t i = 0; i < quotients.size(); ++i) {
        if (i == 1)
            out += "; ";
        else if (i > 1)
            out += ", ";
        out += quotients[i].to_string();
    }
    return out + "]";
}

CFExpansion CFExpansion::parse(FieldPtr f, const std::string& text, bool complete)
{
    std::string s = text;
    auto b = s.find('['), e = s.rfind(']');
    if (b == std::string::npos || e == std::string::npos || e < b)
        throw ParseError("continued fraction must look like [a0; a1, a2]");
    s = s.substr(b + 1, e - b - 1);
    CFExpansion out;
    out.field = f;
    out.complete = complete;
    out.reason = complete ? StopReason::RationalTail : StopReason::Requested;
    std::string cur;
    auto flush = [&]() {
        bool blank = std::all_of(cur.begin(), cur.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
        if (blank)
            throw ParseError("empty partial quotient in '" + text + "'");
        out.quotients.push_back(Poly::parse(f, cur));
        cur.clear();
    };
    bool any = false;
    for (char c : s) {
        if (c == ';' || c == ',') {
            flush();
            continue;
        }
        if (!std::isspace(static_cast<unsigned char>(c)))
            any = true;
        cur += c;
    }
    if (any || !out.quotients.empty())
        flush();
    for (std::size_t i = 1; i < out.quotients.size(); ++i)
        if (out.quotients[i].degree() < 1)
            throw ParseError("partial quotient a_" + std::to_string(i) + " must have degree >= 1");
    return out;
}

ConvergentStream::ConvergentStream(FieldPtr f)
    : f_(f), p1_(Poly::constant(f, 1)), p2_(f), q1_(f), q2_(Poly::constant(f, 1)),
      last_{Poly(f), Poly(f), 0}
{
}

const Convergent& ConvergentStream::push(const Poly& a)
{
    Poly p = a * p1_ + p2_;
    Poly q = a * q1_ + q2_;
    p2_ = std::move(p1_);
    q2_ = std::move(q1_);
    p1_ = p;
    q1_ = q;
    last_ = Convergent{std::move(p), std::move(q), n_};
    ++n_;
    return last_;
}

std::vector<Convergent> convergents(const CFExpansion& e)
{
    std::vector<Convergent> out;
    ConvergentStream s(e.field);
    for (const auto& a : e.quotients)
        out.push_back(s.push(a));
    return out;
}

Mat2 Mat2::operator*(const Mat2& o) const
{
    return Mat2{a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
}

Mat2 cf_matrix(FieldPtr f, const std::vector<Poly>& quotients, std::size_t lo, std::size_t hi)
{
    Poly one = Poly::constant(f, 1), zero(f);
    if (hi <= lo)
        return Mat2{one, zero, zero, one};
    if (hi - lo == 1)
        return Mat2{quotients[lo], one, one, zero};
    std::size_t mid = lo + (hi - lo) / 2;
    return cf_matrix(f, quotients, lo, mid) * cf_matrix(f, quotients, mid, hi);
}

CFExpansion cf_expand_partial(const LaurentSeries& x, std::size_t max_quotients)
{
    const FieldPtr& f = x.field();
    CFExpansion out;
    out.field = f;
    const std::int64_t A = x.abs_precision();
    if (A < 1) {
        out.reason = StopReason::BudgetExhausted;
        out.required_precision = 1;
        return out;
    }
    // Euclid on the truncation num / T^{A-1}.
    Coeffs nc;
    if (!x.is_zero()) {
        nc.assign(static_cast<std::size_t>(A - 1 - std::min<std::int64_t>(x.val(), A - 1)) + 1, 0);
        for (std::int64_t n = x.val(); n < A; ++n)
            nc[static_cast<std::size_t>(A - 1 - n)] = x.coeff_at(n);
    }
    Poly r0(f, std::move(nc));
    Poly r1 = Poly::monomial(f, 1, static_cast<std::size_t>(A - 1));
    std::int64_t deg_prev = 0; // deg q_{n-1}
    for (std::size_t n = 0;; ++n) {
        if (out.quotients.size() == max_quotients) {
            out.reason = StopReason::Requested;
            break;
        }
        auto [a, rem] = divmod(r0, r1);
        std::int64_t deg_q = n == 0 ? 0 : deg_prev + a.degree();
        if (A < 2 * deg_q + 1) {
            if (n >= 1 && 2 * deg_prev + a.degree() >= A) {
                out.complete = true;
                out.reason = StopReason::RationalTail;
            } else {
                out.reason = StopReason::BudgetExhausted;
                out.required_precision = 2 * deg_q + 1;
            }
            break;
        }
        out.quotients.push_back(std::move(a));
        if (rem.is_zero()) {
            out.complete = true;
            out.reason = StopReason::RationalTail;
            break;
        }
        r0 = std::move(r1);
        r1 = std::move(rem);
        deg_prev = deg_q;
    }
    return out;
}

CFExpansion cf_expand(const LaurentSeries& x, std::size_t max_quotients)
{
    CFExpansion e = cf_expand_partial(x, max_quotients);
    if (e.reason == StopReason::BudgetExhausted)
        throw InsufficientPrecision("precision " + std::to_string(x.abs_precision()) + " certifies " +
                                    std::to_string(e.quotients.size()) + " of " +
                                    std::to_string(max_quotients) +
                                    " partial quotients; the next one needs precision " +
                                    std::to_string(e.required_precision));
    return e;
}

namespace {

std::int64_t certified_abs(const Poly& q) { return 2 * q.degree() + 1; }

/// Value of a prefix to absolute precision abs (clipped for incomplete input
/// when clip is set, otherwise rejected).
LaurentSeries value_to_abs(const CFExpansion& e, std::int64_t abs, bool clip)
{
    if (e.quotients.empty())
        throw PreconditionViolated("value of an empty continued fraction");
    Mat2 m = cf_matrix(e.field, e.quotients, 0, e.quotients.size());
    const Poly& p = m.a;
    const Poly& q = m.c;
    if (!e.complete) {
        std::int64_t cert = certified_abs(q);
        if (abs > cert) {
            if (!clip)
                throw InsufficientPrecision("an incomplete expansion fixes only " + std::to_string(cert) +
                                            " digits; " + std::to_string(abs) + " requested");
            abs = cert;
        }
    }
    if (p.is_zero())
        return LaurentSeries::zero(e.field, abs);
    std::int64_t val = q.degree() - p.degree();
    return LaurentSeries::from_rational(p, q, std::max<std::int64_t>(0, abs - val));
}

} // namespace

LaurentSeries cf_value(const CFExpansion& e, std::int64_t target_known)
{
    if (e.quotients.empty())
        throw PreconditionViolated("value of an empty continued fraction");
    Mat2 m = cf_matrix(e.field, e.quotients, 0, e.quotients.size());
    const Poly& p = m.a;
    const Poly& q = m.c;
    if (p.is_zero())
        return value_to_abs(e, e.complete ? target_known : std::min(target_known, certified_abs(q)), false);
    std::int64_t val = q.degree() - p.degree();
    if (!e.complete && val + target_known > certified_abs(q))
        throw InsufficientPrecision("an incomplete expansion fixes " + std::to_string(certified_abs(q) - val) +
                                    " coefficients; " + std::to_string(target_known) + " requested");
    return LaurentSeries::from_rational(p, q, target_known);
}

std::optional<Poly> ListSource::quotient(std::size_t n) const
{
    if (n < e_.quotients.size())
        return e_.quotients[n];
    if (e_.complete)
        return std::nullopt;
    throw InsufficientPrecision("partial quotient a_" + std::to_string(n) + " is beyond the certified prefix of " +
                                std::to_string(e_.quotients.size()));
}

PeriodicSource::PeriodicSource(FieldPtr f, std::vector<Poly> preperiod, std::vector<Poly> period)
    : f_(std::move(f)), pre_(std::move(preperiod)), per_(std::move(period))
{
    if (per_.empty())
        throw PreconditionViolated("period must be nonempty");
}

std::optional<Poly> PeriodicSource::quotient(std::size_t n) const
{
    if (n < pre_.size())
        return pre_[n];
    return per_[(n - pre_.size()) % per_.size()];
}

CFExpansion take(const QuotientSource& src, std::size_t n)
{
    CFExpansion e;
    e.field = src.field();
    for (std::size_t i = 0; i < n; ++i) {
        auto a = src.quotient(i);
        if (!a) {
            e.complete = true;
            e.reason = StopReason::RationalTail;
            return e;
        }
        e.quotients.push_back(std::move(*a));
    }
    return e;
}

namespace {

bool is_irreducible_small(const Poly& pi)
{
    const FieldPtr& f = pi.field();
    std::int64_t d = pi.degree();
    if (d <= 0)
        return false;
    if (d == 1)
        return true;
    Poly T = Poly::T(f);
    Poly x = T;
    for (std::int64_t i = 1; i <= d / 2; ++i) {
        x = powmod(x, f->q(), pi);
        if (gcd(x - T, pi).degree() != 0)
            return false;
    }
    return true;
}

} // namespace

std::optional<Poly> find_inert_prime(const Poly& A, const Poly& B, const Poly& C)
{
    const FieldPtr& f = A.field();
    const std::uint64_t q = f->q();
    const std::uint32_t p = f->p();
    std::size_t tried = 0;
    for (std::size_t d = 1; d <= 16; ++d) {
        std::uint64_t count = 1;
        bool too_many = false;
        for (std::size_t i = 0; i < d; ++i) {
            count *= q;
            if (count > 4096) {
                too_many = true;
                break;
            }
        }
        if (too_many || tried > 512)
            break;
        std::uint64_t Q = 1;
        for (std::size_t i = 0; i < d; ++i)
            Q *= q;
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            Coeffs c(d + 1, 0);
            std::uint64_t t = idx;
            for (std::size_t i = 0; i < d; ++i) {
                c[i] = static_cast<std::uint32_t>(t % q);
                t /= q;
            }
            c[d] = 1;
            Poly pi(f, std::move(c));
            if (!is_irreducible_small(pi))
                continue;
            ++tried;
            Poly a = A % pi;
            if (a.is_zero())
                continue;
            XGcd g = xgcd(a, pi);
            Poly ainv = g.s % pi;
            Poly b = (B % pi) * ainv % pi;
            Poly cc = (C % pi) * ainv % pi;
            if (p != 2) {
                Poly disc = (b * b - cc.scale(f->from_int(4))) % pi;
                if (disc.is_zero())
                    continue;
                Poly z = powmod(disc, (Q - 1) / 2, pi);
                if (z == Poly::constant(f, p - 1))
                    return pi;
            } else {
                if (b.is_zero())
                    continue;
                Poly binv = xgcd(b, pi).s % pi;
                Poly z = cc * binv % pi * binv % pi;
                Poly acc = z, cur = z;
                std::size_t deg2 = static_cast<std::size_t>(f->m()) * d;
                for (std::size_t i = 1; i < deg2; ++i) {
                    cur = cur * cur % pi;
                    acc += cur;
                }
                if (acc.is_one())
                    return pi;
            }
        }
    }
    return std::nullopt;
}

namespace {

QuadraticNumber finish_quadratic(Poly A, Poly B, Poly C, std::vector<Poly> preperiod, std::vector<Poly> period)
{
    if (A.is_zero())
        throw DegenerateQuadratic("leading coefficient vanishes");
    std::uint32_t li = A.field()->inv(A.lead());
    A = A.scale(li);
    B = B.scale(li);
    C = C.scale(li);
    auto pi = find_inert_prime(A, B, C);
    if (!pi)
        throw DegenerateQuadratic("no irreducibility certificate for " + XPoly(A.field(), {C, B, A}).to_string());
    QuadraticNumber out{A, B, C, std::move(preperiod), std::move(period), 0, *pi};
    out.height_log = std::max({A.degree(), B.degree(), C.degree()});
    return out;
}

void check_tag(const std::vector<Poly>& preperiod, const std::vector<Poly>& period)
{
    if (period.empty())
        throw PreconditionViolated("period must be nonempty");
    for (std::size_t i = 1; i < preperiod.size(); ++i)
        if (preperiod[i].degree() < 1)
            throw PreconditionViolated("partial quotient a_" + std::to_string(i) + " must have degree >= 1");
    for (const auto& b : period)
        if (b.degree() < 1)
            throw PreconditionViolated("period quotients must have degree >= 1");
}

} // namespace

QuadraticNumber quadratic_value(const std::vector<Poly>& preperiod, const std::vector<Poly>& period)
{
    check_tag(preperiod, period);
    const FieldPtr& f = period.front().field();
    // beta = [period-bar] satisfies q_{s-1} X^2 + (q_{s-2} - p_{s-1}) X - p_{s-2}.
    Mat2 sm = cf_matrix(f, period, 0, period.size());
    Poly A0 = sm.c;
    Poly B0 = sm.d - sm.a;
    Poly C0 = -sm.b;
    // alpha = M(beta) with M the preperiod matrix; beta = (u alpha + v)/(s alpha + t).
    Mat2 pm = cf_matrix(f, preperiod, 0, preperiod.size());
    const Poly u = pm.d;
    const Poly v = -pm.b;
    const Poly s = -pm.c;
    const Poly& t = pm.a;
    const std::uint32_t two = f->from_int(2);
    Poly A = A0 * (u * u) + B0 * (u * s) + C0 * (s * s);
    Poly B = (A0 * (u * v)).scale(two) + B0 * (u * t + v * s) + (C0 * (s * t)).scale(two);
    Poly C = A0 * (v * v) + B0 * (v * t) + C0 * (t * t);
    return finish_quadratic(std::move(A), std::move(B), std::move(C), preperiod, period);
}

QuadraticNumber quadratic_from_coefficients(const Poly& A, const Poly& B, const Poly& C,
                                            std::vector<Poly> preperiod, std::vector<Poly> period)
{
    check_tag(preperiod, period);
    XPoly prim = XPoly(A.field(), {C, B, A}).primitive();
    if (prim.degree() != 2)
        throw DegenerateQuadratic("not a quadratic");
    return finish_quadratic(prim.coeff(2), prim.coeff(1), prim.coeff(0), std::move(preperiod), std::move(period));
}

XPoly QuadraticNumber::minimal_polynomial() const { return XPoly(A.field(), {C, B, A}); }

PeriodicSource QuadraticNumber::source() const { return PeriodicSource(A.field(), preperiod, period); }

LogAbs conjugate_distance(const QuadraticNumber& alpha)
{
    const FieldPtr& f = alpha.A.field();
    if (f->p() == 2) {
        if (alpha.B.is_zero())
            throw InseparableQuadratic("B = 0 in characteristic 2: the conjugate equals the root");
        return LogAbs(alpha.B.degree() - alpha.A.degree());
    }
    Poly disc = alpha.B * alpha.B - (alpha.A * alpha.C).scale(f->from_int(4));
    if (disc.is_zero())
        throw InseparableQuadratic("vanishing discriminant");
    if (disc.degree() % 2 != 0)
        throw PreconditionViolated("discriminant of odd degree: the roots are not in F_q((T^{-1}))");
    return LogAbs(disc.degree() / 2 - alpha.A.degree());
}

LaurentSeries QuadraticNumber::root(std::int64_t abs) const
{
    const FieldPtr& f = A.field();
    const std::int64_t D = -conjugate_distance(*this).value();
    PeriodicSource src = source();
    // Start from a convergent whose cylinder pins more than D digits.
    ConvergentStream cs(f);
    std::size_t n = 0;
    Convergent cv = cs.push(*src.quotient(n));
    while (2 * cv.q.degree() + 1 < std::max<std::int64_t>(D + 1, 1))
        cv = cs.push(*src.quotient(++n));
    std::int64_t E = 2 * cv.q.degree() + 1;
    auto exact_at = [&](const Poly& p, const Poly& q, std::int64_t prec) {
        if (p.is_zero())
            return LaurentSeries::zero(f, prec);
        std::int64_t val = q.degree() - p.degree();
        return LaurentSeries::from_rational(p, q, std::max<std::int64_t>(0, prec - val));
    };
    LaurentSeries x = exact_at(cv.p, cv.q, E);
    if (abs <= E)
        return x.truncate(abs);
    XPoly fpoly = minimal_polynomial();
    XPoly dpoly(f, {B, A.scale(f->from_int(2))});
    while (E < abs) {
        std::int64_t target = std::min(2 * E - D, abs);
        std::int64_t margin = 2 * height_log + 2 * std::max<std::int64_t>(0, -x.val()) + 16;
        for (;;) {
            // Treat the truncation as an exact element by padding with zeros.
            std::int64_t pad_abs = target + margin;
            Coeffs c = x.coeffs();
            std::int64_t val = x.is_zero() ? 0 : x.val();
            if (x.is_zero())
                c.clear();
            c.resize(static_cast<std::size_t>(std::max<std::int64_t>(0, pad_abs - val)), 0);
            LaurentSeries xp = x.is_zero() ? LaurentSeries::zero(f, pad_abs) : LaurentSeries::from_coeffs(f, val, c);
            LaurentSeries fx = fpoly.eval(xp);
            LaurentSeries y = fx.is_zero() ? xp : xp - fx / dpoly.eval(xp);
            if (y.abs_precision() >= target) {
                x = y.truncate(target);
                break;
            }
            margin *= 2;
        }
        E = target;
    }
    return x;
}

LaurentSeries QuadraticNumber::conjugate(std::int64_t abs) const
{
    std::int64_t val = A.degree() - B.degree();
    LaurentSeries s = B.is_zero() ? LaurentSeries::zero(A.field(), abs)
                                  : LaurentSeries::from_rational(-B, A, std::max<std::int64_t>(0, abs - val));
    return (s - root(abs)).truncate(abs);
}

LogAbs cf_distance(const LaurentSeries& x, const LaurentSeries& y)
{
    LaurentSeries d = x - y;
    if (d.is_zero())
        throw InsufficientPrecision("the inputs agree to every known digit (precision " +
                                    std::to_string(d.abs_precision()) + ")");
    return d.logabs();
}

std::optional<std::size_t> first_difference(const QuotientSource& x, const QuotientSource& y, std::size_t limit)
{
    for (std::size_t n = 0; n < limit; ++n) {
        auto a = x.quotient(n);
        auto b = y.quotient(n);
        if (!a && !b)
            return std::nullopt;
        if (!a || !b || *a != *b)
            return n;
    }
    return std::nullopt;
}

LogAbs cf_distance(const QuotientSource& x, const QuotientSource& y, std::optional<std::size_t> shared_prefix_hint,
                   std::size_t scan_limit)
{
    require_same_field(*x.field(), *y.field());
    if (shared_prefix_hint) {
        const std::size_t h = *shared_prefix_hint;
        std::int64_t deg_q = 0;
        for (std::size_t n = 0; n < h; ++n) {
            auto a = x.quotient(n);
            auto b = y.quotient(n);
            if (!a || !b || *a != *b)
                throw PreconditionViolated("shared prefix hint " + std::to_string(h) + " is wrong at index " +
                                           std::to_string(n));
            if (n >= 1)
                deg_q += a->degree();
        }
        auto a = x.quotient(h);
        auto b = y.quotient(h);
        if (!a && !b)
            throw InsufficientPrecision("the expansions are identical");
        if (a && b && *a == *b)
            throw PreconditionViolated("shared prefix hint " + std::to_string(h) + " is too short");
        if (h == 0)
            return LogAbs((*a - *b).degree());
        if (!a)
            return LogAbs(-(2 * deg_q + b->degree()));
        if (!b)
            return LogAbs(-(2 * deg_q + a->degree()));
        return LogAbs((*a - *b).degree() - a->degree() - b->degree() - 2 * deg_q);
    }
    auto diff = first_difference(x, y, scan_limit);
    if (!diff)
        throw InsufficientPrecision("no difference within the scan limit");
    CFExpansion ex = take(x, *diff + 2);
    CFExpansion ey = take(y, *diff + 2);
    auto total = [](const CFExpansion& e) {
        std::int64_t s = 0;
        for (std::size_t i = 1; i < e.quotients.size(); ++i)
            s += e.quotients[i].degree();
        return s;
    };
    std::int64_t W = 2 * std::max(total(ex), total(ey)) + 2;
    LaurentSeries vx = value_to_abs(ex, W, true);
    LaurentSeries vy = value_to_abs(ey, W, true);
    return cf_distance(vx, vy);
}

} // namespace lcf

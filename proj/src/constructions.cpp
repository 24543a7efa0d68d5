#include "lcf/constructions.hpp"

#include "lcf/error.hpp"

#include <algorithm>
#include <limits>
#include <tuple>

namespace lcf {

namespace {

Rational Q(long n) { return Rational(n); }

std::uint64_t to_u64(const Integer& z)
{
    if (z < 0 || !mpz_fits_ulong_p(z.get_mpz_t()))
        throw PreconditionViolated("index " + z.get_str() + " exceeds 64-bit range");
    return z.get_ui();
}

Integer from_u64(std::uint64_t v) { return Integer(static_cast<unsigned long>(v)); }

} // namespace

// ---------------------------------------------------------------- seq search

bool seq_params_valid(int d, const Rational& w, unsigned long p, const SeqParams& s)
{
    if (s.n < 3 || s.k < 1 || s.u <= 0)
        return false;
    const Integer P(p);
    unsigned long m = valuation(w.get_num(), p);
    Integer g;
    mpz_gcd(g.get_mpz_t(), s.u.get_num().get_mpz_t(), P.get_mpz_t());
    if (g != 1)
        return false;
    if (s.u.get_den() % ipow(P, m) != 0)
        return false;
    Rational third = Rational(ipow(P, s.k)) / (w * rpow(s.u, s.n - 2));
    const Rational lo = Q(2 * d - 1);
    Rational mn = std::min({w, s.u, third});
    Rational mx = std::max({w, s.u, third});
    return mn > lo && mx == w;
}

SeqSearch::SeqSearch(int d, Rational w, unsigned long p, unsigned long max_window)
    : d_(d), w_(std::move(w)), p_(p), window_(max_window)
{
    w_.canonicalize();
    if (d < 1)
        throw PreconditionViolated("d must be >= 1");
    if (!is_prime(p))
        throw PreconditionViolated("p = " + std::to_string(p) + " is not prime");
    if (w_ <= Q(2 * d - 1))
        throw PreconditionViolated("w = " + to_string(w_) + " must exceed 2d-1 = " + std::to_string(2 * d - 1));
    m_ = valuation(w_.get_num(), p);
    r_ = p == 2 ? 3 : 2;
}

SeqParams SeqSearch::next()
{
    const Integer P(p_);
    const Rational lo = Q(2 * d_ - 1);
    const Rational ratio = w_ / lo;
    const unsigned long base = j_ == 0 ? 1 : last_k_;
    const unsigned long k_min = j_ == 0 ? 1 : last_k_ + 1;
    const Rational pbase(ipow(P, base));
    unsigned long n = 3;
    while (rpow(ratio, n - 1) <= pbase)
        ++n;
    for (unsigned long tries = 0; tries < 64; ++tries, ++n) {
        const Rational wn = rpow(w_, n);
        const Rational left = w_ * rpow(lo, n - 1);
        for (unsigned long k = k_min;; ++k) {
            const Rational pk(ipow(P, k));
            if (pk >= wn)
                break;
            if (pk <= left)
                continue;
            // u in (max{2d-1, (p^k/w^2)^{1/(n-2)}}, min{w, (p^k/((2d-1)w))^{1/(n-2)}}).
            const Rational low_pow = pk / (w_ * w_);
            const Rational high_pow = pk / (lo * w_);
            auto admissible = [&](const Rational& u) {
                if (!(u > lo && u < w_))
                    return false;
                Rational un = rpow(u, n - 2);
                return un > low_pow && un < high_pow;
            };
            for (unsigned long R = 0; R <= window_; ++R) {
                std::optional<std::tuple<Integer, unsigned long, unsigned long>> best;
                for (unsigned long x = m_; x <= m_ + R; ++x)
                    for (unsigned long y = 0; y <= R; ++y) {
                        if (std::max(x - m_, y) != R)
                            continue;
                        Integer num = ipow(Integer(r_), y), den = ipow(P, x);
                        Rational u(num, den);
                        if (!admissible(u))
                            continue;
                        Integer height = std::max(num, den);
                        if (!best || height < std::get<0>(*best) ||
                            (height == std::get<0>(*best) && x < std::get<1>(*best)))
                            best = std::make_tuple(height, x, y);
                    }
                if (best) {
                    SeqParams s;
                    s.j = ++j_;
                    s.k = k;
                    s.n = n;
                    s.x = std::get<1>(*best);
                    s.y = std::get<2>(*best);
                    s.u = Rational(ipow(Integer(r_), s.y), ipow(P, s.x));
                    last_k_ = k;
                    if (!seq_params_valid(d_, w_, p_, s))
                        throw InternalInvariantViolated("emitted parameters fail the min/max condition");
                    return s;
                }
            }
        }
    }
    throw SearchExhausted("no u = " + std::to_string(r_) + "^y/" + std::to_string(p_) +
                          "^x found within window " + std::to_string(window_) + " for j = " +
                          std::to_string(j_ + 1));
}

std::vector<SeqParams> seq_search(int d, const Rational& w, unsigned long p, std::size_t count,
                                  unsigned long max_window)
{
    SeqSearch s(d, w, p, max_window);
    std::vector<SeqParams> out;
    for (std::size_t i = 0; i < count; ++i)
        out.push_back(s.next());
    return out;
}

// ------------------------------------------------------------------ mainalg

QuotientStyle monomial_style(FieldPtr f)
{
    return [f](std::size_t, std::int64_t d) { return Poly::monomial(f, 1, static_cast<std::size_t>(d)); };
}

QuotientStyle shifted_style(FieldPtr f)
{
    return [f](std::size_t, std::int64_t d) {
        return Poly::monomial(f, 1, static_cast<std::size_t>(d)) + Poly::constant(f, 1);
    };
}

std::vector<Integer> mainalg_degrees(int d, const Rational& w_in, unsigned long p, const SeqParams& s)
{
    Rational w = w_in;
    w.canonicalize();
    if (!seq_params_valid(d, w, p, s))
        throw PreconditionViolated("parameters do not satisfy the min/max condition");
    const Integer P(p);
    const Integer a = w.get_num(), b = w.get_den();
    const Integer aj = s.u.get_num(), bj = s.u.get_den();
    const Integer pm = ipow(P, valuation(a, p));
    const Integer pk = ipow(P, s.k);
    const unsigned long n = s.n;
    std::vector<Integer> num;
    num.push_back(ipow(bj, n - 2) * (a - b));
    for (unsigned long i = 2; i <= n - 1; ++i)
        num.push_back(a * ipow(aj, i - 2) * ipow(bj, n - i - 1) * (aj - bj));
    num.push_back(pk * b * ipow(bj, n - 2) - a * ipow(aj, n - 2));
    std::vector<Integer> out;
    for (std::size_t i = 0; i < num.size(); ++i) {
        if (num[i] % pm != 0)
            throw InternalInvariantViolated("d_" + std::to_string(i + 1) + " is not an integer");
        Integer di = num[i] / pm;
        if (di <= 0)
            throw InternalInvariantViolated("d_" + std::to_string(i + 1) + " = " + di.get_str() + " is not positive");
        out.push_back(di);
    }
    if (out.back() % P == 0)
        throw InternalInvariantViolated("p divides d_n = " + out.back().get_str());
    return out;
}

MainalgBuild build_mainalg(FieldPtr f, const SeqParams& s, int d, const Rational& w_in, QuotientStyle style)
{
    Rational w = w_in;
    w.canonicalize();
    const unsigned long p = f->p();
    MainalgBuild out;
    out.degrees = mainalg_degrees(d, w, p, s);
    if (!style)
        style = monomial_style(f);
    std::vector<std::int64_t> small;
    for (const auto& di : out.degrees) {
        if (di > Integer(1L << 31))
            throw PreconditionViolated("seed degree " + di.get_str() + " is too large to materialize");
        small.push_back(to_int64(di));
    }
    out.pattern.field = f;
    out.pattern.k = static_cast<unsigned>(s.k);
    out.pattern.unit = 1;
    for (std::size_t i = 0; i < small.size(); ++i) {
        Poly A = style(i, small[i]);
        if (A.degree() != small[i])
            throw PreconditionViolated("quotient style gave degree " + std::to_string(A.degree()) + " for d_" +
                                       std::to_string(i + 1) + " = " + std::to_string(small[i]));
        out.pattern.seed.push_back(std::move(A));
    }

    const Integer P(p);
    const Integer a = w.get_num(), b = w.get_den();
    const Integer aj = s.u.get_num(), bj = s.u.get_den();
    const Integer pk = ipow(P, s.k);
    const unsigned long n = s.n;
    auto rat = [](const Integer& x, const Integer& y) {
        Rational r(x, y);
        r.canonicalize();
        return r;
    };
    out.r_closed.push_back(rat(a - b, (pk - 1) * b));
    for (unsigned long i = 2; i <= n - 1; ++i)
        out.r_closed.push_back(rat(aj - bj, (pk - 1) * bj));
    out.r_closed.push_back(rat(pk * b * ipow(bj, n - 2) - a * ipow(aj, n - 2), (pk - 1) * a * ipow(aj, n - 2)));

    out.bounds = ratio_bounds(small, pk);
    if (out.bounds.r != out.r_closed)
        throw InternalInvariantViolated("ratio bounds disagree with the closed forms");
    if (out.bounds.limsup != w)
        throw InternalInvariantViolated("limsup " + to_string(out.bounds.limsup) + " != w");
    if (!(out.bounds.liminf > Q(2 * d - 1)))
        throw InternalInvariantViolated("liminf " + to_string(out.bounds.liminf) + " <= 2d-1");
    return out;
}

// ---------------------------------------------------------------- realequal

RealEqualSource::RealEqualSource(FieldPtr f, Rational w, Bits eps) : f_(std::move(f)), w_(std::move(w)), eps_(std::move(eps))
{
}

std::vector<Integer> RealEqualSource::degrees(std::size_t n) const
{
    std::vector<Integer> out;
    Integer degQ = 0;
    const Rational wm1 = w_ - 1;
    for (std::size_t i = 0; i < n; ++i) {
        Integer e;
        if (i == 0)
            e = 0;
        else if (i == 1)
            e = 1;
        else
            e = floor(wm1 * Rational(degQ));
        out.push_back(e);
        if (i >= 1)
            degQ += e;
    }
    return out;
}

std::optional<Poly> RealEqualSource::quotient(std::size_t n) const
{
    if (n == 0)
        return Poly(f_);
    std::int64_t e = to_int64(degrees(n + 1).back());
    if (e < 1)
        throw InternalInvariantViolated("constant partial quotient at index " + std::to_string(n));
    if (e > (std::int64_t(1) << 31))
        throw PreconditionViolated("partial quotient a_" + std::to_string(n) + " has degree " + std::to_string(e) +
                                   ", too large to materialize");
    Poly a = Poly::monomial(f_, 1, static_cast<std::size_t>(e));
    if (eps_ && eps_(n))
        a += Poly::constant(f_, 1);
    return a;
}

std::shared_ptr<RealEqualSource> build_realequal(FieldPtr f, int d, const Rational& w, RealEqualSource::Bits eps)
{
    if (d < 1)
        throw PreconditionViolated("d must be >= 1");
    if (w < Q(2 * d - 1))
        throw PreconditionViolated("w = " + to_string(w) + " is below 2d-1 = " + std::to_string(2 * d - 1));
    if (w < 2)
        throw PreconditionViolated("w = " + to_string(w) + " < 2 gives a constant partial quotient a_2");
    return std::make_shared<RealEqualSource>(std::move(f), w, std::move(eps));
}

// ------------------------------------------------------------------- floors

Integer PowerFloors::at(std::size_t i) const
{
    std::lock_guard<std::mutex> lock(mu_);
    while (cache_.size() <= i)
        cache_.push_back(floor(rpow(w_, cache_.size())));
    return cache_[i];
}

std::size_t PowerFloors::index_below(const Integer& n) const
{
    if (w_ <= 1)
        throw PreconditionViolated("floors of w^i need w > 1");
    if (n < 1)
        throw PreconditionViolated("index_below needs n >= 1");
    std::size_t i = 0;
    while (at(i + 1) <= n)
        ++i;
    return i;
}

const char* kind_name(ApproximantKind k)
{
    switch (k) {
    case ApproximantKind::Conti1: return "conti1";
    case ApproximantKind::Conti2: return "conti2";
    case ApproximantKind::Gap: return "gap";
    case ApproximantKind::Convergent: return "convergent";
    }
    return "unknown";
}

// ---------------------------------------------------------------- schedules

bool conti1_threshold_ok(int d, const Rational& w)
{
    // w >= (3d+2+sqrt(9d^2+4d+4))/2
    Rational x = 2 * w - Q(3 * d + 2);
    return x >= 0 && x * x >= Q(9L * d * d + 4L * d + 4);
}

bool conti2_threshold_ok(int d, const Rational& w, const Rational& eta)
{
    return w >= Q(121L * d * d) && eta > 0 && eta * eta * Q(long(d) * d) < w;
}

namespace {

void check_quotients(const std::vector<const Poly*>& ps)
{
    for (std::size_t i = 0; i < ps.size(); ++i) {
        if (ps[i]->degree() < 1)
            throw PreconditionViolated("schedule polynomials must be non-constant");
        for (std::size_t j = 0; j < i; ++j)
            if (*ps[i] == *ps[j])
                throw PreconditionViolated("schedule polynomials must be distinct");
        require_same_field(*ps[0]->field(), *ps[i]->field());
    }
}

} // namespace

ContiFamily::ContiFamily(ApproximantKind kind, int d, Rational w, Rational eta, Poly a, Poly b, Poly c)
    : kind_(kind), d_(d), floors_(std::move(w)), eta_(std::move(eta)), a_(std::move(a)), b_(std::move(b)),
      c_(std::move(c))
{
}

std::shared_ptr<ContiFamily> ContiFamily::conti1(int d, const Rational& w, Poly a, Poly b)
{
    if (d < 2)
        throw PreconditionViolated("d must be >= 2");
    check_quotients({&a, &b});
    if (!conti1_threshold_ok(d, w))
        throw ThresholdViolated("w = " + to_string(w) + " is below (3d+2+sqrt(9d^2+4d+4))/2 for d = " +
                                std::to_string(d));
    Poly c(a.field());
    return std::shared_ptr<ContiFamily>(new ContiFamily(ApproximantKind::Conti1, d, w, Rational(0), a, b, c));
}

std::shared_ptr<ContiFamily> ContiFamily::conti2(int d, const Rational& w, const Rational& eta, Poly a, Poly b,
                                                 Poly c)
{
    if (d < 2)
        throw PreconditionViolated("d must be >= 2");
    check_quotients({&a, &b, &c});
    if (w < Q(121L * d * d))
        throw ThresholdViolated("w = " + to_string(w) + " is below 121 d^2 = " + std::to_string(121 * d * d));
    if (!(eta > 0) || !(eta * eta * Q(long(d) * d) < w))
        throw ThresholdViolated("eta = " + to_string(eta) + " is outside (0, sqrt(w)/d)");
    return std::shared_ptr<ContiFamily>(new ContiFamily(ApproximantKind::Conti2, d, w, eta, a, b, c));
}

const Poly& ContiFamily::poly_of(int sym) const { return sym == 0 ? a_ : sym == 1 ? b_ : c_; }

std::uint64_t ContiFamily::period_length(std::size_t j) const
{
    if (kind_ != ApproximantKind::Conti2)
        return 1;
    Integer L = floor(eta_ * rpow(w(), j));
    if (L < 1)
        throw PreconditionViolated("floor(eta w^" + std::to_string(j) + ") = 0");
    return to_u64(L);
}

std::uint64_t ContiFamily::repeat_count(std::size_t j) const
{
    if (kind_ != ApproximantKind::Conti2)
        return 0;
    Integer span = floors_.at(j + 1) - (floors_.at(j) - 1);
    return to_u64(Integer(span / from_u64(period_length(j))));
}

int ContiFamily::symbol(std::uint64_t n) const
{
    if (n < 1)
        throw PreconditionViolated("schedule starts at n = 1");
    const Integer N = from_u64(n);
    const std::size_t i = floors_.index_below(N);
    if (floors_.at(i) == N)
        return 1;
    if (kind_ == ApproximantKind::Conti2) {
        for (std::size_t j : {i, i - 1}) {
            if (j < 1 || j > i)
                continue;
            std::uint64_t f = to_u64(floors_.at(j));
            std::uint64_t L = period_length(j);
            if (n > f && (n - f) % L == 0 && (n - f) / L <= repeat_count(j))
                return 2;
        }
    }
    return 0;
}

Poly ContiFamily::quotient(std::uint64_t n) const
{
    if (n == 0)
        return Poly(field());
    return poly_of(symbol(n));
}

std::array<std::uint64_t, 3> ContiFamily::count_symbols(std::uint64_t upto) const
{
    std::array<std::uint64_t, 3> cnt{0, 0, 0};
    if (upto == 0)
        return cnt;
    const Integer U = from_u64(upto);
    std::vector<std::uint64_t> bs;
    for (std::size_t i = 0; floors_.at(i) <= U; ++i)
        bs.push_back(to_u64(floors_.at(i)));
    cnt[1] = bs.size();
    if (kind_ == ApproximantKind::Conti2) {
        for (std::size_t j = 1; floors_.at(j) < U; ++j) {
            std::uint64_t f = to_u64(floors_.at(j));
            std::uint64_t L = period_length(j);
            std::uint64_t M = std::min(repeat_count(j), (upto - f) / L);
            cnt[2] += M;
            for (auto g : bs)
                if (g > f && (g - f) % L == 0 && (g - f) / L <= M)
                    --cnt[2];
        }
    }
    cnt[0] = upto - cnt[1] - cnt[2];
    return cnt;
}

std::uint64_t ContiFamily::cut(std::size_t j) const { return to_u64(floors_.at(j)); }

std::uint64_t ContiFamily::divergence(std::size_t j) const
{
    const std::uint64_t N = cut(j);
    std::uint64_t best = cut(j + 1);
    if (kind_ == ApproximantKind::Conti2) {
        const std::uint64_t L = period_length(j);
        best = std::min(best, N + (repeat_count(j) + 1) * L);
        // c positions of the previous block that spill past the cut.
        if (j >= 2) {
            std::uint64_t f = cut(j - 1), Lp = period_length(j - 1), M = repeat_count(j - 1);
            for (std::uint64_t m = (N - f) / Lp; m <= M; ++m) {
                std::uint64_t idx = f + m * Lp;
                if (idx > N && symbol(idx) == 2 && (idx - N) % L != 0) {
                    best = std::min(best, idx);
                    break;
                }
            }
        }
    }
    return best;
}

namespace {

class ScheduleSource : public QuotientSource {
public:
    explicit ScheduleSource(const ContiFamily* fam) : fam_(fam) {}
    FieldPtr field() const override { return fam_->field(); }
    std::optional<Poly> quotient(std::size_t n) const override { return fam_->quotient(n); }

private:
    const ContiFamily* fam_;
};

} // namespace

std::shared_ptr<QuotientSource> ContiFamily::target() const { return std::make_shared<ScheduleSource>(this); }

std::vector<Poly> ContiFamily::approximant_preperiod(std::size_t j) const
{
    const std::uint64_t N = cut(j);
    std::vector<Poly> out;
    out.reserve(N + 1);
    out.push_back(Poly(field()));
    for (std::uint64_t n = 1; n <= N; ++n)
        out.push_back(quotient(n));
    return out;
}

std::vector<Poly> ContiFamily::approximant_period(std::size_t j) const
{
    if (kind_ == ApproximantKind::Conti1)
        return {a_};
    std::vector<Poly> out(period_length(j), a_);
    out.back() = c_;
    return out;
}

std::uint64_t ContiFamily::approximant_cost(std::size_t j) const
{
    auto cnt = count_symbols(cut(j));
    std::uint64_t pre = cnt[0] * a_.degree() + cnt[1] * b_.degree() + cnt[2] * c_.degree();
    std::uint64_t per = kind_ == ApproximantKind::Conti1 ? a_.degree()
                                                         : (period_length(j) - 1) * a_.degree() + c_.degree();
    return 2 * pre + per + 1;
}

QuadraticNumber ContiFamily::approximant(std::size_t j) const
{
    return quadratic_value(approximant_preperiod(j), approximant_period(j));
}

ApproximationRecord ContiFamily::record(const QuadraticNumber& alpha, std::size_t j) const
{
    const std::uint64_t N = cut(j);
    const std::uint64_t D = divergence(j);
    auto cnt = count_symbols(D - 1);
    std::int64_t degq = static_cast<std::int64_t>(cnt[0]) * a_.degree() +
                        static_cast<std::int64_t>(cnt[1]) * b_.degree() +
                        static_cast<std::int64_t>(cnt[2]) * c_.degree();
    const Poly& x = poly_of(symbol(D));
    const Poly& y = (kind_ == ApproximantKind::Conti2 && (D - N) % period_length(j) == 0) ? c_ : a_;
    if (x == y)
        throw InternalInvariantViolated("divergence index " + std::to_string(D) + " does not differ");
    ApproximationRecord r;
    r.j = j;
    r.h = alpha.height_log;
    r.dist = 2 * degq + x.degree() + y.degree() - (x - y).degree();
    r.conj = -conjugate_distance(alpha).value();
    return r;
}

std::vector<ApproximationRecord> ContiFamily::records(std::size_t j_max, std::uint64_t budget) const
{
    std::vector<ApproximationRecord> out;
    for (std::size_t j = 1; j <= j_max; ++j) {
        std::uint64_t cost = approximant_cost(j);
        if (cost > budget)
            throw InsufficientPrecision("approximant " + std::to_string(j) + " needs about " + std::to_string(cost) +
                                        " coefficients; budget is " + std::to_string(budget));
        out.push_back(record(approximant(j), j));
        if (out.size() >= 2)
            out[out.size() - 2].h_next = out.back().h;
    }
    return out;
}

Rational ContiFamily::dist_limit() const
{
    if (kind_ == ApproximantKind::Conti1)
        return w();
    return 2 * w() / (2 + eta_);
}

Rational ContiFamily::conj_limit() const
{
    if (kind_ == ApproximantKind::Conti1)
        return Rational(1);
    return Rational(2) / (2 + eta_);
}

Rational ContiFamily::wstar_target() const
{
    if (kind_ == ApproximantKind::Conti1)
        return w() - 1;
    return (2 * w() - 2 - eta_) / (2 + eta_);
}

Rational ContiFamily::w_target() const
{
    if (kind_ == ApproximantKind::Conti1)
        return w();
    return (2 * w() - eta_) / (2 + eta_);
}

BestParams ContiFamily::best_params() const
{
    BestParams p;
    p.d = d_;
    p.theta = w();
    p.delta = p.rho = dist_limit() - d_;
    p.eps = p.chi = conj_limit();
    return p;
}

// ---------------------------------------------------------------------- gap

GapFamily::GapFamily(FieldPtr f, Schedule n) : f_(std::move(f)), n_(std::move(n))
{
    if (!n_)
        throw PreconditionViolated("gap series needs a schedule");
    if (n_(0) < 0)
        throw PreconditionViolated("gap exponents must be >= 0");
}

std::int64_t GapFamily::exponent(std::size_t j) const
{
    Integer prev = n_(0);
    for (std::size_t i = 1; i <= j; ++i) {
        Integer v = n_(i);
        if (!(v > prev))
            throw PreconditionViolated("gap schedule is not strictly increasing at j = " + std::to_string(i));
        prev = std::move(v);
    }
    return to_int64(prev);
}

LaurentSeries GapFamily::series(std::int64_t abs) const
{
    const std::int64_t n0 = exponent(0);
    if (abs <= n0)
        return LaurentSeries::zero(f_, abs);
    Coeffs c(static_cast<std::size_t>(abs - n0), 0);
    for (std::size_t j = 0;; ++j) {
        std::int64_t e = exponent(j);
        if (e >= abs)
            break;
        c[static_cast<std::size_t>(e - n0)] = 1;
    }
    return LaurentSeries::from_coeffs(f_, n0, std::move(c));
}

std::pair<Poly, Poly> GapFamily::approximant(std::size_t j) const
{
    const std::int64_t nj = exponent(j);
    Coeffs c(static_cast<std::size_t>(nj) + 1, 0);
    for (std::size_t i = 0; i <= j; ++i)
        c[static_cast<std::size_t>(nj - exponent(i))] = 1;
    return {Poly(f_, std::move(c)), Poly::monomial(f_, 1, static_cast<std::size_t>(nj))};
}

ApproximationRecord GapFamily::record(std::size_t j) const
{
    ApproximationRecord r;
    r.j = j;
    r.h = exponent(j);
    r.dist = exponent(j + 1);
    r.h_next = exponent(j + 1);
    return r;
}

std::vector<ApproximationRecord> GapFamily::records(std::size_t j_lo, std::size_t j_hi) const
{
    std::vector<ApproximationRecord> out;
    for (std::size_t j = j_lo; j <= j_hi; ++j)
        out.push_back(record(j));
    return out;
}

GapFamily build_gap_series(FieldPtr f, GapFamily::Schedule n) { return GapFamily(std::move(f), std::move(n)); }

GapFamily::Schedule geometric_schedule(unsigned long base)
{
    if (base < 2)
        throw PreconditionViolated("geometric schedule needs base >= 2");
    return [base](std::size_t j) { return ipow(Integer(base), j); };
}

} // namespace lcf

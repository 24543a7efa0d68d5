#include "lcf/poly.hpp"

#include "lcf/error.hpp"

#include <gmp.h>

#include <algorithm>
#include <bit>
#include <cctype>

namespace lcf {

namespace kernel {

namespace {

constexpr std::size_t kSchoolbookLimit = 512;
constexpr std::size_t kKaratsubaBase = 32;
constexpr std::size_t kKroneckerLimit = 2048;

void schoolbook_raw(const Field& F, const std::uint32_t* a, std::size_t na, const std::uint32_t* b,
                    std::size_t nb, std::uint32_t* out)
{
    std::size_t n = na + nb - 1;
    if (F.is_prime() && F.p() < (1u << 16)) {
        // Each output collects at most min(na, nb) products below 2^32.
        std::vector<std::uint64_t> acc(n, 0);
        for (std::size_t i = 0; i < na; ++i) {
            std::uint64_t ai = a[i];
            if (ai == 0)
                continue;
            std::uint64_t* dst = acc.data() + i;
            for (std::size_t j = 0; j < nb; ++j)
                dst[j] += ai * b[j];
        }
        for (std::size_t k = 0; k < n; ++k)
            out[k] = static_cast<std::uint32_t>(acc[k] % F.p());
        return;
    }
    std::fill(out, out + n, 0u);
    for (std::size_t i = 0; i < na; ++i) {
        if (a[i] == 0)
            continue;
        for (std::size_t j = 0; j < nb; ++j)
            out[i + j] = F.add(out[i + j], F.mul(a[i], b[j]));
    }
}

void karatsuba_raw(const Field& F, const std::uint32_t* a, const std::uint32_t* b, std::size_t n,
                   std::uint32_t* out)
{
    if (n <= kKaratsubaBase) {
        schoolbook_raw(F, a, n, b, n, out);
        return;
    }
    std::size_t h = n / 2, hi = n - h;
    std::vector<std::uint32_t> z0(2 * h - 1), z2(2 * hi - 1), z1(2 * hi - 1);
    karatsuba_raw(F, a, b, h, z0.data());
    karatsuba_raw(F, a + h, b + h, hi, z2.data());
    std::vector<std::uint32_t> sa(hi), sb(hi);
    for (std::size_t i = 0; i < hi; ++i) {
        sa[i] = F.add(a[h + i], i < h ? a[i] : 0);
        sb[i] = F.add(b[h + i], i < h ? b[i] : 0);
    }
    karatsuba_raw(F, sa.data(), sb.data(), hi, z1.data());
    for (std::size_t i = 0; i < z0.size(); ++i)
        z1[i] = F.sub(z1[i], z0[i]);
    for (std::size_t i = 0; i < z2.size(); ++i)
        z1[i] = F.sub(z1[i], z2[i]);
    std::fill(out, out + 2 * n - 1, 0u);
    for (std::size_t i = 0; i < z0.size(); ++i)
        out[i] = z0[i];
    for (std::size_t i = 0; i < z2.size(); ++i)
        out[2 * h + i] = F.add(out[2 * h + i], z2[i]);
    for (std::size_t i = 0; i < z1.size(); ++i)
        out[h + i] = F.add(out[h + i], z1[i]);
}

} // namespace

void normalize(Coeffs& c)
{
    while (!c.empty() && c.back() == 0)
        c.pop_back();
}

Coeffs add(const Field& F, const Coeffs& a, const Coeffs& b)
{
    Coeffs r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] = F.add(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
    normalize(r);
    return r;
}

Coeffs sub(const Field& F, const Coeffs& a, const Coeffs& b)
{
    Coeffs r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] = F.sub(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
    normalize(r);
    return r;
}

Coeffs mul_schoolbook(const Field& F, const Coeffs& a, const Coeffs& b)
{
    if (a.empty() || b.empty())
        return {};
    Coeffs r(a.size() + b.size() - 1);
    schoolbook_raw(F, a.data(), a.size(), b.data(), b.size(), r.data());
    return r;
}

Coeffs mul_karatsuba(const Field& F, const Coeffs& a, const Coeffs& b)
{
    if (a.empty() || b.empty())
        return {};
    const Coeffs& lo = a.size() <= b.size() ? a : b;
    const Coeffs& hi = a.size() <= b.size() ? b : a;
    std::size_t n = lo.size();
    Coeffs r(a.size() + b.size() - 1, 0);
    Coeffs chunk(n), part(2 * n - 1);
    for (std::size_t off = 0; off < hi.size(); off += n) {
        std::size_t len = std::min(n, hi.size() - off);
        std::fill(chunk.begin(), chunk.end(), 0u);
        std::copy(hi.begin() + off, hi.begin() + off + len, chunk.begin());
        karatsuba_raw(F, chunk.data(), lo.data(), n, part.data());
        std::size_t used = std::min(part.size(), r.size() - off);
        for (std::size_t i = 0; i < used; ++i)
            r[off + i] = F.add(r[off + i], part[i]);
    }
    return r;
}

Coeffs mul_kronecker(const Field& F, const Coeffs& a, const Coeffs& b)
{
    if (a.empty() || b.empty())
        return {};
    if (!F.is_prime())
        return mul_karatsuba(F, a, b);
    unsigned __int128 bound = static_cast<unsigned __int128>(F.p() - 1) * (F.p() - 1) *
                              std::min(a.size(), b.size());
    if (bound >> 63)
        return mul_karatsuba(F, a, b);
    const unsigned bits = std::max(1u, static_cast<unsigned>(std::bit_width(static_cast<std::uint64_t>(bound))));

    auto pack = [bits](const Coeffs& v, mpz_t z) {
        std::size_t words = (v.size() * bits + 63) / 64 + 1;
        std::vector<std::uint64_t> buf(words, 0);
        for (std::size_t i = 0; i < v.size(); ++i) {
            std::uint64_t val = v[i];
            if (val == 0)
                continue;
            std::size_t off = i * bits;
            std::size_t w = off / 64, s = off % 64;
            buf[w] |= val << s;
            if (s != 0 && s + bits > 64)
                buf[w + 1] |= val >> (64 - s);
        }
        mpz_import(z, buf.size(), -1, 8, 0, 0, buf.data());
    };

    mpz_t za, zb, zc;
    mpz_init(za);
    mpz_init(zb);
    mpz_init(zc);
    pack(a, za);
    pack(b, zb);
    mpz_mul(zc, za, zb);
    std::size_t n = a.size() + b.size() - 1;
    std::size_t words = (n * bits + 63) / 64 + 2;
    std::vector<std::uint64_t> buf(words, 0);
    std::size_t count = 0;
    mpz_export(buf.data(), &count, -1, 8, 0, 0, zc);
    mpz_clear(za);
    mpz_clear(zb);
    mpz_clear(zc);

    Coeffs r(n);
    const std::uint64_t mask = bits == 64 ? ~std::uint64_t(0) : ((std::uint64_t(1) << bits) - 1);
    const std::uint64_t p = F.p();
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t off = i * bits;
        std::size_t w = off / 64, s = off % 64;
        std::uint64_t val = buf[w] >> s;
        if (s != 0 && s + bits > 64)
            val |= buf[w + 1] << (64 - s);
        r[i] = static_cast<std::uint32_t>((val & mask) % p);
    }
    return r;
}

Coeffs mul(const Field& F, const Coeffs& a, const Coeffs& b)
{
    if (a.empty() || b.empty())
        return {};
    std::size_t small = std::min(a.size(), b.size());
    if (small <= kSchoolbookLimit)
        return mul_schoolbook(F, a, b);
    if (F.is_prime() && small >= kKroneckerLimit)
        return mul_kronecker(F, a, b);
    return mul_karatsuba(F, a, b);
}

Coeffs mul_low(const Field& F, const Coeffs& a, const Coeffs& b, std::size_t n)
{
    Coeffs ta(a.begin(), a.begin() + std::min(a.size(), n));
    Coeffs tb(b.begin(), b.begin() + std::min(b.size(), n));
    Coeffs r = mul(F, ta, tb);
    if (r.size() > n)
        r.resize(n);
    return r;
}

} // namespace kernel

Poly::Poly(FieldPtr f) : f_(std::move(f)) {}

Poly::Poly(FieldPtr f, Coeffs coeffs) : f_(std::move(f)), c_(std::move(coeffs))
{
    for (auto c : c_)
        if (c >= f_->q())
            throw PreconditionViolated("polynomial coefficient code out of range");
    kernel::normalize(c_);
}

Poly Poly::constant(FieldPtr f, std::uint32_t c) { return Poly(std::move(f), Coeffs{c}); }

Poly Poly::monomial(FieldPtr f, std::uint32_t c, std::size_t degree)
{
    Coeffs v(degree + 1, 0);
    v[degree] = c;
    return Poly(std::move(f), std::move(v));
}

Poly Poly::T(FieldPtr f) { return monomial(std::move(f), 1, 1); }

void Poly::check(const Poly& o) const { require_same_field(*f_, *o.f_); }

Poly Poly::operator+(const Poly& o) const
{
    check(o);
    Poly r(f_);
    r.c_ = kernel::add(*f_, c_, o.c_);
    return r;
}

Poly Poly::operator-(const Poly& o) const
{
    check(o);
    Poly r(f_);
    r.c_ = kernel::sub(*f_, c_, o.c_);
    return r;
}

Poly Poly::operator*(const Poly& o) const
{
    check(o);
    Poly r(f_);
    r.c_ = kernel::mul(*f_, c_, o.c_);
    kernel::normalize(r.c_);
    return r;
}

Poly Poly::operator-() const
{
    Poly r(f_);
    r.c_.resize(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i)
        r.c_[i] = f_->neg(c_[i]);
    return r;
}

Poly Poly::scale(std::uint32_t c) const
{
    Poly r(f_);
    if (c == 0)
        return r;
    r.c_.resize(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i)
        r.c_[i] = f_->mul(c_[i], c);
    return r;
}

Poly Poly::scale(const FieldElement& c) const
{
    require_same_field(*f_, *c.field());
    return scale(c.code());
}

Poly Poly::shift(std::size_t k) const
{
    if (is_zero())
        return *this;
    Poly r(f_);
    r.c_.assign(k, 0);
    r.c_.insert(r.c_.end(), c_.begin(), c_.end());
    return r;
}

bool Poly::operator==(const Poly& o) const
{
    check(o);
    return c_ == o.c_;
}

Poly Poly::monic() const
{
    if (is_zero() || lead() == 1)
        return *this;
    return scale(f_->inv(lead()));
}

FieldElement Poly::eval(const FieldElement& x) const
{
    require_same_field(*f_, *x.field());
    std::uint32_t acc = 0;
    for (std::size_t i = c_.size(); i-- > 0;)
        acc = f_->add(f_->mul(acc, x.code()), c_[i]);
    return FieldElement(f_, acc);
}

Poly Poly::frobenius_pow(unsigned k) const
{
    if (is_zero())
        return *this;
    std::uint64_t step = 1;
    for (unsigned i = 0; i < k; ++i) {
        step *= f_->p();
        if (step > (std::uint64_t(1) << 32))
            throw PreconditionViolated("frobenius_pow exponent too large");
    }
    std::uint64_t deg = static_cast<std::uint64_t>(degree()) * step;
    if (deg > (std::uint64_t(1) << 31))
        throw PreconditionViolated("frobenius_pow result degree too large");
    Coeffs out(deg + 1, 0);
    for (std::size_t i = 0; i < c_.size(); ++i)
        out[i * step] = f_->frobenius(c_[i], k);
    return Poly(f_, std::move(out));
}

Poly Poly::derivative() const
{
    Poly r(f_);
    if (c_.size() <= 1)
        return r;
    r.c_.resize(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i)
        r.c_[i - 1] = f_->mul(c_[i], f_->from_int(static_cast<std::int64_t>(i % f_->p())));
    kernel::normalize(r.c_);
    return r;
}

std::string Poly::to_string() const
{
    if (is_zero())
        return "0";
    std::string out;
    for (std::size_t i = c_.size(); i-- > 0;) {
        if (c_[i] == 0)
            continue;
        if (!out.empty())
            out += " + ";
        std::string cs = f_->format(c_[i]);
        if (cs.find('+') != std::string::npos)
            cs = "(" + cs + ")";
        if (i == 0) {
            out += cs;
            continue;
        }
        if (c_[i] != 1)
            out += cs + "*";
        out += "T";
        if (i > 1)
            out += "^" + std::to_string(i);
    }
    return out;
}

namespace {

std::string_view strip_ws(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

} // namespace

Poly Poly::parse(FieldPtr f, std::string_view text)
{
    const Field& F = *f;
    auto fail = [&](const std::string& why) {
        return ParseError("malformed polynomial '" + std::string(text) + "': " + why);
    };
    std::vector<std::pair<int, std::string_view>> terms;
    std::string_view s = strip_ws(text);
    if (s.empty())
        throw fail("empty");
    int depth = 0;
    std::size_t start = 0;
    int sign = 1;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        char ch = i < s.size() ? s[i] : '\0';
        if (ch == '(')
            ++depth;
        else if (ch == ')')
            --depth;
        if (depth < 0)
            throw fail("unbalanced parentheses");
        bool boundary = i == s.size() || (depth == 0 && (ch == '+' || ch == '-'));
        if (!boundary)
            continue;
        std::string_view piece = strip_ws(s.substr(start, i - start));
        if (piece.empty()) {
            if (i != 0 || i == s.size())
                throw fail("empty term");
        } else {
            terms.emplace_back(sign, piece);
        }
        if (i < s.size())
            sign = ch == '-' ? -1 : 1;
        start = i + 1;
    }
    if (depth != 0)
        throw fail("unbalanced parentheses");

    Coeffs acc;
    for (auto [sg, term] : terms) {
        std::size_t tpos = std::string_view::npos;
        int d = 0;
        for (std::size_t i = 0; i < term.size(); ++i) {
            if (term[i] == '(')
                ++d;
            else if (term[i] == ')')
                --d;
            else if (d == 0 && term[i] == 'T') {
                tpos = i;
                break;
            }
        }
        std::uint32_t c = 1;
        std::size_t e = 0;
        if (tpos == std::string_view::npos) {
            c = F.parse(term);
        } else {
            std::string_view left = strip_ws(term.substr(0, tpos));
            if (!left.empty()) {
                if (left.back() != '*')
                    throw fail("expected '*' before T");
                left = strip_ws(left.substr(0, left.size() - 1));
                if (left.empty())
                    throw fail("missing coefficient");
                c = F.parse(left);
            }
            std::string_view right = strip_ws(term.substr(tpos + 1));
            e = 1;
            if (!right.empty()) {
                if (right.front() != '^')
                    throw fail("expected '^' after T");
                right = strip_ws(right.substr(1));
                if (right.size() >= 2 && right.front() == '{' && right.back() == '}')
                    right = strip_ws(right.substr(1, right.size() - 2));
                if (right.empty() || right.size() > 9)
                    throw fail("bad exponent");
                e = 0;
                for (char ch : right) {
                    if (!std::isdigit(static_cast<unsigned char>(ch)))
                        throw fail("bad exponent");
                    e = e * 10 + static_cast<std::size_t>(ch - '0');
                }
            }
        }
        if (sg < 0)
            c = F.neg(c);
        if (acc.size() <= e)
            acc.resize(e + 1, 0);
        acc[e] = F.add(acc[e], c);
    }
    return Poly(std::move(f), std::move(acc));
}

std::pair<Poly, Poly> divmod(const Poly& f, const Poly& g)
{
    require_same_field(*f.field(), *g.field());
    if (g.is_zero())
        throw DivisionByZero("polynomial division by zero");
    const Field& F = *f.field();
    if (f.degree() < g.degree())
        return {Poly(f.field()), f};
    Coeffs r = f.coeffs();
    const Coeffs& gc = g.coeffs();
    std::size_t dg = gc.size() - 1;
    std::size_t dq = r.size() - 1 - dg;
    Coeffs qc(dq + 1, 0);
    std::uint32_t li = F.inv(g.lead());
    for (std::size_t k = dq + 1; k-- > 0;) {
        std::uint32_t c = F.mul(r[k + dg], li);
        qc[k] = c;
        if (c == 0)
            continue;
        std::uint32_t nc = F.neg(c);
        for (std::size_t i = 0; i <= dg; ++i)
            r[k + i] = F.add(r[k + i], F.mul(nc, gc[i]));
    }
    r.resize(dg);
    return {Poly(f.field(), std::move(qc)), Poly(f.field(), std::move(r))};
}

Poly operator/(const Poly& f, const Poly& g) { return divmod(f, g).first; }
Poly operator%(const Poly& f, const Poly& g) { return divmod(f, g).second; }

Poly gcd(const Poly& f, const Poly& g)
{
    Poly a = f, b = g;
    while (!b.is_zero()) {
        Poly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

XGcd xgcd(const Poly& f, const Poly& h)
{
    FieldPtr F = f.field();
    Poly r0 = f, r1 = h;
    Poly s0 = Poly::constant(F, 1), s1(F);
    Poly t0(F), t1 = Poly::constant(F, 1);
    while (!r1.is_zero()) {
        auto [qq, rr] = divmod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(rr);
        Poly s2 = s0 - qq * s1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        Poly t2 = t0 - qq * t1;
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero())
        return {r0, s0, t0};
    std::uint32_t li = F->inv(r0.lead());
    return {r0.scale(li), s0.scale(li), t0.scale(li)};
}

Poly powmod(const Poly& f, const std::uint64_t e, const Poly& m)
{
    Poly result = Poly::constant(f.field(), 1) % m;
    Poly base = f % m;
    std::uint64_t k = e;
    while (k) {
        if (k & 1)
            result = (result * base) % m;
        base = (base * base) % m;
        k >>= 1;
    }
    return result;
}

} // namespace lcf

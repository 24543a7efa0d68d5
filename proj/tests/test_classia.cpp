#include "oracle.hpp"

#include "lcf/classia.hpp"
#include "lcf/constructions.hpp"
#include "lcf/error.hpp"

#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

using namespace lcf;

namespace {

Poly P(const FieldPtr& f, const char* s) { return Poly::parse(f, s); }

oracle::Vec to_vec(const Poly& p)
{
    oracle::Vec v;
    for (auto c : p.coeffs())
        v.push_back(c);
    return v;
}

// b(T)^{p^k} over a prime field: coefficients are fixed, exponents scale.
oracle::Vec frob(const oracle::Vec& b, long pk)
{
    if (b.empty())
        return {};
    oracle::Vec out(static_cast<std::size_t>((static_cast<long>(b.size()) - 1) * pk + 1), 0);
    for (std::size_t i = 0; i < b.size(); ++i)
        out[i * static_cast<std::size_t>(pk)] = b[i];
    return out;
}

oracle::Vec scale(oracle::Vec b, long c, long p)
{
    for (auto& x : b)
        x = oracle::md(x * c, p);
    return b;
}

// Literal reading of the twisted-periodic rule over F_p.
std::vector<oracle::Vec> twisted(const std::vector<oracle::Vec>& pre, const std::vector<oracle::Vec>& seed, long unit,
                                 long p, unsigned k, std::size_t n)
{
    long pk = 1;
    for (unsigned i = 0; i < k; ++i)
        pk *= p;
    std::vector<oracle::Vec> b(seed);
    const std::size_t s = seed.size();
    while (pre.size() + b.size() < n) {
        std::size_t j = b.size() - s + 1; // b_{j+s} from b_j, 1-based
        long c = j % 2 == 1 ? unit : oracle::inv_mod(unit, p);
        b.push_back(scale(frob(b[j - 1], pk), c, p));
    }
    std::vector<oracle::Vec> out(pre);
    out.insert(out.end(), b.begin(), b.end());
    out.resize(n);
    return out;
}

// max and min of deg q_{n+1}/deg q_n over n in [lo, hi), as fractions.
std::pair<std::pair<long, long>, std::pair<long, long>> ratio_extrema(const std::vector<long>& deg_a, std::size_t lo,
                                                                      std::size_t hi)
{
    std::vector<long> dq(deg_a.size(), 0);
    for (std::size_t n = 1; n < deg_a.size(); ++n)
        dq[n] = dq[n - 1] + deg_a[n];
    std::pair<long, long> mx{0, 1}, mn{1L << 40, 1};
    for (std::size_t n = lo; n < hi && n + 1 < dq.size(); ++n) {
        long a = dq[n + 1], b = dq[n];
        if (static_cast<__int128>(a) * mx.second > static_cast<__int128>(mx.first) * b)
            mx = {a, b};
        if (static_cast<__int128>(a) * mn.second < static_cast<__int128>(mn.first) * b)
            mn = {a, b};
    }
    return {mx, mn};
}

} // namespace

TEST_SUITE("classia")
{
    TEST_CASE("seed [T] over F_2 gives T, T^2, T^4, T^8")
    {
        auto F = Field::make(2);
        ClassIAPattern pat{F, {}, {P(F, "T")}, 1, 1};
        auto qs = generate_quotients(pat, 4);
        CHECK(qs[0] == P(F, "T"));
        CHECK(qs[1] == P(F, "T^2"));
        CHECK(qs[2] == P(F, "T^4"));
        CHECK(qs[3] == P(F, "T^8"));
    }

    TEST_CASE("k = 0 repeats the seed")
    {
        auto F = Field::make(3);
        ClassIAPattern pat{F, {}, {P(F, "T"), P(F, "T^2+1")}, 1, 0};
        auto qs = generate_quotients(pat, 6);
        for (std::size_t i = 0; i < 6; ++i)
            CHECK(qs[i] == pat.seed[i % 2]);
        auto rb = ratio_bounds(pat);
        CHECK(rb.limsup == 1);
        CHECK(rb.liminf == 1);
    }

    TEST_CASE("seed [T, T^3] degrees 1, 3, 2, 6, 4, 12")
    {
        auto F = Field::make(2);
        ClassIAPattern pat{F, {}, {P(F, "T"), P(F, "T^3")}, 1, 1};
        auto d = generate_degrees(pat, 6);
        std::vector<long> want{1, 3, 2, 6, 4, 12};
        for (std::size_t i = 0; i < 6; ++i)
            CHECK(d[i] == want[i]);
    }

    TEST_CASE("generated quotients follow the twisted rule")
    {
        std::mt19937_64 rng(61);
        for (long p : {2L, 3L, 5L}) {
            auto f = Field::make(static_cast<std::uint32_t>(p));
            for (int trial = 0; trial < 30; ++trial) {
                std::vector<oracle::Vec> pre, seed;
                std::size_t t = rng() % 3, s = 1 + rng() % 3;
                for (std::size_t i = 0; i < t + s; ++i) {
                    oracle::Vec v;
                    do
                        v = oracle::random_poly(rng, p, 3);
                    while (oracle::deg(v) < (i == 0 && t > 0 ? 0 : 1));
                    (i < t ? pre : seed).push_back(v);
                }
                long unit = 1 + static_cast<long>(rng() % static_cast<unsigned long>(p - 1));
                unsigned k = static_cast<unsigned>(rng() % 3);
                ClassIAPattern pat{f, {}, {}, static_cast<std::uint32_t>(unit), k};
                for (auto& v : pre)
                    pat.preperiod.push_back(Poly(f, Coeffs(v.begin(), v.end())));
                for (auto& v : seed)
                    pat.seed.push_back(Poly(f, Coeffs(v.begin(), v.end())));
                const std::size_t n = t + 4 * s;
                auto got = generate_quotients(pat, n);
                auto want = twisted(pre, seed, unit, p, k, n);
                REQUIRE(got.size() == n);
                auto degs = generate_degrees(pat, n);
                for (std::size_t i = 0; i < n; ++i) {
                    CHECK(to_vec(got[i]) == want[i]);
                    CHECK(degs[i] == oracle::deg(want[i]));
                }
                ClassIASource src(pat);
                CHECK(*src.quotient(n - 1) == got[n - 1]);
            }
        }
    }

    TEST_CASE("invalid patterns are rejected")
    {
        auto F = Field::make(2);
        CHECK_THROWS_AS((ClassIAPattern{F, {}, {}, 1, 1}.validate()), PreconditionViolated);
        CHECK_THROWS_AS((ClassIAPattern{F, {}, {P(F, "1")}, 1, 1}.validate()), PreconditionViolated);
        CHECK_THROWS_AS((ClassIAPattern{F, {}, {P(F, "T")}, 0, 1}.validate()), PreconditionViolated);
        CHECK_THROWS_AS((ClassIAPattern{F, {P(F, "0"), P(F, "1")}, {P(F, "T")}, 1, 1}.validate()), PreconditionViolated);
        CHECK_NOTHROW((ClassIAPattern{F, {P(F, "0"), P(F, "T")}, {P(F, "T")}, 1, 1}.validate()));
    }

    TEST_CASE("ratio bounds for seed degrees (1, 3)")
    {
        auto rb = ratio_bounds({1, 3}, Integer(2));
        REQUIRE(rb.r.size() == 2);
        CHECK(rb.r[0] == make_rational(1, 4));
        CHECK(rb.r[1] == make_rational(3, 5));
        CHECK(rb.limsup == make_rational(8, 5));
        CHECK(rb.liminf == make_rational(5, 4));
        auto one = ratio_bounds({1}, Integer(2));
        CHECK(one.r[0] == 1);
        CHECK(one.limsup == 2);
        CHECK(one.liminf == 2);
    }

    TEST_CASE("ratio bounds are the limits of the empirical extrema")
    {
        std::mt19937_64 rng(67);
        for (int trial = 0; trial < 60; ++trial) {
            unsigned long p = trial % 2 ? 2 : 3;
            std::size_t s = 1 + rng() % 4;
            std::vector<std::int64_t> d(s);
            for (auto& x : d)
                x = 1 + static_cast<std::int64_t>(rng() % 5);
            auto rb = ratio_bounds(d, Integer(p));
            CHECK(rb.liminf <= rb.limsup);
            for (auto& r : rb.r)
                CHECK(r > 0);
            // Independent: simulate degrees with a long run and compare the
            // late extrema to the bounds.
            std::vector<long> deg_a{0};
            std::vector<long> b(d.begin(), d.end());
            while (b.size() < 24 * s)
                b.push_back(b[b.size() - s] * static_cast<long>(p));
            deg_a.insert(deg_a.end(), b.begin(), b.end());
            auto [mx, mn] = ratio_extrema(deg_a, deg_a.size() - 2 * s - 1, deg_a.size() - 1);
            double hi = static_cast<double>(mx.first) / static_cast<double>(mx.second);
            double lo = static_cast<double>(mn.first) / static_cast<double>(mn.second);
            CHECK(std::abs(hi - to_double(rb.limsup)) < 1e-3);
            CHECK(std::abs(lo - to_double(rb.liminf)) < 1e-3);
        }
    }

    TEST_CASE("balanced preperiod makes the extrema exact")
    {
        auto F = Field::make(2);
        ClassIAPattern pat{F, {P(F, "0"), P(F, "T^4")}, {P(F, "T"), P(F, "T^3")}, 1, 1};
        CHECK(*balancing_degree(pat) == 4);
        auto e = empirical_ratios(pat, 50);
        CHECK(e.max == make_rational(8, 5));
        CHECK(e.min == make_rational(5, 4));
        CHECK(e.skipped == 4);
        // Independent recount over the same window.
        auto all = generate_degrees(pat, 50);
        std::vector<long> dl;
        for (auto& x : all)
            dl.push_back(x.get_si());
        auto [mx, mn] = ratio_extrema(dl, 1, dl.size() - 1);
        CHECK(make_rational(mx.first, mx.second) == make_rational(8, 5));
        CHECK(make_rational(mn.first, mn.second) == make_rational(5, 4));
    }

    TEST_CASE("empirical ratios of xi_a approach 2")
    {
        auto F = Field::make(2);
        ClassIAPattern pat{F, {}, {P(F, "T")}, 1, 1};
        CHECK(balancing_degree(pat).value() == 1);
        auto e = empirical_ratios(pat, 30);
        // (2^{n+2} - 2) / (2^{n+1} - 2) decreases to 2.
        CHECK(e.max == make_rational(7, 3));
        CHECK(e.min == e.ratios.back());
        CHECK(e.min > 2);
        CHECK(std::abs(to_double(e.min) - 2.0) < 1e-3);
    }

    TEST_CASE("Newton polygon criterion")
    {
        CHECK(newton_irreducible({3, 1}, 2));
        CHECK(newton_irreducible({1, 5, 5, 3}, 4));
        CHECK_THROWS_AS(newton_irreducible({1, 1, 1, 2}, 4), PreconditionViolated);
        CHECK_THROWS_AS(newton_irreducible({1, 0}, 2), PreconditionViolated);
        CHECK_FALSE(newton_irreducible({0, 1}, 2));
        CHECK(newton_irreducible({VAL_INFINITE, 1}, 2));
        CHECK_FALSE(newton_irreducible({0, 5, 1}, 3));
        // Random agreement with cross-multiplication.
        std::mt19937_64 rng(71);
        for (int trial = 0; trial < 500; ++trial) {
            std::int64_t m = 2 + static_cast<std::int64_t>(rng() % 6);
            std::vector<std::int64_t> v(static_cast<std::size_t>(m));
            for (auto& x : v)
                x = static_cast<std::int64_t>(rng() % 12);
            v.back() = 1 + static_cast<std::int64_t>(rng() % 11);
            if (std::gcd(v.back(), m) != 1) {
                CHECK_THROWS_AS(newton_irreducible(v, m), PreconditionViolated);
                continue;
            }
            bool want = true;
            for (std::int64_t i = 1; i < m; ++i)
                want = want && v[static_cast<std::size_t>(i - 1)] * m > v.back() * i;
            CHECK(newton_irreducible(v, m) == want);
        }
    }

    TEST_CASE("degree certificate for xi_a")
    {
        auto F = Field::make(2);
        ClassIAPattern pat{F, {}, {P(F, "T")}, 1, 1};
        auto cert = degree_certificate(pat, 1 << 16);
        CHECK(cert.degree == 3);
        CHECK(cert.newton);
        for (const auto& c : cert.checks) {
            CHECK(c.ok);
            CHECK(c.expected == c.computed);
        }
        CHECK(cert.relation.degree() == 3);
        CHECK(cert.residual_precision >= 2 * cert.precision);
        CHECK_THROWS_AS(degree_certificate(pat, certificate_precision(pat) - 1), InsufficientPrecision);
    }

    TEST_CASE("certificate needs gcd(deg b_s, p) = 1")
    {
        auto F = Field::make(2);
        ClassIAPattern pat{F, {}, {P(F, "T"), P(F, "T^2")}, 1, 1};
        CHECK_THROWS_AS(degree_certificate(pat, 1 << 16), PreconditionViolated);
    }

    TEST_CASE("degree certificate for the mainalg pattern at d = 1, w = 3")
    {
        auto F = Field::make(2);
        auto s = seq_search(1, Rational(3), 2, 1).at(0);
        auto built = build_mainalg(F, s, 1, Rational(3));
        auto cert = degree_certificate(built.pattern, 1 << 20);
        CHECK(cert.degree == 5);
        for (const auto& c : cert.checks)
            CHECK(c.ok);
    }

    TEST_CASE("certificate valuations match the closed form on random patterns")
    {
        std::mt19937_64 rng(73);
        int certified = 0;
        for (unsigned long p : {2UL, 3UL}) {
            auto f = Field::make(static_cast<std::uint32_t>(p));
            for (int trial = 0; trial < 12; ++trial) {
                std::size_t s = 1 + rng() % 3;
                ClassIAPattern pat{f, {}, {}, static_cast<std::uint32_t>(1 + rng() % (p - 1)), 1};
                for (std::size_t i = 0; i < s; ++i) {
                    oracle::Vec v;
                    do
                        v = oracle::random_poly(rng, static_cast<long>(p), 3);
                    while (oracle::deg(v) < 1 ||
                           (i + 1 == s && oracle::deg(v) % static_cast<long>(p) == 0));
                    pat.seed.push_back(Poly(f, Coeffs(v.begin(), v.end())));
                }
                auto cert = degree_certificate(pat, 1 << 20);
                CHECK(cert.degree == static_cast<long>(p + 1));
                // v(c_i) = (p - i + 1) d_1 + 2 (d_2 + ... + d_s) for i < p, v(c_p) = d_s.
                auto d = pat.seed_degrees();
                long tail = 0;
                for (std::size_t i = 1; i < d.size(); ++i)
                    tail += 2 * d[i];
                REQUIRE(cert.checks.size() == p);
                for (std::size_t i = 1; i <= p; ++i) {
                    long want = i < p ? static_cast<long>(p - i + 1) * d[0] + tail : d.back();
                    CHECK(cert.checks[i - 1].expected == want);
                    CHECK(cert.checks[i - 1].computed == want);
                }
                ++certified;
            }
        }
        CHECK(certified == 24);
    }
}

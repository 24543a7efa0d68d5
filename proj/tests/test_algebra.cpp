#include "oracle.hpp"

#include "lcf/error.hpp"
#include "lcf/field.hpp"
#include "lcf/poly.hpp"

#include <doctest.h>

#include <random>

using namespace lcf;

namespace {

Poly from_vec(const FieldPtr& f, const oracle::Vec& v)
{
    Coeffs c;
    for (long x : v)
        c.push_back(static_cast<std::uint32_t>(x));
    return Poly(f, c);
}

oracle::Vec to_vec(const Poly& p)
{
    oracle::Vec v;
    for (auto c : p.coeffs())
        v.push_back(c);
    return v;
}

} // namespace

TEST_SUITE("algebra")
{
    TEST_CASE("F_4 multiplication table and inverse of x")
    {
        auto F4 = Field::make(2, std::vector<std::uint32_t>{1, 1, 1});
        // Codes: 0, 1, x = 2, x + 1 = 3. Table from x^2 = x + 1.
        const std::uint32_t table[4][4] = {{0, 0, 0, 0}, {0, 1, 2, 3}, {0, 2, 3, 1}, {0, 3, 1, 2}};
        for (std::uint32_t a = 0; a < 4; ++a)
            for (std::uint32_t b = 0; b < 4; ++b)
                CHECK(F4->mul(a, b) == table[a][b]);
        CHECK(F4->inv(2) == 3);
        CHECK_THROWS_AS(F4->inv(0), DivisionByZero);
    }

    TEST_CASE("characteristic two and Frobenius fixes the prime field")
    {
        auto F2 = Field::make(2);
        CHECK(F2->add(1, 1) == 0);
        auto F9 = Field::make(3, 2);
        CHECK(F9->frobenius(1) == 1);
        for (std::uint32_t a = 0; a < 9; ++a) {
            CHECK(F9->frobenius(a, 2) == a);
            for (std::uint32_t b = 0; b < 9; ++b) {
                CHECK(F9->frobenius(F9->mul(a, b)) == F9->mul(F9->frobenius(a), F9->frobenius(b)));
                CHECK(F9->frobenius(F9->add(a, b)) == F9->add(F9->frobenius(a), F9->frobenius(b)));
            }
        }
    }

    TEST_CASE("field axioms in F_25 and F_8")
    {
        for (auto f : {Field::make(5, 2), Field::make(2, 3)}) {
            const std::uint32_t q = f->q();
            for (std::uint32_t a = 0; a < q; ++a) {
                CHECK(f->add(a, f->neg(a)) == 0);
                if (a)
                    CHECK(f->mul(a, f->inv(a)) == 1);
                for (std::uint32_t b = 0; b < q; ++b) {
                    CHECK(f->mul(a, b) == f->mul(b, a));
                    for (std::uint32_t c = 0; c < q; c += 3)
                        CHECK(f->mul(a, f->add(b, c)) == f->add(f->mul(a, b), f->mul(a, c)));
                }
            }
        }
    }

    TEST_CASE("reducible modulus is rejected")
    {
        // x^2 + 1 = (x + 1)^2 over F_2.
        CHECK_THROWS(Field::make(2, std::vector<std::uint32_t>{1, 0, 1}));
        CHECK_THROWS(Field::make(4));
    }

    TEST_CASE("element text round-trip")
    {
        auto f = Field::make(3, 3);
        for (std::uint32_t a = 0; a < f->q(); ++a)
            CHECK(f->parse(f->format(a)) == a);
    }

    TEST_CASE("polynomial examples over F_2")
    {
        auto F2 = Field::make(2);
        Poly t1 = Poly::parse(F2, "T+1");
        CHECK(t1 * t1 == Poly::parse(F2, "T^2+1"));
        auto [q, r] = divmod(Poly::parse(F2, "T^3+T"), t1);
        CHECK(q == Poly::parse(F2, "T^2+T"));
        CHECK(r.is_zero());
        CHECK(q * t1 + r == Poly::parse(F2, "T^3+T"));
        Poly f = Poly::parse(F2, "T^2+T");
        CHECK(gcd(f, Poly(F2)) == f.monic());
        CHECK(Poly(F2).degree() == NEG_INF);
        CHECK_THROWS_AS(divmod(f, Poly(F2)), DivisionByZero);
    }

    TEST_CASE("mixed fields are refused")
    {
        auto a = Poly::parse(Field::make(2), "T");
        auto b = Poly::parse(Field::make(3), "T");
        CHECK_THROWS_AS(a + b, SpecMismatch);
    }

    TEST_CASE("random products and divisions agree with schoolbook reference")
    {
        std::mt19937_64 rng(20240611);
        for (long p : {2L, 3L, 7L}) {
            auto f = Field::make(static_cast<std::uint32_t>(p));
            for (int trial = 0; trial < 200; ++trial) {
                auto a = oracle::random_poly(rng, p, 16);
                auto b = oracle::random_poly(rng, p, 16);
                auto c = oracle::random_poly(rng, p, 16);
                Poly A = from_vec(f, a), B = from_vec(f, b), C = from_vec(f, c);
                CHECK(to_vec(A * B) == oracle::mul(a, b, p));
                CHECK((A * B) * C == A * (B * C));
                if (!b.empty()) {
                    auto [q, r] = divmod(A, B);
                    auto [oq, orr] = oracle::divmod(a, b, p);
                    CHECK(to_vec(q) == oq);
                    CHECK(to_vec(r) == orr);
                    CHECK(q * B + r == A);
                    CHECK(r.degree() < B.degree());
                }
            }
        }
    }

    TEST_CASE("multiplication kernels agree on large inputs")
    {
        std::mt19937_64 rng(7);
        for (long p : {2L, 5L, 65521L}) {
            auto f = Field::make(static_cast<std::uint32_t>(p));
            for (int deg : {40, 700, 3000}) {
                std::uniform_int_distribution<long> cd(0, p - 1);
                Coeffs a(static_cast<std::size_t>(deg) + 1), b(static_cast<std::size_t>(deg) / 2 + 1);
                for (auto& x : a)
                    x = static_cast<std::uint32_t>(cd(rng));
                for (auto& x : b)
                    x = static_cast<std::uint32_t>(cd(rng));
                auto s = kernel::mul_schoolbook(*f, a, b);
                kernel::normalize(s);
                auto k = kernel::mul_karatsuba(*f, a, b);
                kernel::normalize(k);
                auto g = kernel::mul_kronecker(*f, a, b);
                kernel::normalize(g);
                CHECK(s == k);
                CHECK(s == g);
            }
        }
    }

    TEST_CASE("gcd is monic and divides both inputs")
    {
        std::mt19937_64 rng(99);
        auto f = Field::make(5);
        for (int trial = 0; trial < 100; ++trial) {
            auto common = oracle::random_poly(rng, 5, 4, true);
            Poly C = from_vec(f, common);
            Poly A = from_vec(f, oracle::random_poly(rng, 5, 8)) * C;
            Poly B = from_vec(f, oracle::random_poly(rng, 5, 8)) * C;
            Poly g = gcd(A, B);
            if (A.is_zero() && B.is_zero())
                continue;
            CHECK(g.lead() == 1);
            CHECK((A % g).is_zero());
            CHECK((B % g).is_zero());
            if (!C.is_zero() && !(A.is_zero() || B.is_zero()))
                CHECK((g % C).is_zero());
            auto x = xgcd(A, B);
            CHECK(x.s * A + x.t * B == x.g);
        }
    }

    TEST_CASE("Frobenius power is a ring homomorphism and scales degrees")
    {
        std::mt19937_64 rng(3);
        for (auto f : {Field::make(2), Field::make(3), Field::make(2, 2)}) {
            for (int trial = 0; trial < 40; ++trial) {
                Coeffs a, b;
                std::uniform_int_distribution<std::uint32_t> cd(0, f->q() - 1);
                for (int i = 0; i < 7; ++i) {
                    a.push_back(cd(rng));
                    b.push_back(cd(rng));
                }
                Poly A(f, a), B(f, b);
                for (unsigned k = 0; k <= 3; ++k) {
                    CHECK((A * B).frobenius_pow(k) == A.frobenius_pow(k) * B.frobenius_pow(k));
                    CHECK((A + B).frobenius_pow(k) == A.frobenius_pow(k) + B.frobenius_pow(k));
                    if (!A.is_zero()) {
                        std::int64_t pk = 1;
                        for (unsigned i = 0; i < k; ++i)
                            pk *= f->p();
                        CHECK(A.frobenius_pow(k).degree() == pk * A.degree());
                    }
                }
                // f^p by repeated multiplication.
                Poly pw = Poly::constant(f, 1);
                for (std::uint32_t i = 0; i < f->p(); ++i)
                    pw *= A;
                CHECK(pw == A.frobenius_pow(1));
            }
        }
    }

    TEST_CASE("polynomial text round-trip")
    {
        std::mt19937_64 rng(11);
        for (auto f : {Field::make(2), Field::make(7), Field::make(3, 2)}) {
            for (int trial = 0; trial < 50; ++trial) {
                Coeffs a;
                std::uniform_int_distribution<std::uint32_t> cd(0, f->q() - 1);
                for (int i = 0; i < 9; ++i)
                    a.push_back(cd(rng));
                Poly A(f, a);
                CHECK(Poly::parse(f, A.to_string()) == A);
            }
        }
    }
}

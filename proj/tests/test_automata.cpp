#include "oracle.hpp"

#include "lcf/automata.hpp"
#include "lcf/constructions.hpp"
#include "lcf/error.hpp"

#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

using namespace lcf;

namespace {

std::string data(const char* name) { return std::string(LCF_DATA_DIR) + "/" + name; }

// Digit-by-digit interpreter on the raw table, most significant digit first.
std::uint32_t interpret(const std::vector<std::vector<std::size_t>>& delta, const std::vector<std::uint32_t>& tau,
                        std::size_t init, unsigned k, std::uint64_t n)
{
    std::vector<unsigned> digits;
    do {
        digits.push_back(static_cast<unsigned>(n % k));
        n /= k;
    } while (n);
    std::size_t s = init;
    for (auto it = digits.rbegin(); it != digits.rend(); ++it)
        s = delta[s][*it];
    return tau[s];
}

int rudin_shapiro(std::uint64_t n)
{
    int c = 0;
    while (n) {
        if ((n & 3) == 3)
            c ^= 1;
        n >>= 1;
    }
    return c;
}

std::vector<std::vector<std::size_t>> table(const Automaton& a)
{
    std::vector<std::vector<std::size_t>> t(a.states(), std::vector<std::size_t>(a.base()));
    for (std::size_t s = 0; s < a.states(); ++s)
        for (unsigned d = 0; d < a.base(); ++d)
            t[s][d] = a.next(s, d);
    return t;
}

std::vector<std::uint32_t> outputs(const Automaton& a)
{
    std::vector<std::uint32_t> t(a.states());
    for (std::size_t s = 0; s < a.states(); ++s)
        t[s] = a.output(s);
    return t;
}

} // namespace

TEST_SUITE("automata")
{
    TEST_CASE("fixtures agree with closed forms below 10^4")
    {
        auto F = Field::make(2);
        auto tm = Automaton::load(F, data("thue_morse.aut"));
        auto pw = Automaton::load(F, data("powers_of_two.aut"));
        auto rs = Automaton::load(F, data("rudin_shapiro.json"));
        CHECK(tm.states() == 2);
        CHECK(rs.states() == 4);
        for (std::uint64_t n = 0; n < 10000; ++n) {
            CHECK(tm.run(n) == static_cast<std::uint32_t>(oracle::popcount_parity(n)));
            CHECK(pw.run(n) == (oracle::is_power_of_two(n) ? 1u : 0u));
            CHECK(rs.run(n) == static_cast<std::uint32_t>(rudin_shapiro(n)));
            for (const auto* a : {&tm, &pw, &rs})
                CHECK(a->run(n) == interpret(table(*a), outputs(*a), a->init(), a->base(), n));
        }
    }

    TEST_CASE("n = 0 reads the single digit 0")
    {
        auto F = Field::make(3);
        // Output 1 only in the state reached by a 0 from the start.
        auto a = Automaton::parse(F, "base 2\ninit s\ns 0 -> z\ns 1 -> s\nz 0 -> z\nz 1 -> z\nout s = 0\nout z = 1\n");
        CHECK(a.run(0) == 1);
        CHECK(a.run(1) == 0);
        CHECK(a.run(3) == 0);
        CHECK(a.run(2) == 1);
    }

    TEST_CASE("digits are read most significant first")
    {
        auto F = Field::make(2);
        // The output is the last digit read.
        auto a = Automaton::parse(F, "base 2\nzero 0 -> zero\nzero 1 -> one\none 0 -> zero\none 1 -> one\n"
                                     "out zero = 0\nout one = 1\n");
        CHECK(a.init() == 0);
        for (std::uint64_t n = 1; n < 64; ++n)
            CHECK(a.run(n) == (n & 1));
        // Base 3: the state remembers the last digit mod 2.
        auto b = Automaton(F, 3, {{0, 1, 0}, {0, 1, 0}}, {0, 1});
        CHECK(b.run(5) == 0); // 12 in base 3
        CHECK(b.run(7) == 1); // 21 in base 3
    }

    TEST_CASE("random automata match the interpreter")
    {
        std::mt19937_64 rng(107);
        for (int trial = 0; trial < 40; ++trial) {
            unsigned k = 2 + static_cast<unsigned>(rng() % 4);
            auto f = Field::make(trial % 2 ? 3 : 5);
            std::size_t S = 1 + rng() % 6;
            std::vector<std::vector<std::size_t>> delta(S, std::vector<std::size_t>(k));
            std::vector<std::uint32_t> tau(S);
            for (std::size_t s = 0; s < S; ++s) {
                for (auto& t : delta[s])
                    t = rng() % S;
                tau[s] = static_cast<std::uint32_t>(rng() % f->q());
            }
            std::size_t init = rng() % S;
            Automaton a(f, k, delta, tau, init);
            for (std::uint64_t n = 0; n < 2000; ++n)
                CHECK(a.run(n) == interpret(delta, tau, init, k, n));
            auto back = Automaton::parse(f, a.to_text());
            for (std::uint64_t n = 0; n < 300; ++n)
                CHECK(back.run(n) == a.run(n));
        }
    }

    TEST_CASE("reachability")
    {
        auto F = Field::make(2);
        auto a = Automaton::parse(F, "base 2\ninit a\na 0 -> a\na 1 -> a\nb 0 -> a\nb 1 -> b\nout a = 1\nout b = 0\n");
        CHECK(a.reachable() == std::vector<bool>{true, false});
    }

    TEST_CASE("series from automata")
    {
        auto F = Field::make(2);
        auto pw = Automaton::load(F, data("powers_of_two.aut"));
        auto s = series_from_automaton(pw, 64);
        auto mahler = build_gap_series(F, geometric_schedule(2)).series(64);
        CHECK(s == mahler);
        CHECK(s.val() == 1);
        auto tm = series_from_automaton(Automaton::load(F, data("thue_morse.aut")), 16);
        const std::uint32_t want[16] = {0, 1, 1, 0, 1, 0, 0, 1, 1, 0, 0, 1, 0, 1, 1, 0};
        for (std::int64_t n = 1; n < 16; ++n)
            CHECK(tm.coeff_at(n) == want[n]);
        CHECK(tm.abs_precision() == 16);
        Automaton zero(F, 2, {{0, 0}}, {0});
        auto z = series_from_automaton(zero, 20);
        CHECK(z.is_zero());
        CHECK(z.abs_precision() == 20);
        CHECK(series_from_automaton(pw, 64) == s);
    }

    TEST_CASE("Mahler relation T xi^2 + T xi + 1 = 0")
    {
        auto F = Field::make(2);
        auto xi = series_from_automaton(Automaton::load(F, data("powers_of_two.aut")), 256);
        auto r = christol_relation_search(xi, 1, 1);
        CHECK(r.depth == 1);
        CHECK(r.degree_bound == 1);
        auto P = r.as_xpoly();
        CHECK(P == XPoly(F, {Poly::parse(F, "1"), Poly::parse(F, "T"), Poly::parse(F, "T")}));
        CHECK(relation_residual(r, xi).is_zero());
        CHECK(r.verified_precision >= 2 * r.search_precision - 8);
        // Telescoping check: xi^2 + xi = 1/T to 256 digits.
        auto lhs = xi * xi + xi;
        for (std::int64_t n = 1; n < lhs.abs_precision(); ++n)
            CHECK(lhs.coeff_at(n) == (n == 1 ? 1u : 0u));
    }

    TEST_CASE("Thue-Morse and Rudin-Shapiro relations")
    {
        auto F = Field::make(2);
        auto tm = series_from_automaton(Automaton::load(F, data("thue_morse.aut")), 256);
        auto r = christol_relation_search(tm, 1, 3);
        CHECK(relation_residual(r, tm).is_zero());
        CHECK_FALSE(r.as_xpoly().is_zero());
        auto rs = series_from_automaton(Automaton::load(F, data("rudin_shapiro.json")), 512);
        auto q = christol_relation_search(rs, 2, 5);
        CHECK(relation_residual(q, rs).is_zero());
        // An independent substitution: evaluate the relation from its coefficients.
        auto x2 = rs * rs, x4 = x2 * x2;
        std::vector<LaurentSeries> pw{rs, x2, x4};
        auto acc = LaurentSeries::from_poly(q.coeffs[0], 600);
        for (std::size_t i = 1; i < q.coeffs.size(); ++i)
            acc = acc + LaurentSeries::from_poly(q.coeffs[i], 600) * pw[i - 1];
        CHECK(acc.is_zero());
    }

    TEST_CASE("no relation in random data; too little data")
    {
        auto F = Field::make(2);
        std::mt19937_64 rng(109);
        Coeffs c(300);
        for (auto& x : c)
            x = static_cast<std::uint32_t>(rng() & 1);
        c[0] = 1;
        auto x = LaurentSeries::from_coeffs(F, 1, c);
        CHECK_THROWS_AS(christol_relation_search(x, 1, 2), NotFound);
        auto short_x = LaurentSeries::from_coeffs(F, 1, Coeffs(6, 1));
        CHECK_THROWS_AS(christol_relation_search(short_x, 1, 3), InsufficientPrecision);
    }

    TEST_CASE("parse errors carry line numbers")
    {
        auto F = Field::make(2);
        auto fails = [&](const std::string& text, const std::string& needle) {
            try {
                Automaton::parse(F, text);
            } catch (const ParseError& e) {
                CHECK(std::string(e.what()).find(needle) != std::string::npos);
                return;
            }
            FAIL("expected ParseError for: " << text);
        };
        fails("a 0 -> a\n", "line 1");
        fails("base 2\na 0 -> a\na 2 -> a\n", "line 3");
        fails("base 2\na 0 -> a\nout a = 1\n", "");
        fails("base 2\n# fine\na 0 -> a\na 1 -> a\nout a = ?\n", "line 5");
        fails("base 2\na 0 -> a\na 1 -> a\nout a = 1\nfrobnicate\n", "line 5");
        fails("base 1\n", "line 1");
        CHECK_THROWS_AS(Automaton::parse_json(F, "{\"base\": 2}"), ParseError);
        CHECK_THROWS_AS(Automaton::parse_json(F, "not json"), ParseError);
        CHECK_THROWS_AS(Automaton::load(F, data("missing.aut")), ParseError);
    }

    TEST_CASE("JSON and text forms agree")
    {
        auto F = Field::make(2);
        auto tm = Automaton::load(F, data("thue_morse.aut"));
        auto js = Automaton::parse_json(
            F, R"({"base":2,"init":"even","delta":{"even":["even","odd"],"odd":["odd","even"]},"out":{"even":"0","odd":"1"}})");
        for (std::uint64_t n = 0; n < 512; ++n)
            CHECK(js.run(n) == tm.run(n));
    }
}

#include "lcf/automata.hpp"

#include "lcf/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

namespace lcf {

Automaton::Automaton(FieldPtr f, unsigned k, std::vector<std::vector<std::size_t>> delta,
                     std::vector<std::uint32_t> tau, std::size_t init, std::vector<std::string> names)
    : f_(std::move(f)), k_(k), delta_(std::move(delta)), tau_(std::move(tau)), init_(init), names_(std::move(names))
{
    if (k_ < 2)
        throw PreconditionViolated("automaton base must be >= 2");
    if (delta_.empty())
        throw PreconditionViolated("automaton has no states");
    if (tau_.size() != delta_.size())
        throw PreconditionViolated("output map does not cover every state");
    if (init_ >= delta_.size())
        throw PreconditionViolated("initial state out of range");
    for (const auto& row : delta_) {
        if (row.size() != k_)
            throw PreconditionViolated("transition function is not total");
        for (std::size_t t : row)
            if (t >= delta_.size())
                throw PreconditionViolated("transition to an unknown state");
    }
    for (std::uint32_t c : tau_)
        if (c >= f_->q())
            throw PreconditionViolated("output outside the field");
    if (names_.empty())
        for (std::size_t s = 0; s < delta_.size(); ++s)
            names_.push_back("s" + std::to_string(s));
    reachable_.assign(delta_.size(), false);
    std::vector<std::size_t> stack{init_};
    reachable_[init_] = true;
    while (!stack.empty()) {
        std::size_t s = stack.back();
        stack.pop_back();
        for (std::size_t t : delta_[s])
            if (!reachable_[t]) {
                reachable_[t] = true;
                stack.push_back(t);
            }
    }
}

namespace {

struct Builder {
    FieldPtr f;
    std::optional<unsigned> k;
    std::map<std::string, std::size_t> index;
    std::vector<std::string> names;
    std::vector<std::map<unsigned, std::size_t>> delta;
    std::vector<std::optional<std::uint32_t>> tau;
    std::optional<std::string> init;

    std::size_t state(const std::string& name)
    {
        auto it = index.find(name);
        if (it != index.end())
            return it->second;
        index[name] = names.size();
        names.push_back(name);
        delta.emplace_back();
        tau.emplace_back();
        return names.size() - 1;
    }

    Automaton finish()
    {
        if (!k)
            throw ParseError("missing 'base' line");
        if (names.empty())
            throw ParseError("no states");
        std::vector<std::vector<std::size_t>> d(names.size(), std::vector<std::size_t>(*k));
        std::vector<std::uint32_t> t(names.size());
        for (std::size_t s = 0; s < names.size(); ++s) {
            for (unsigned digit = 0; digit < *k; ++digit) {
                auto it = delta[s].find(digit);
                if (it == delta[s].end())
                    throw ParseError("state " + names[s] + " has no transition on digit " + std::to_string(digit));
                d[s][digit] = it->second;
            }
            if (!tau[s])
                throw ParseError("state " + names[s] + " has no output");
            t[s] = *tau[s];
        }
        std::size_t q0 = 0;
        if (init) {
            auto it = index.find(*init);
            if (it == index.end())
                throw ParseError("initial state " + *init + " never appears");
            q0 = it->second;
        }
        return Automaton(f, *k, std::move(d), std::move(t), q0, names);
    }
};

unsigned parse_digit(const std::string& s, unsigned k)
{
    std::size_t used = 0;
    unsigned long v = 0;
    try {
        v = std::stoul(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != s.size() || s.empty())
        throw ParseError("bad digit '" + s + "'");
    if (v >= k)
        throw ParseError("digit " + s + " out of range for base " + std::to_string(k));
    return static_cast<unsigned>(v);
}

std::uint32_t parse_element(const Field& f, const std::string& s)
{
    try {
        return f.parse(s);
    } catch (const Error& e) {
        throw ParseError("bad field element '" + s + "': " + e.what());
    }
}

} // namespace

Automaton Automaton::parse(FieldPtr f, std::istream& in)
{
    Builder b;
    b.f = f;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        std::istringstream ls(line);
        std::vector<std::string> tok;
        for (std::string t; ls >> t;)
            tok.push_back(t);
        if (tok.empty())
            continue;
        auto where = [&](const std::string& msg) { return ParseError("line " + std::to_string(lineno) + ": " + msg); };
        try {
            if (tok[0] == "base") {
                if (tok.size() != 2)
                    throw where("expected 'base k'");
                if (b.k)
                    throw where("duplicate 'base' line");
                unsigned long k = 0;
                std::size_t used = 0;
                try {
                    k = std::stoul(tok[1], &used);
                } catch (const std::exception&) {
                    used = 0;
                }
                if (used != tok[1].size() || k < 2 || k > 1u << 16)
                    throw where("base must be an integer >= 2");
                b.k = static_cast<unsigned>(k);
            } else if (tok[0] == "init") {
                if (tok.size() != 2)
                    throw where("expected 'init state'");
                b.init = tok[1];
                b.state(tok[1]);
            } else if (tok[0] == "out") {
                if (tok.size() != 4 || tok[2] != "=")
                    throw where("expected 'out state = element'");
                std::size_t s = b.state(tok[1]);
                if (b.tau[s])
                    throw where("duplicate output for state " + tok[1]);
                b.tau[s] = parse_element(*f, tok[3]);
            } else if (tok.size() == 4 && tok[2] == "->") {
                if (!b.k)
                    throw where("transition before 'base' line");
                std::size_t s = b.state(tok[0]);
                unsigned digit = parse_digit(tok[1], *b.k);
                std::size_t t = b.state(tok[3]);
                if (!b.delta[s].emplace(digit, t).second)
                    throw where("duplicate transition " + tok[0] + " " + tok[1]);
            } else {
                throw where("unrecognised line");
            }
        } catch (const ParseError& e) {
            std::string msg = e.what();
            if (msg.rfind("line ", 0) == 0)
                throw;
            throw where(msg);
        }
    }
    return b.finish();
}

Automaton Automaton::parse(FieldPtr f, const std::string& text)
{
    std::istringstream in(text);
    return parse(std::move(f), in);
}

Automaton Automaton::parse_json(FieldPtr f, const std::string& text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("automaton JSON: ") + e.what());
    }
    Builder b;
    b.f = f;
    try {
        unsigned k = j.at("base").get<unsigned>();
        if (k < 2)
            throw ParseError("base must be >= 2");
        b.k = k;
        if (j.contains("init"))
            b.init = j.at("init").get<std::string>();
        for (const auto& [name, row] : j.at("delta").items()) {
            std::size_t s = b.state(name);
            if (!row.is_array() || row.size() != k)
                throw ParseError("delta of state " + name + " needs " + std::to_string(k) + " entries");
            for (unsigned d = 0; d < k; ++d)
                b.delta[s][d] = b.state(row[d].get<std::string>());
        }
        for (const auto& [name, v] : j.at("out").items()) {
            std::size_t s = b.state(name);
            std::string e = v.is_string() ? v.get<std::string>() : std::to_string(v.get<long long>());
            b.tau[s] = parse_element(*f, e);
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("automaton JSON: ") + e.what());
    }
    return b.finish();
}

Automaton Automaton::load(FieldPtr f, const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    std::string text = ss.str();
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{')
        return parse_json(std::move(f), text);
    return parse(std::move(f), text);
}

std::uint32_t Automaton::run(std::uint64_t n) const
{
    std::vector<unsigned> digits;
    do {
        digits.push_back(static_cast<unsigned>(n % k_));
        n /= k_;
    } while (n > 0);
    std::size_t s = init_;
    for (auto it = digits.rbegin(); it != digits.rend(); ++it)
        s = delta_[s][*it];
    return tau_[s];
}

std::string Automaton::to_text() const
{
    std::ostringstream out;
    out << "base " << k_ << "\n";
    out << "init " << names_[init_] << "\n";
    for (std::size_t s = 0; s < delta_.size(); ++s)
        for (unsigned d = 0; d < k_; ++d)
            out << names_[s] << " " << d << " -> " << names_[delta_[s][d]] << "\n";
    for (std::size_t s = 0; s < delta_.size(); ++s)
        out << "out " << names_[s] << " = " << f_->format(tau_[s]) << "\n";
    return out.str();
}

LaurentSeries series_from_automaton(const Automaton& a, std::size_t N)
{
    Coeffs c(N);
    for (std::size_t n = 0; n < N; ++n)
        c[n] = a.run(n);
    while (!c.empty() && c.back() == 0)
        c.pop_back();
    if (c.empty())
        return LaurentSeries::zero(a.field(), static_cast<std::int64_t>(N));
    std::size_t first = 0;
    while (c[first] == 0)
        ++first;
    // Pad so that every coefficient below N counts as known.
    c.resize(N, 0);
    Coeffs tail(c.begin() + static_cast<std::ptrdiff_t>(first), c.end());
    return LaurentSeries::from_coeffs(a.field(), static_cast<std::int64_t>(first), std::move(tail));
}

XPoly ChristolRelation::as_xpoly() const
{
    const FieldPtr& f = coeffs.front().field();
    std::vector<Poly> c(1, coeffs[0]);
    std::uint64_t e = 1;
    for (std::size_t i = 1; i < coeffs.size(); ++i) {
        if (c.size() < e + 1)
            c.resize(e + 1, Poly(f));
        c[e] += coeffs[i];
        e *= f->p();
    }
    return XPoly(f, c);
}

namespace {

// Columns T^e and T^e xi^{p^i} sampled at exponents lo .. hi-1.
struct System {
    std::int64_t lo = 0;
    std::vector<Coeffs> columns;
};

std::uint32_t coeff_or_zero(const LaurentSeries& s, std::int64_t n)
{
    if (s.is_zero() || n < s.val())
        return 0;
    return s.coeff_at(n);
}

std::vector<LaurentSeries> frobenius_powers(const LaurentSeries& xi, unsigned D)
{
    std::vector<LaurentSeries> out{xi};
    for (unsigned i = 1; i <= D; ++i)
        out.push_back(out.back().frobenius_pow(1));
    return out;
}

System build_system(const std::vector<LaurentSeries>& pw, unsigned H, std::int64_t lo,
                    std::int64_t hi)
{
    System sys;
    sys.lo = lo;
    const std::size_t rows = static_cast<std::size_t>(hi - lo);
    for (unsigned e = 0; e <= H; ++e) {
        Coeffs col(rows, 0);
        std::int64_t n = -static_cast<std::int64_t>(e);
        if (n >= lo && n < hi)
            col[static_cast<std::size_t>(n - lo)] = 1;
        sys.columns.push_back(std::move(col));
    }
    for (const auto& s : pw)
        for (unsigned e = 0; e <= H; ++e) {
            Coeffs col(rows, 0);
            for (std::size_t r = 0; r < rows; ++r)
                col[r] = coeff_or_zero(s, lo + static_cast<std::int64_t>(r) + e);
            sys.columns.push_back(std::move(col));
        }
    return sys;
}

// Basis of the right kernel of the matrix with the given columns.
std::vector<Coeffs> null_space(const Field& F, const std::vector<Coeffs>& columns)
{
    const std::size_t ncols = columns.size();
    const std::size_t nrows = ncols ? columns[0].size() : 0;
    std::vector<Coeffs> m(nrows, Coeffs(ncols));
    for (std::size_t c = 0; c < ncols; ++c)
        for (std::size_t r = 0; r < nrows; ++r)
            m[r][c] = columns[c][r];
    std::vector<std::size_t> pivot_col;
    std::size_t row = 0;
    for (std::size_t c = 0; c < ncols && row < nrows; ++c) {
        std::size_t pr = row;
        while (pr < nrows && m[pr][c] == 0)
            ++pr;
        if (pr == nrows)
            continue;
        std::swap(m[pr], m[row]);
        const std::uint32_t inv = F.inv(m[row][c]);
        for (auto& x : m[row])
            x = F.mul(x, inv);
        for (std::size_t r = 0; r < nrows; ++r) {
            if (r == row || m[r][c] == 0)
                continue;
            const std::uint32_t factor = m[r][c];
            for (std::size_t cc = c; cc < ncols; ++cc)
                if (m[row][cc])
                    m[r][cc] = F.sub(m[r][cc], F.mul(factor, m[row][cc]));
        }
        pivot_col.push_back(c);
        ++row;
    }
    std::vector<bool> is_pivot(ncols, false);
    for (std::size_t c : pivot_col)
        is_pivot[c] = true;
    std::vector<Coeffs> basis;
    for (std::size_t free = 0; free < ncols; ++free) {
        if (is_pivot[free])
            continue;
        Coeffs v(ncols, 0);
        v[free] = 1;
        for (std::size_t r = 0; r < pivot_col.size(); ++r)
            v[pivot_col[r]] = F.neg(m[r][free]);
        basis.push_back(std::move(v));
    }
    return basis;
}

ChristolRelation relation_from(const FieldPtr& f, const Coeffs& v, unsigned D, unsigned H)
{
    ChristolRelation r;
    r.depth = D;
    r.degree_bound = H;
    for (unsigned i = 0; i <= D + 1; ++i) {
        Coeffs c(v.begin() + i * (H + 1), v.begin() + (i + 1) * (H + 1));
        r.coeffs.push_back(Poly(f, c));
    }
    return r;
}

LaurentSeries residual_with(const ChristolRelation& r, const std::vector<LaurentSeries>& pw, std::int64_t abs)
{
    LaurentSeries acc = LaurentSeries::from_poly(r.coeffs[0], abs);
    for (std::size_t i = 0; i + 1 < r.coeffs.size(); ++i) {
        const Poly& B = r.coeffs[i + 1];
        if (B.is_zero())
            continue;
        std::int64_t extra = B.degree() + 1 + std::max<std::int64_t>(0, -pw[i].val());
        acc = acc + LaurentSeries::from_poly(B, abs + extra) * pw[i];
    }
    if (acc.abs_precision() < abs)
        throw InsufficientPrecision("relation residual known only to " + std::to_string(acc.abs_precision()));
    return acc.truncate(abs);
}

} // namespace

LaurentSeries relation_residual(const ChristolRelation& r, const LaurentSeries& xi)
{
    auto pw = frobenius_powers(xi, static_cast<unsigned>(r.coeffs.size() - 2));
    std::int64_t abs = xi.abs_precision() - static_cast<std::int64_t>(r.degree_bound);
    for (const auto& s : pw)
        abs = std::min(abs, s.abs_precision() - static_cast<std::int64_t>(r.degree_bound));
    return residual_with(r, pw, abs);
}

ChristolRelation christol_relation_search(const LaurentSeries& xi, unsigned D, unsigned H)
{
    const FieldPtr& f = xi.field();
    if (xi.is_zero())
        throw PreconditionViolated("the zero series satisfies every relation");
    const auto pw_all = frobenius_powers(xi, D);
    bool unconfirmed = false;
    for (unsigned d = 0; d <= D; ++d) {
        std::vector<LaurentSeries> pw(pw_all.begin(), pw_all.begin() + d + 1);
        for (unsigned h = 0; h <= H; ++h) {
            std::int64_t lo = -static_cast<std::int64_t>(h);
            std::int64_t verify = INT64_MAX;
            for (const auto& s : pw) {
                lo = std::min(lo, s.val() - static_cast<std::int64_t>(h));
                verify = std::min(verify, s.abs_precision() - static_cast<std::int64_t>(h));
            }
            const std::int64_t unknowns = static_cast<std::int64_t>((d + 2) * (h + 1));
            const std::int64_t search = lo + (verify - lo) / 2;
            if (search - lo < unknowns + 8)
                throw InsufficientPrecision("xi is known to precision " + std::to_string(xi.abs_precision()) +
                                            "; the (D, H) = (" + std::to_string(d) + ", " + std::to_string(h) +
                                            ") system needs about " + std::to_string(2 * (unknowns + 8) + lo + h) +
                                            " coefficients");
            System sys = build_system(pw, h, lo, search);
            for (const auto& v : null_space(*f, sys.columns)) {
                ChristolRelation r = relation_from(f, v, d, h);
                if (residual_with(r, pw, verify).is_zero()) {
                    r.search_precision = search;
                    r.verified_precision = verify;
                    return r;
                }
                unconfirmed = true;
            }
        }
    }
    if (unconfirmed)
        throw InsufficientPrecision("a candidate relation did not survive substitution; more coefficients needed");
    throw NotFound("no relation with Frobenius depth <= " + std::to_string(D) + " and coefficient degree <= " +
                   std::to_string(H));
}

} // namespace lcf

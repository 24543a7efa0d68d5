#include "cli.hpp"

#include "lcf/automata.hpp"
#include "lcf/classia.hpp"
#include "lcf/constructions.hpp"
#include "lcf/contfrac.hpp"
#include "lcf/error.hpp"
#include "lcf/exponents.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace lcf::cli {

namespace {

using Json = nlohmann::ordered_json;

struct Common {
    unsigned p = 2;
    unsigned m = 1;
    std::string modulus;
    std::string out_path;
    std::string csv_path;
    bool timestamp = false;
};

struct Source {
    std::string rational;
    unsigned mahler = 0;
    std::string series;
    std::string automaton;
    std::string quadratic;
    std::int64_t prec = 0;
};

FieldPtr make_field(const Common& c)
{
    if (c.modulus.empty())
        return Field::make(c.p, c.m);
    std::vector<std::uint32_t> mod;
    std::stringstream ss(c.modulus);
    for (std::string item; std::getline(ss, item, ',');) {
        try {
            mod.push_back(static_cast<std::uint32_t>(std::stoul(item)));
        } catch (const std::exception&) {
            throw ParseError("bad modulus coefficient '" + item + "'");
        }
    }
    return Field::make(c.p, mod);
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    if (s.empty())
        return out;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, sep);)
        out.push_back(item);
    return out;
}

std::vector<Poly> parse_polys(const FieldPtr& f, const std::string& s)
{
    std::vector<Poly> out;
    for (const auto& item : split(s, ';'))
        out.push_back(Poly::parse(f, item));
    return out;
}

Rational exact(const std::string& s, const char* what)
{
    try {
        return parse_rational(s);
    } catch (const Error& e) {
        throw ParseError(std::string(what) + ": " + e.what());
    }
}

Json strings(const std::vector<Poly>& ps)
{
    Json a = Json::array();
    for (const auto& p : ps)
        a.push_back(p.to_string());
    return a;
}

Json degree_list(const std::vector<Integer>& ds)
{
    Json a = Json::array();
    for (const auto& d : ds)
        a.push_back(to_string(d));
    return a;
}

Json rationals(const std::vector<Rational>& rs)
{
    Json a = Json::array();
    for (const auto& r : rs)
        a.push_back(to_string(r));
    return a;
}

Json estimate_json(const ExponentEstimate& e)
{
    return Json{{"n", e.n},
                {"lower", to_string(e.lower)},
                {"upper", to_string(e.upper)},
                {"method", method_name(e.method)},
                {"window", Json::array({e.window_lo, e.window_hi})}};
}

Json record_json(const ApproximationRecord& r)
{
    Json j{{"j", r.j}, {"h", r.h}, {"dist", r.dist}};
    j["conj"] = r.conj ? Json(*r.conj) : Json();
    j["h_next"] = r.h_next ? Json(*r.h_next) : Json();
    return j;
}

Json verdict_json(const VerdictReport& v)
{
    Json j{{"ok", v.ok}, {"failure", v.failure}};
    j["failing_j"] = v.failing_j ? Json(*v.failing_j) : Json();
    j["window"] = Json::array({v.window_lo, v.window_hi});
    j["wstar"] = Json::array({to_string(v.wstar_lo), to_string(v.wstar_hi)});
    j["w"] = Json::array({to_string(v.w_lo), to_string(v.w_hi)});
    if (v.gap_lo && v.gap_hi)
        j["gap"] = Json::array({to_string(*v.gap_lo), to_string(*v.gap_hi)});
    j["needed_constant"] = to_string(v.needed_constant);
    return j;
}

void write_csv(const std::string& path, const std::vector<ApproximationRecord>& recs, const VerdictReport* v)
{
    if (path.empty())
        return;
    std::ofstream out(path);
    if (!out)
        throw ParseError("cannot write " + path);
    out << "j,h,dist,conj,h_next,dist_ratio,conj_ratio,tolerance\n";
    for (const auto& r : recs) {
        out << r.j << ',' << r.h << ',' << r.dist << ',';
        if (r.conj)
            out << *r.conj;
        out << ',';
        if (r.h_next)
            out << *r.h_next;
        out << ',' << to_string(make_rational(r.dist, r.h)) << ',';
        if (r.conj)
            out << to_string(make_rational(*r.conj, r.h));
        out << ',';
        if (v) {
            for (const auto& row : v->rows)
                if (row.j == r.j)
                    out << to_string(row.tolerance);
        }
        out << '\n';
    }
}

LaurentSeries source_series(const FieldPtr& f, const Source& s)
{
    int given = !s.rational.empty() + (s.mahler != 0) + !s.series.empty() + !s.automaton.empty() + !s.quadratic.empty();
    if (given != 1)
        throw ParseError("give exactly one of --rational, --mahler, --series, --automaton, --quadratic");
    if (!s.series.empty())
        return LaurentSeries::parse(f, s.series);
    if (s.prec <= 0)
        throw InsufficientPrecision("this source needs --prec");
    if (!s.rational.empty()) {
        auto parts = split(s.rational, ',');
        if (parts.size() != 2)
            throw ParseError("--rational expects 'num,den'");
        Poly num = Poly::parse(f, parts[0]), den = Poly::parse(f, parts[1]);
        if (den.is_zero())
            throw DivisionByZero("zero denominator");
        if (num.is_zero())
            return LaurentSeries::zero(f, s.prec);
        return LaurentSeries::from_rational(num, den, s.prec - (den.degree() - num.degree()));
    }
    if (s.mahler)
        return build_gap_series(f, geometric_schedule(s.mahler)).series(s.prec);
    if (!s.automaton.empty())
        return series_from_automaton(Automaton::load(f, s.automaton), static_cast<std::size_t>(s.prec));
    auto parts = split(s.quadratic, '|');
    if (parts.size() != 2)
        throw ParseError("--quadratic expects 'pre|period' with ';'-separated quotients");
    return quadratic_value(parse_polys(f, parts[0]), parse_polys(f, parts[1])).root(s.prec);
}

std::vector<Poly> euclid(const Poly& num, const Poly& den, std::size_t N)
{
    std::vector<Poly> out;
    Poly a = num, b = den;
    while (!b.is_zero() && out.size() < N) {
        auto [q, r] = divmod(a, b);
        out.push_back(q);
        a = b;
        b = r;
    }
    return out;
}

CFExpansion source_expansion(const FieldPtr& f, const Source& s, std::size_t N)
{
    if (!s.rational.empty() && s.prec <= 0) {
        auto parts = split(s.rational, ',');
        if (parts.size() != 2)
            throw ParseError("--rational expects 'num,den'");
        Poly num = Poly::parse(f, parts[0]), den = Poly::parse(f, parts[1]);
        if (den.is_zero())
            throw DivisionByZero("zero denominator");
        CFExpansion e;
        e.field = f;
        e.quotients = euclid(num, den, N);
        auto full = euclid(num, den, SIZE_MAX);
        e.complete = full.size() <= N;
        e.reason = e.complete ? StopReason::RationalTail : StopReason::Requested;
        return e;
    }
    if (!s.quadratic.empty() && s.prec <= 0 && s.rational.empty() && s.mahler == 0 && s.series.empty() &&
        s.automaton.empty()) {
        auto parts = split(s.quadratic, '|');
        if (parts.size() != 2)
            throw ParseError("--quadratic expects 'pre|period' with ';'-separated quotients");
        auto a = quadratic_value(parse_polys(f, parts[0]), parse_polys(f, parts[1]));
        CFExpansion e = take(a.source(), N);
        e.reason = StopReason::Requested;
        return e;
    }
    return cf_expand(source_series(f, s), N);
}

void add_source(CLI::App* app, Source& s)
{
    app->add_option("--rational", s.rational, "num,den");
    app->add_option("--mahler", s.mahler, "sum of T^{-r^n}")->check(CLI::Range(2u, 1u << 16));
    app->add_option("--series", s.series, "Laurent series text");
    app->add_option("--automaton", s.automaton, "automaton file");
    app->add_option("--quadratic", s.quadratic, "pre|period, quotients separated by ';'");
    app->add_option("--prec", s.prec, "absolute precision");
}

int exit_code(ErrorKind k)
{
    switch (k) {
    case ErrorKind::InsufficientPrecision:
        return 2;
    case ErrorKind::CertificateFailed:
    case ErrorKind::HypothesisViolated:
    case ErrorKind::SideConditionViolated:
    case ErrorKind::DegenerateQuadratic:
    case ErrorKind::InseparableQuadratic:
    case ErrorKind::SearchExhausted:
    case ErrorKind::NotFound:
    case ErrorKind::InternalInvariantViolated:
        return 3;
    default:
        return 1;
    }
}

std::string utc_now()
{
    auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::ostringstream ss;
    ss << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return ss.str();
}

Json input_of(const CLI::App* sub, const Common& c)
{
    Json in;
    in["p"] = c.p;
    in["m"] = c.m;
    if (!c.modulus.empty())
        in["modulus"] = c.modulus;
    for (const CLI::Option* o : sub->get_options()) {
        if (o->get_name() == "--help" || o->count() == 0)
            continue;
        auto res = o->results();
        std::string key = o->get_name();
        while (!key.empty() && key[0] == '-')
            key.erase(0, 1);
        if (o->get_type_size() == 0)
            in[key] = true;
        else if (res.size() == 1)
            in[key] = res[0];
        else
            in[key] = res;
    }
    return in;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Continued fractions and Diophantine exponents over F_q((1/T))", "lcf"};
    app.require_subcommand(1);
    app.fallthrough();
    Common c;
    app.add_option("-p", c.p, "field characteristic")->check(CLI::Range(2u, 65521u));
    app.add_option("-m", c.m, "extension degree")->check(CLI::Range(1u, 16u));
    app.add_option("--modulus", c.modulus, "modulus coefficients, lowest first, comma separated");
    app.add_option("-o,--out", c.out_path, "write the JSON report here instead of stdout");
    app.add_option("--csv", c.csv_path, "write record tables here");
    app.add_flag("--timestamp", c.timestamp, "add a timestamp field to the report");

    Source src;
    std::size_t N = 10;
    std::int64_t budget = 1 << 22;

    auto* expand = app.add_subcommand("expand", "continued fraction expansion");
    add_source(expand, src);
    expand->add_option("-N", N, "number of quotients");

    auto* convergents_cmd = app.add_subcommand("convergents", "convergents p_n/q_n");
    add_source(convergents_cmd, src);
    convergents_cmd->add_option("-N", N, "number of convergents");

    std::string pre, seed;
    std::uint32_t unit = 1;
    unsigned k = 1;
    bool certify = false;
    auto* classia = app.add_subcommand("classia", "twisted-periodic expansions");
    classia->add_option("--pre", pre, "preperiod quotients, ';'-separated");
    classia->add_option("--seed", seed, "seed quotients, ';'-separated")->required();
    classia->add_option("--unit", unit, "unit code in F_q");
    classia->add_option("-k", k, "Frobenius exponent");
    classia->add_option("-N", N, "quotients to generate");
    classia->add_flag("--certify", certify, "run the degree certificate");
    classia->add_option("--budget", budget, "precision budget");

    int d = 1;
    std::string w_text, eta_text = "1";
    std::size_t j_max = 1;
    std::size_t window = 2;
    auto* mainalg = app.add_subcommand("mainalg", "seq search, pattern, certificate and estimate");
    mainalg->add_option("-d", d)->required();
    mainalg->add_option("-w", w_text, "exact rational a/b")->required();
    mainalg->add_option("-j", j_max, "number of parameter sets");
    mainalg->add_option("-N", N, "quotients for the estimate");
    mainalg->add_option("--budget", budget, "precision budget");

    std::string eps_bits;
    auto* realequal = app.add_subcommand("realequal", "expansion with prescribed degree growth");
    realequal->add_option("-d", d)->required();
    realequal->add_option("-w", w_text)->required();
    realequal->add_option("-N", N, "number of quotients");
    realequal->add_option("--eps", eps_bits, "0/1 string choosing T^e + 1 for each quotient");
    realequal->add_option("--window", window, "ratios in the bracket");

    int variant = 1;
    std::string qa = "T", qb = "T+1", qc = "T^2";
    std::uint64_t cost_budget = 1ull << 24;
    auto* conti = app.add_subcommand("conti", "quadratic approximation families");
    conti->add_option("--variant", variant)->check(CLI::IsMember({1, 2}));
    conti->add_option("-d", d)->required();
    conti->add_option("-w", w_text)->required();
    conti->add_option("--eta", eta_text);
    conti->add_option("-j", j_max);
    conti->add_option("-a", qa);
    conti->add_option("-b", qb);
    conti->add_option("-c", qc);
    conti->add_option("--budget", cost_budget, "largest approximant cost to build");

    unsigned base = 3;
    std::size_t j_lo = 1;
    std::string theta_text, rho_text, delta_text, tol_text = "3";
    auto* gap = app.add_subcommand("gap", "gap series sum T^{-base^j}");
    gap->add_option("--base", base)->check(CLI::Range(2u, 1u << 16));
    gap->add_option("--from", j_lo);
    gap->add_option("-j", j_max);
    gap->add_option("--theta", theta_text);
    gap->add_option("--rho", rho_text);
    gap->add_option("--delta", delta_text);
    gap->add_option("--tolerance", tol_text);

    int n = 1, h_max = 3;
    auto* brute = app.add_subcommand("brute", "exhaustive w_n estimate");
    add_source(brute, src);
    brute->add_option("-n", n);
    brute->add_option("-H,--hmax", h_max);

    std::string aut_file;
    std::vector<unsigned> christol;
    auto* automaton = app.add_subcommand("automaton", "automatic series and relation search");
    automaton->add_option("file", aut_file)->required();
    automaton->add_option("-N", N, "coefficients to list");
    automaton->add_option("--christol", christol, "D H")->expected(2);
    automaton->add_option("--prec", src.prec, "coefficients used for the relation search");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }

    CLI::App* sub = app.get_subcommands().front();
    Json report;
    report["command"] = sub->get_name();
    report["input"] = input_of(sub, c);
    Json& res = report["result"];
    int code = 0;
    try {
        FieldPtr f = make_field(c);
        report["input"]["field"] = f->describe();
        if (sub == expand) {
            CFExpansion e = source_expansion(f, src, N);
            res["quotients"] = strings(e.quotients);
            res["complete"] = e.complete;
            res["stop"] = stop_reason_name(e.reason);
        } else if (sub == convergents_cmd) {
            CFExpansion e = source_expansion(f, src, N);
            Json rows = Json::array();
            for (const auto& cv : convergents(e))
                rows.push_back(Json{{"n", cv.index},
                                    {"p", cv.p.to_string()},
                                    {"q", cv.q.to_string()},
                                    {"deg_q", cv.q.degree()}});
            res["convergents"] = rows;
            res["complete"] = e.complete;
        } else if (sub == classia) {
            ClassIAPattern pat{f, parse_polys(f, pre), parse_polys(f, seed), unit, k};
            pat.validate();
            auto bounds = ratio_bounds(pat);
            res["quotients"] = strings(generate_quotients(pat, std::min<std::size_t>(N, 16)));
            res["degrees"] = degree_list(generate_degrees(pat, N));
            res["r"] = rationals(bounds.r);
            res["limsup"] = to_string(bounds.limsup);
            res["liminf"] = to_string(bounds.liminf);
            if (auto D = balancing_degree(pat))
                res["balancing_degree"] = to_string(*D);
            auto emp = empirical_ratios(pat, N);
            res["empirical"] = Json{{"max", to_string(emp.max)}, {"min", to_string(emp.min)},
                                    {"skipped", emp.skipped}};
            if (certify) {
                auto cert = degree_certificate(pat, budget);
                res["certificate"] = Json{{"degree", to_string(cert.degree)},
                                          {"newton", cert.newton},
                                          {"relation", cert.relation.to_string()},
                                          {"residual_precision", cert.residual_precision}};
            }
        } else if (sub == mainalg) {
            Rational w = exact(w_text, "-w");
            if (d < 1 || w <= 2 * d - 1)
                throw ParseError("mainalg needs d >= 1 and w > 2d-1");
            SeqSearch search(d, w, f->p());
            Json rows = Json::array();
            for (std::size_t j = 1; j <= j_max; ++j) {
                SeqParams s = search.next();
                MainalgBuild b = build_mainalg(f, s, d, w);
                auto cert = degree_certificate(b.pattern, budget);
                auto degs = generate_degrees(b.pattern, N + 1);
                auto est = w1_estimate(degs, std::min<std::size_t>(s.n, N - 1));
                rows.push_back(Json{{"j", s.j},
                                    {"k", s.k},
                                    {"n", s.n},
                                    {"u", to_string(s.u)},
                                    {"degrees", degree_list(b.degrees)},
                                    {"limsup", to_string(b.bounds.limsup)},
                                    {"liminf", to_string(b.bounds.liminf)},
                                    {"certified_degree", to_string(cert.degree)},
                                    {"w1", estimate_json(est)}});
            }
            res["m"] = search.m();
            res["patterns"] = rows;
        } else if (sub == realequal) {
            Rational w = exact(w_text, "-w");
            std::string bits = eps_bits;
            auto src_re = build_realequal(f, d, w, [bits](std::size_t i) {
                return i < bits.size() && bits[i] == '1';
            });
            auto degs = src_re->degrees(N + 1);
            res["degrees"] = degree_list(degs);
            Json ratios = Json::array();
            Integer prev = 0, cur = 0;
            for (std::size_t i = 1; i < degs.size(); ++i) {
                prev = cur;
                cur += degs[i];
                if (i >= 2)
                    ratios.push_back(to_string(Rational(cur, prev)));
            }
            res["deg_q_ratios"] = ratios;
            res["w1"] = estimate_json(w1_estimate(degs, window));
        } else if (sub == conti) {
            Rational w = exact(w_text, "-w");
            auto fam = variant == 1
                           ? ContiFamily::conti1(d, w, Poly::parse(f, qa), Poly::parse(f, qb))
                           : ContiFamily::conti2(d, w, exact(eta_text, "--eta"), Poly::parse(f, qa),
                                                 Poly::parse(f, qb), Poly::parse(f, qc));
            auto recs = fam->records(j_max, cost_budget);
            auto params = fam->best_params();
            auto v = evaluate_bestquad(recs, params);
            Json rj = Json::array();
            for (const auto& r : recs)
                rj.push_back(record_json(r));
            res["records"] = rj;
            res["targets"] = Json{{"dist_over_h", to_string(fam->dist_limit())},
                                  {"conj_over_h", to_string(fam->conj_limit())},
                                  {"wstar", to_string(fam->wstar_target())},
                                  {"w", to_string(fam->w_target())}};
            res["verdict"] = verdict_json(v);
            write_csv(c.csv_path, recs, &v);
            if (!v.ok)
                code = 3;
        } else if (sub == gap) {
            GapFamily g = build_gap_series(f, geometric_schedule(base));
            auto recs = g.records(j_lo, j_max);
            BestParams bp;
            bp.d = 1;
            bp.theta = theta_text.empty() ? Rational(base) : exact(theta_text, "--theta");
            bp.delta = delta_text.empty() ? Rational(base - 1) : exact(delta_text, "--delta");
            bp.rho = rho_text.empty() ? Rational(base - 1) : exact(rho_text, "--rho");
            bp.tolerance_constant = exact(tol_text, "--tolerance");
            auto v = evaluate_bestrational(recs, bp);
            Json rj = Json::array();
            for (const auto& r : recs)
                rj.push_back(record_json(r));
            res["records"] = rj;
            res["verdict"] = verdict_json(v);
            write_csv(c.csv_path, recs, &v);
            if (!v.ok)
                code = 3;
        } else if (sub == brute) {
            LaurentSeries xi = source_series(f, src);
            auto r = brute_force_wn(xi, n, h_max, xi.abs_precision() - h_max);
            res["estimate"] = estimate_json(r.estimate);
            res["enumerated"] = r.enumerated;
            res["zero_to_precision"] = r.zero_to_precision;
            res["best"] = Json{{"P", r.best.to_string()}, {"h", r.best_h}, {"dist", r.best_dist}};
        } else if (sub == automaton) {
            Automaton a = Automaton::load(f, aut_file);
            Json coeffs = Json::array();
            for (std::size_t i = 0; i < N; ++i)
                coeffs.push_back(f->format(a.run(i)));
            res["states"] = a.states();
            res["coefficients"] = coeffs;
            if (!christol.empty()) {
                std::int64_t prec = src.prec > 0 ? src.prec : 256;
                LaurentSeries xi = series_from_automaton(a, static_cast<std::size_t>(prec));
                auto rel = christol_relation_search(xi, christol[0], christol[1]);
                res["relation"] = Json{{"depth", rel.depth},
                                       {"degree_bound", rel.degree_bound},
                                       {"coefficients", strings(rel.coeffs)},
                                       {"polynomial", rel.as_xpoly().to_string()},
                                       {"search_precision", rel.search_precision},
                                       {"verified_precision", rel.verified_precision}};
            }
        }
    } catch (const Error& e) {
        err << "error [" << e.kind_name() << "]: " << e.what() << "\n";
        report["error"] = Json{{"kind", e.kind_name()}, {"message", e.what()}};
        code = exit_code(e.kind());
    }
    report["exit_code"] = code;
    if (c.timestamp)
        report["timestamp"] = utc_now();
    std::string text = report.dump(2) + "\n";
    if (c.out_path.empty()) {
        out << text;
    } else {
        std::ofstream f(c.out_path);
        if (!f) {
            err << "error: cannot write " << c.out_path << "\n";
            return 1;
        }
        f << text;
    }
    return code;
}

} // namespace lcf::cli

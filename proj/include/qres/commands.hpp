#pragma once

// The quartic-resolvent subcommands as library functions: each returns a
// report or a JSON document, and the executable only parses arguments and
// maps outcomes to exit codes.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qres/checks.hpp"

namespace qres {

struct RunConfig {
    std::optional<std::uint64_t> prime;  // empty: ℚ
    std::uint64_t seed = 42;
    std::size_t trials = 50;       // random quartics
    std::size_t per_quartic = 5;   // units, witnesses or λ values per quartic
    long bound = 10;               // |coefficients| of random quartics
    int max_attempts = 64;         // Tschirnhaus attempts per quartic
    bool genericize = true;
    std::vector<std::string> suites;  // empty: all suites for the field
    std::vector<std::string> polys;   // fixed quartics replacing the random ones
    std::function<void(const std::string&)> progress;  // optional log sink
};

/// "q" or "p:<prime>".
inline std::optional<std::uint64_t> parse_field(const std::string& s)
{
    if (s == "q" || s == "Q") return std::nullopt;
    if (s.rfind("p:", 0) == 0) {
        const std::string digits = s.substr(2);
        if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; }))
            throw ParseError("bad prime in --field " + s);
        if (digits.size() > 12) throw PreconditionError("prime too large in --field " + s);
        const std::uint64_t p = std::stoull(digits);
        PrimeField check(p);  // validates odd prime
        (void)check;
        return p;
    }
    throw ParseError("--field must be q or p:<prime>, got '" + s + "'");
}

inline std::string field_label(const RunConfig& cfg)
{
    return cfg.prime ? "F_" + std::to_string(*cfg.prime) : "Q";
}

inline Json config_json(const RunConfig& cfg)
{
    Json j{{"field", field_label(cfg)},
           {"seed", cfg.seed},
           {"trials", cfg.trials},
           {"per_quartic", cfg.per_quartic},
           {"bound", cfg.bound},
           {"max_attempts", cfg.max_attempts},
           {"genericize", cfg.genericize}};
    if (!cfg.suites.empty()) j["suites"] = cfg.suites;
    if (!cfg.polys.empty()) j["polys"] = cfg.polys;
    return j;
}

inline checks::SuiteConfig suite_config(const RunConfig& cfg)
{
    checks::SuiteConfig s;
    s.seed = cfg.seed;
    s.quartics = cfg.trials;
    s.per_quartic = cfg.per_quartic;
    s.bound = cfg.bound;
    s.max_attempts = cfg.max_attempts;
    s.genericize = cfg.genericize;
    s.polys = cfg.polys;
    return s;
}

namespace detail {

class Stopwatch {
public:
    double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count(); }

private:
    std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

inline void say(const RunConfig& cfg, const std::string& msg)
{
    if (cfg.progress) cfg.progress(msg);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// module-check

inline ScenarioReport cmd_module_check(bool tampered_sigma = false)
{
    detail::Stopwatch sw;
    ScenarioReport rep{"module-check"};
    rep.inputs["tampered_sigma"] = tampered_sigma;
    gm::MapOverrides over;
    if (tampered_sigma) over["sigma"] = gm::tampered_sigma();
    checks::module_suite(over, rep);
    rep.wall_seconds = sw.seconds();
    return rep;
}

// ---------------------------------------------------------------------------
// verify

inline const std::vector<std::string>& rational_suites()
{
    static const std::vector<std::string> s{"maps", "witness", "hyperbolic", "brauer", "quat",
                                            "clif", "biquadratic", "fixed"};
    return s;
}

inline const std::vector<std::string>& prime_suites()
{
    static const std::vector<std::string> s{"maps", "witness", "exhaustive"};
    return s;
}

/// Largest p for which `verify --field p:<p>` enumerates every unit.
inline constexpr std::uint64_t kExhaustivePrimeLimit = 7;

namespace detail {

inline std::set<std::string> selected_suites(const RunConfig& cfg)
{
    const auto& known = cfg.prime ? prime_suites() : rational_suites();
    if (cfg.suites.empty()) return {known.begin(), known.end()};
    std::set<std::string> out;
    for (const auto& s : cfg.suites) {
        if (std::find(known.begin(), known.end(), s) == known.end())
            throw PreconditionError("unknown suite '" + s + "' for field " + field_label(cfg));
        out.insert(s);
    }
    return out;
}

template <class Field>
void run_campaign(const Field& fld, const RunConfig& cfg, const std::set<std::string>& suites, ScenarioReport& rep)
{
    using F = typename Field::element_type;
    const auto sc = suite_config(cfg);
    const bool any = suites.count("maps") || suites.count("witness") || suites.count("hyperbolic") ||
                     suites.count("brauer") || suites.count("quat") || suites.count("clif");
    if (!any) return;
    const auto quartics = checks::campaign_quartics(sc, fld);
    for (std::size_t i = 0; i < quartics.size(); ++i) {
        say(cfg, "quartic " + std::to_string(i + 1) + "/" + std::to_string(quartics.size()) + ": " +
                     quartics[i].to_string());
        const auto rd = checks::build_instance(quartics[i], i, sc, rep);
        if (!rd) continue;
        auto stream = [&](const char* name) { return checks::trial_rng(sc.seed, name, i); };
        if (suites.count("maps")) {
            Rng rng = stream("maps");
            checks::map_suite(*rd, rng, sc, rep);
        }
        if (suites.count("witness")) {
            Rng rng = stream("witness");
            checks::witness_suite(*rd, rng, sc, rep);
        }
        if constexpr (std::is_same_v<F, Rational>) {
            if (suites.count("hyperbolic")) checks::hyperbolic_suite(*rd, rep);
            if (suites.count("brauer")) {
                Rng rng = stream("brauer");
                checks::brauer_suite(*rd, rng, sc, rep);
            }
            if (suites.count("quat")) {
                Rng rng = stream("quat");
                checks::quat_suite(*rd, rng, sc, rep);
            }
            if (suites.count("clif")) {
                Rng rng = stream("clif");
                checks::clif_suite(*rd, rng, sc, rep);
            }
        }
    }
}

}  // namespace detail

/// Biquadratic representative: x⁴ − 10x² + 1, with roots ±√2 ± √3.
inline const char* kBiquadraticQuartic = "x^4-10x^2+1";

inline ScenarioReport cmd_verify(const RunConfig& cfg)
{
    detail::Stopwatch sw;
    ScenarioReport rep{"verify"};
    rep.inputs = config_json(cfg);
    product_formula_stats().reset();
    const auto suites = detail::selected_suites(cfg);
    if (cfg.prime) {
        const PrimeField fld(*cfg.prime);
        detail::run_campaign(fld, cfg, suites, rep);
        if (suites.count("exhaustive")) {
            if (*cfg.prime <= kExhaustivePrimeLimit) {
                detail::say(cfg, "exhaustive enumeration over " + field_label(cfg));
                checks::exhaustive_suite(*cfg.prime, rep);
            } else {
                rep.inputs["exhaustive"] = "skipped: p > " + std::to_string(kExhaustivePrimeLimit);
            }
        }
        rep.inputs["brauer"] = "not run: Br of a finite field is trivial";
    } else {
        const RationalField QQ;
        detail::run_campaign(QQ, cfg, suites, rep);
        if (suites.count("fixed")) checks::fixed_example_suite(rep);
        if (suites.count("biquadratic")) {
            const auto rd = RationalResolvent::build(parse_poly(kBiquadraticQuartic, QQ), {.seed = cfg.seed});
            checks::biquadratic_suite(rd, cfg.seed, 20, 10, 100, rep);
        }
        rep.assertions.push_back(checks::product_formula_assertion());
    }
    rep.wall_seconds = sw.seconds();
    return rep;
}

// ---------------------------------------------------------------------------
// scenario

struct ScenarioSpec {
    std::string name;
    std::string quartic;
    std::vector<int> L_components, S_components, C_components;
};

/// Representatives of the four worked example families.
inline const std::vector<ScenarioSpec>& scenario_specs()
{
    static const std::vector<ScenarioSpec> s{
        // L = ℚ(√2, √3): C = k × k × k, S = L₁ × L₂ × L₃
        {"biquadratic", kBiquadraticQuartic, {4}, {2, 2, 2}, {1, 1, 1}},
        // cyclic quartic field, Galois group ℤ/4, with quadratic subfield ℚ(√2)
        {"cyclic", "x^4-4x^2+2", {4}, {2, 4}, {1, 2}},
        // L = ℚ(2^{1/4}) ⊃ ℚ(√2), Galois closure of degree 8, disc class −2: S = K × Ľ
        {"two_extension", "x^4-2", {4}, {2, 4}, {1, 2}},
        // L = ℚ(√2) × ℚ(√3): C = k × M, S = (k × k) × M'
        {"product", "x^4-5x^2+6", {2, 2}, {1, 1, 4}, {1, 2}},
    };
    return s;
}

inline ScenarioReport cmd_scenario(const std::string& name, const RunConfig& cfg)
{
    detail::Stopwatch sw;
    const auto& specs = scenario_specs();
    const auto it = std::find_if(specs.begin(), specs.end(), [&](const ScenarioSpec& s) { return s.name == name; });
    if (it == specs.end()) throw PreconditionError("unknown scenario '" + name + "'");
    product_formula_stats().reset();
    if (cfg.prime) throw PreconditionError("scenarios are defined over Q");
    const RationalField QQ;
    ScenarioReport rep{"scenario." + name};
    const auto P = parse_poly(it->quartic, QQ);
    rep.inputs = Json{{"P", poly_json(P)}, {"seed", cfg.seed}, {"per_quartic", cfg.per_quartic}};

    auto sc = suite_config(cfg);
    sc.polys = {it->quartic};
    const auto rd = checks::build_instance(P, 0, sc, rep);
    if (!rd) {
        rep.wall_seconds = sw.seconds();
        return rep;
    }
    rep.inputs["substitution"] = poly_json(rd->substitution().forward);
    rep.inputs["generic_P"] = poly_json(rd->quartic());

    auto& fp = checks::assertion(rep, "fingerprint.components", "component degrees of L, S and C");
    const Json seen{{"L", rd->L().component_degrees()}, {"S", rd->S().component_degrees()},
                    {"C", rd->C().component_degrees()}};
    fp.record(rd->L().component_degrees() == it->L_components && rd->S().component_degrees() == it->S_components &&
                  rd->C().component_degrees() == it->C_components,
              [&] {
                  return Json{{"expected", {{"L", it->L_components}, {"S", it->S_components}, {"C", it->C_components}}},
                              {"computed", seen}};
              });
    fp.detail["components"] = seen;
    auto& dc = checks::assertion(rep, "fingerprint.discriminant", "disc(C) = disc(L) as square classes");
    const auto dl = rd->L().disc_square_class(), dcl = rd->C().disc_square_class();
    dc.record(dl == dcl, [&] { return Json{{"disc_L", dl.to_string()}, {"disc_C", dcl.to_string()}}; });
    dc.detail["disc_L"] = dl.to_string();
    auto& fs = checks::assertion(rep, "fingerprint.substitution",
                                 "L and its Tschirnhaus substitute agree on dimension, components, discriminant "
                                 "and splitting patterns at 20 good primes");
    const bool agree = compare_fingerprints(rd->original_L(), rd->L(), cfg.seed) == FingerprintMatch::Agree;
    fs.record(agree, [&] {
        return Json{{"P", poly_json(P)}, {"generic_P", poly_json(rd->quartic())}, {"match", "inconclusive"}};
    });

    Rng rng = checks::trial_rng(cfg.seed, "scenario." + name, 0);
    checks::map_suite(*rd, rng, sc, rep);
    checks::witness_suite(*rd, rng, sc, rep);
    checks::hyperbolic_suite(*rd, rep);
    checks::brauer_suite(*rd, rng, sc, rep);
    checks::quat_suite(*rd, rng, sc, rep);

    if (name == "biquadratic") {
        checks::biquadratic_suite(*rd, cfg.seed, 20, 10, 100, rep);
    } else if (name == "two_extension") {
        // L contains the quadratic subfield K = ℚ(√2), and Δ(L) is not a square
        auto& sub = checks::assertion(rep, "two_extension.subfield",
                                      "L contains a quadratic subfield and disc(L) is not a square");
        const auto& L = rd->L();
        bool has_quadratic = false;
        for (long a = -3; a <= 3 && !has_quadratic; ++a)
            for (long b = -3; b <= 3 && !has_quadratic; ++b) {
                const auto t = L.from_monogenic(Poly<Rational>(QQ, {Rational(a), Rational(b), Rational(1)}).compose(
                    rd->substitution().back));
                const auto m = t.minpoly();
                has_quadratic = m.degree() == 2;
            }
        sub.record(has_quadratic && !(dl == Rational(1)), [&] { return Json{{"disc_L", dl.to_string()}}; });
    } else if (name == "product") {
        // S has a factor k, so every element of k× is a norm from S
        auto& surj = checks::assertion(rep, "product.norm_S_onto", "N(S/k) = k^x: t = N_{S/k}(t, 1, ..., 1)");
        const auto& S = rd->S();
        std::size_t lin = 0;
        while (S.components()[lin].degree() != 1) ++lin;
        for (int k = 0; k < 20; ++k) {
            const Rational t(draw_nonzero_scalar<Rational>(rng, QQ, 50));
            std::vector<Poly<Rational>> r;
            for (std::size_t i = 0; i < S.num_components(); ++i)
                r.push_back(Poly<Rational>::constant(i == lin ? t : Rational(1)));
            const auto s = S.from_residues(r);
            surj.record(s.norm() == t, [&] { return Json{{"t", t.to_string()}, {"s", elem_json(s)}}; });
        }
    }
    rep.assertions.push_back(checks::product_formula_assertion());
    rep.wall_seconds = sw.seconds();
    return rep;
}

// ---------------------------------------------------------------------------
// resolvent, albert, quat-scan

template <class Field>
Json resolvent_json(const std::string& text, const Field& fld, const RunConfig& cfg)
{
    using F = typename Field::element_type;
    const auto P = parse_poly(text, fld);
    const auto rd = Resolvent<F>::build(P, {.seed = cfg.seed, .max_attempts = cfg.max_attempts, .genericize = cfg.genericize});
    return Json{{"schema", "quartic-resolvent/resolvent/1"},
                {"field", field_label(cfg)},
                {"P", poly_json(P)},
                {"substitution", Json{{"identity", rd.substitution().identity},
                                      {"forward", poly_json(rd.substitution().forward)},
                                      {"back", poly_json(rd.substitution().back)}}},
                {"generic_P", poly_json(rd.quartic())},
                {"P6", poly_json(rd.P6(), "Y")},
                {"rhoC", poly_json(rd.rhoC(), "z")},
                {"rho", poly_json(rd.rho(), "X")},
                {"e1", rd.e1().to_string()},
                {"L_components", rd.L().component_degrees()},
                {"S_components", rd.S().component_degrees()},
                {"C_components", rd.C().component_degrees()},
                {"disc_L", rd.L().disc_square_class().to_string()}};
}

inline Json cmd_resolvent(const std::string& text, const RunConfig& cfg)
{
    if (cfg.prime) return resolvent_json(text, PrimeField(*cfg.prime), cfg);
    return resolvent_json(text, RationalField{}, cfg);
}

inline Json cmd_albert(const std::string& text, const std::vector<std::string>& x_coords, const RunConfig& cfg)
{
    if (cfg.prime) throw PreconditionError("albert needs --field q: Br of a finite field is trivial");
    if (x_coords.empty() || x_coords.size() > 3) throw PreconditionError("--x takes 1 to 3 coordinates in the basis 1, c, c^2");
    const RationalField QQ;
    const auto P = parse_poly(text, QQ);
    const auto rd = RationalResolvent::build(P, {.seed = cfg.seed, .max_attempts = cfg.max_attempts, .genericize = cfg.genericize});
    std::vector<Rational> c;
    for (const auto& s : x_coords) c.push_back(Rational::parse(s));
    while (c.size() < 3) c.emplace_back(0);
    const auto x = rd.C().from_coords(c);
    const QuadForm q = transfer_form(rd, x);
    Json gram = Json::array();
    for (std::size_t i = 0; i < q.dim(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < q.dim(); ++j) row.push_back(q.gram()(i, j).to_string());
        gram.push_back(row);
    }
    Json diag = Json::array();
    for (const auto& d : q.diagonal_entries()) diag.push_back(d.to_string());
    Json hasse = Json::object();
    for (const auto& [v, s] : q.hasse_map()) hasse[v] = s;
    const auto [pos, neg] = q.signature();
    return Json{{"schema", "quartic-resolvent/albert/1"},
                {"P", poly_json(P)},
                {"generic_P", poly_json(rd.quartic())},
                {"rhoC", poly_json(rd.rhoC(), "z")},
                {"x", elem_json(x)},
                {"gram", gram},
                {"diagonal", diag},
                {"disc", q.disc().get_str()},
                {"signature", Json::array({pos, neg})},
                {"hasse", hasse},
                {"clifford_ramification", brauer_json(clifford_class(q))},
                {"classification", to_string(classify_albert(q))}};
}

/// Parses "a..b".
inline std::pair<long, long> parse_range(const std::string& s)
{
    const auto dots = s.find("..");
    if (dots == std::string::npos) throw ParseError("range must look like a..b, got '" + s + "'");
    try {
        std::size_t used1 = 0, used2 = 0;
        const long a = std::stol(s.substr(0, dots), &used1);
        const long b = std::stol(s.substr(dots + 2), &used2);
        if (used1 != dots || used2 != s.size() - dots - 2) throw ParseError("bad range '" + s + "'");
        if (a > b) throw ParseError("empty range '" + s + "'");
        if (b - a > 100000) throw PreconditionError("range '" + s + "' is too long");
        return {a, b};
    } catch (const std::logic_error&) {
        throw ParseError("bad range '" + s + "'");
    }
}

/// Quaternion classes (λ, −ρ(λ)) over a λ range, with the cor_class column.
inline Json cmd_quat_scan(const std::string& text, long lo, long hi, const RunConfig& cfg)
{
    if (cfg.prime) throw PreconditionError("quat-scan needs --field q: Br of a finite field is trivial");
    const RationalField QQ;
    const auto P = parse_poly(text, QQ);
    const auto rd = RationalResolvent::build(P, {.seed = cfg.seed, .max_attempts = cfg.max_attempts, .genericize = cfg.genericize});
    Json rows = Json::array();
    std::size_t mismatches = 0;
    for (long l = lo; l <= hi; ++l) {
        const Rational lam(l);
        Json row{{"lambda", l}};
        if (l == 0) {
            row["skipped"] = "lambda = 0";
        } else if (rd.rho().eval(lam).is_zero()) {
            row["skipped"] = "lambda is a root of rho";
        } else {
            const auto q = quat_from_lambda(rd, lam);
            const auto c = cor_class(rd, lambda_element(rd, lam));
            row["rho_lambda"] = rd.rho().eval(lam).to_string();
            row["quaternion_class"] = brauer_json(q);
            row["cor_class"] = brauer_json(c);
            row["agree"] = q == c;
            mismatches += q == c ? 0 : 1;
        }
        rows.push_back(row);
    }
    return Json{{"schema", "quartic-resolvent/quat-scan/1"},
                {"P", poly_json(P)},
                {"rho", poly_json(rd.rho(), "X")},
                {"rows", rows},
                {"mismatches", mismatches},
                {"status", mismatches == 0 ? "PASS" : "FAIL"}};
}

}  // namespace qres

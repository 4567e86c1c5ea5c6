// quartic-resolvent: command-line front end.
//
// Exit codes: 0 all assertions pass, 1 assertion failures, 2 input or
// configuration errors. QRES_LOG=info prints progress to stderr.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qres/commands.hpp"

namespace {

/// QRES_LOG=info (or debug) turns on progress messages.
bool progress_enabled()
{
    const char* v = std::getenv("QRES_LOG");
    if (!v) return false;
    const std::string s(v);
    return s == "info" || s == "debug";
}

std::string error_kind(const std::exception& e)
{
    if (dynamic_cast<const qres::ParseError*>(&e)) return "parse_error";
    if (dynamic_cast<const qres::NotEtale*>(&e)) return "not_etale";
    if (dynamic_cast<const qres::NotGeneric*>(&e)) return "not_generic";
    if (dynamic_cast<const qres::GenericityExhausted*>(&e)) return "genericity_exhausted";
    if (dynamic_cast<const qres::LambdaIsRoot*>(&e)) return "lambda_is_root";
    if (dynamic_cast<const qres::DegenerateForm*>(&e)) return "degenerate_form";
    if (dynamic_cast<const qres::NotInvertible*>(&e)) return "not_invertible";
    if (dynamic_cast<const qres::PreconditionError*>(&e)) return "precondition";
    if (dynamic_cast<const qres::InvariantViolation*>(&e)) return "invariant_violation";
    if (dynamic_cast<const qres::Error*>(&e)) return "error";
    return "internal";
}

/// Errors about the input or configuration exit with 2, broken invariants with 1.
int error_exit(const std::exception& e, const std::string& format)
{
    const std::string kind = error_kind(e);
    const int code = (kind == "invariant_violation" || kind == "error" || kind == "internal") ? 1 : 2;
    if (format == "json") {
        std::cout << qres::Json{{"schema", "quartic-resolvent/error/1"},
                                {"error", {{"kind", kind}, {"message", e.what()}}},
                                {"exit_code", code}}
                         .dump(2)
                  << "\n";
    }
    std::cerr << "quartic-resolvent: " << kind << ": " << e.what() << "\n";
    return code;
}

void print_doc(const qres::Json& j, const std::string& format)
{
    if (format == "json") {
        std::cout << j.dump(2) << "\n";
        return;
    }
    for (const auto& [k, v] : j.items()) {
        if (k == "rows" && v.is_array()) {
            std::cout << "rows:\n";
            for (const auto& r : v) std::cout << "  " << r.dump() << "\n";
        } else if (v.is_object() && v.contains("text")) {
            std::cout << k << ": " << v["text"].get<std::string>() << "\n";
        } else {
            std::cout << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
        }
    }
}

int print_report(const qres::ScenarioReport& r, const std::string& format, bool timing)
{
    if (format == "json")
        std::cout << r.to_json(timing).dump(2) << "\n";
    else
        std::cout << r.to_text(timing);
    return r.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Resolvent quadratic extensions of quartic etale algebras, with exact verification suites"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string field = "q", format = "json";
    qres::RunConfig cfg;
    bool timing = false;
    app.add_option("--field", field, "Base field: q or p:<odd prime>")->capture_default_str();
    app.add_option("--seed", cfg.seed, "RNG seed; fixes every random choice")->capture_default_str();
    app.add_option("--trials", cfg.trials, "Number of random quartics")->capture_default_str()->check(CLI::Range(1, 100000));
    app.add_option("--bound", cfg.bound, "Bound on |coefficients| of random quartics")
        ->capture_default_str()
        ->check(CLI::Range(1, 1000000));
    app.add_option("--format", format, "Output format")->capture_default_str()->check(CLI::IsMember({"json", "text"}));
    app.add_flag("--timing", timing, "Include wall-clock time in JSON reports");

    auto* module_check = app.add_subcommand("module-check", "Exactness, duality and equivariance of the lattice maps");
    bool tampered = false;
    module_check->add_flag("--tampered-sigma", tampered, "Negative control: replace sigma by a broken matrix");

    auto* scenario = app.add_subcommand("scenario", "Worked example families: biquadratic, cyclic, two_extension, product");
    std::string scenario_name;
    scenario->add_option("name", scenario_name, "Scenario name")
        ->required()
        ->check(CLI::IsMember({"biquadratic", "cyclic", "two_extension", "product"}));

    auto* verify = app.add_subcommand("verify", "Randomized exact property suites over many quartics");
    bool no_genericize = false;
    verify->add_option("--suite", cfg.suites, "Restrict to suites (repeatable)");
    verify->add_option("--poly", cfg.polys, "Fixed quartic replacing the random ones (repeatable)");
    verify->add_option("--per-quartic", cfg.per_quartic, "Units, witnesses or lambda values per quartic")
        ->capture_default_str()
        ->check(CLI::Range(1, 10000));
    verify->add_option("--max-attempts", cfg.max_attempts, "Tschirnhaus attempts per quartic")
        ->capture_default_str()
        ->check(CLI::Range(1, 100000));
    verify->add_flag("--no-genericize", no_genericize, "Negative control: do not replace non-generic generators");

    auto* resolvent = app.add_subcommand("resolvent", "Build S/C for one quartic");
    std::string poly;
    resolvent->add_option("P", poly, "Quartic, e.g. \"x^4+x+1\"")->required();

    auto* albert = app.add_subcommand("albert", "Albert form of cor(S/C, x) for x in C");
    std::vector<std::string> x_coords;
    albert->add_option("P", poly, "Quartic")->required();
    albert->add_option("--x", x_coords, "Coordinates of x in the basis 1, c, c^2")->required()->expected(1, 3);

    auto* quat_scan = app.add_subcommand("quat-scan", "Quaternion classes (lambda, -rho(lambda)) over a range");
    std::string range = "1..10";
    quat_scan->add_option("P", poly, "Quartic")->required();
    quat_scan->add_option("--lambda", range, "Range a..b of integers")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (progress_enabled()) cfg.progress = [](const std::string& m) { std::cerr << "[qres] " << m << "\n"; };

    try {
        cfg.prime = qres::parse_field(field);
        cfg.genericize = !no_genericize;
        if (*module_check) return print_report(qres::cmd_module_check(tampered), format, timing);
        if (*scenario) return print_report(qres::cmd_scenario(scenario_name, cfg), format, timing);
        if (*verify) return print_report(qres::cmd_verify(cfg), format, timing);
        if (*resolvent) {
            print_doc(qres::cmd_resolvent(poly, cfg), format);
            return 0;
        }
        if (*albert) {
            print_doc(qres::cmd_albert(poly, x_coords, cfg), format);
            return 0;
        }
        if (*quat_scan) {
            const auto [lo, hi] = qres::parse_range(range);
            const auto doc = qres::cmd_quat_scan(poly, lo, hi, cfg);
            print_doc(doc, format);
            return doc["mismatches"].get<std::size_t>() == 0 ? 0 : 1;
        }
    } catch (const std::exception& e) {
        return error_exit(e, format);
    }
    return 2;
}

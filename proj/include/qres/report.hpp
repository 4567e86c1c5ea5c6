#pragma once

// Report records and exact JSON serialization of library values. Every
// scalar is written as a decimal string ("p/q" over ℚ, the residue over 𝔽_p)
// so that counterexamples replay exactly.

#include <cstdint>
#include <deque>
#include <functional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qres/etale.hpp"
#include "qres/poly.hpp"
#include "qres/qform.hpp"

namespace qres {

using Json = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "quartic-resolvent/report/1";

template <Scalar F>
Json scalar_json(const F& x)
{
    return x.to_string();
}

/// Coefficients low to high.
template <Scalar F>
Json coeffs_json(const Poly<F>& p)
{
    Json a = Json::array();
    for (const auto& c : p.coefficients()) a.push_back(c.to_string());
    return a;
}

template <Scalar F>
Json poly_json(const Poly<F>& p, const std::string& var = "x")
{
    return Json{{"text", p.to_string(var)}, {"coeffs", coeffs_json(p)}};
}

/// Coordinates in the power basis of the algebra's defining polynomial.
template <Scalar F>
Json elem_json(const AlgElement<F>& a)
{
    const Poly<F> g = a.algebra().to_monogenic(a);
    Json v = Json::array();
    for (std::size_t i = 0; i < a.algebra().dimension(); ++i) v.push_back(g.coeff(i).to_string());
    return v;
}

inline Json brauer_json(const BrauerClass2& b)
{
    Json a = Json::array();
    for (const auto& l : b.labels()) a.push_back(l);
    return a;
}

/// Reads a polynomial from a JSON array of coefficients (low to high, each an
/// integer or a rational string), from a {"coeffs": [...]} object, or from a
/// polynomial string.
template <class Field>
Poly<typename Field::element_type> poly_from_json(const Json& j, const Field& fld)
{
    using F = typename Field::element_type;
    if (j.is_string()) return parse_poly(j.get<std::string>(), fld);
    if (j.is_object() && j.contains("coeffs")) return poly_from_json(j.at("coeffs"), fld);
    if (!j.is_array()) throw ParseError("polynomial must be a string or an array of coefficients");
    std::vector<F> c;
    for (const auto& e : j) {
        if (e.is_number_integer()) {
            c.push_back(from_rational(fld, Rational(mpz_class(e.dump()))));
        } else if (e.is_string()) {
            const auto s = e.get<std::string>();
            try {
                c.push_back(from_rational(fld, Rational::parse(s)));
            } catch (const Error&) {
                throw ParseError("bad coefficient '" + s + "'");
            }
        } else {
            throw ParseError("coefficients must be integers or strings, got " + e.dump());
        }
    }
    return Poly<F>(fld, std::move(c));
}

// ---------------------------------------------------------------------------

/// One asserted identity, aggregated over all instances checked. The first
/// failing instance is kept as the counterexample.
struct Assertion {
    std::string id;
    std::size_t checked = 0;
    std::size_t failed = 0;
    Json detail = Json::object();
    Json counterexample = nullptr;

    bool pass() const { return failed == 0; }

    void record(bool ok, const std::function<Json()>& witness)
    {
        ++checked;
        if (ok) return;
        ++failed;
        if (counterexample.is_null()) counterexample = witness();
    }

    Json to_json() const
    {
        Json j{{"id", id}, {"status", pass() ? "PASS" : "FAIL"}, {"checked", checked}, {"failed", failed}};
        if (!detail.empty()) j["detail"] = detail;
        if (!pass()) j["counterexample"] = counterexample;
        return j;
    }
};

struct ScenarioReport {
    explicit ScenarioReport(std::string name = {}) : id(std::move(name)) {}

    std::string id;
    Json inputs = Json::object();
    std::deque<Assertion> assertions;  // stable references while suites add entries
    double wall_seconds = 0;

    Assertion& add(std::string name)
    {
        assertions.push_back(Assertion{std::move(name)});
        return assertions.back();
    }

    void append(std::vector<Assertion> more)
    {
        for (auto& a : more) assertions.push_back(std::move(a));
    }

    std::size_t failures() const
    {
        std::size_t n = 0;
        for (const auto& a : assertions) n += a.pass() ? 0 : 1;
        return n;
    }

    bool ok() const { return failures() == 0; }

    /// Wall-clock time is excluded unless asked for, so that equal
    /// configurations give byte-identical output.
    Json to_json(bool with_timing = false) const
    {
        Json as = Json::array();
        for (const auto& a : assertions) as.push_back(a.to_json());
        Json j{{"schema", kReportSchema}, {"scenario", id}, {"inputs", inputs}, {"assertions", as}};
        j["summary"] = Json{{"assertions", assertions.size()},
                            {"failed", failures()},
                            {"status", ok() ? "PASS" : "FAIL"}};
        if (with_timing) j["wall_seconds"] = wall_seconds;
        return j;
    }

    std::string to_text(bool with_timing = true) const
    {
        std::ostringstream os;
        os << "scenario " << id << "\n";
        for (const auto& a : assertions) {
            os << (a.pass() ? "PASS " : "FAIL ") << a.id << " (" << a.checked << " checked";
            if (a.failed) os << ", " << a.failed << " failed";
            os << ")\n";
            if (!a.pass()) os << "  counterexample: " << a.counterexample.dump() << "\n";
        }
        os << (ok() ? "PASS" : "FAIL") << " " << id << ": " << assertions.size() - failures() << "/"
           << assertions.size() << " assertions";
        if (with_timing) os << " in " << wall_seconds << " s";
        os << "\n";
        return os.str();
    }
};

}  // namespace qres

#pragma once

// Étale algebras over 𝔽_p as Frobenius-equivariant functions on finite sets:
// L on X = {0,1,2,3}, S on the six pairs, C on the three partitions. Used for
// exhaustive norm-group checks where a single generator of S need not exist.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "qres/etale.hpp"
#include "qres/factor.hpp"
#include "qres/gamma_mod.hpp"

namespace qres::gs {

using Perm = std::vector<std::size_t>;

/// Frobenius on X with the given cycle lengths (a partition of 4).
inline Perm frobenius_of_type(std::vector<int> type)
{
    std::sort(type.begin(), type.end());
    if (std::accumulate(type.begin(), type.end(), 0) != 4) throw PreconditionError("cycle type must partition 4");
    Perm f(4);
    std::size_t start = 0;
    for (int len : type) {
        for (int i = 0; i < len; ++i) f[start + i] = start + (i + 1) % len;
        start += len;
    }
    return f;
}

inline Perm action_on_pairs(const Perm& f)
{
    Perm out(6);
    for (std::size_t k = 0; k < 6; ++k) {
        const auto [i, j] = gm::pairs()[k];
        out[k] = gm::pair_index(f[i], f[j]);
    }
    return out;
}

inline Perm action_on_partitions(const Perm& f)
{
    const Perm on_pairs = action_on_pairs(f);
    Perm out(3);
    for (std::size_t k = 0; k < 6; ++k) out[gm::partition_of_pair(k)] = gm::partition_of_pair(on_pairs[k]);
    return out;
}

inline std::vector<std::vector<std::size_t>> orbits(const Perm& f)
{
    std::vector<std::vector<std::size_t>> out;
    std::vector<bool> seen(f.size(), false);
    for (std::size_t s = 0; s < f.size(); ++s) {
        if (seen[s]) continue;
        std::vector<std::size_t> orb;
        for (std::size_t e = s; !seen[e]; e = f[e]) {
            seen[e] = true;
            orb.push_back(e);
        }
        out.push_back(orb);
    }
    return out;
}

inline std::vector<int> orbit_sizes(const Perm& f)
{
    std::vector<int> d;
    for (const auto& o : orbits(f)) d.push_back(static_cast<int>(o.size()));
    std::sort(d.begin(), d.end());
    return d;
}

/// First monic irreducible polynomial of degree m over 𝔽_p in
/// lexicographic order of coefficients.
inline Poly<ModP> first_irreducible(const PrimeField& fld, int m)
{
    const std::uint64_t p = fld.p;
    std::uint64_t total = 1;
    for (int i = 0; i < m; ++i) total *= p;
    for (std::uint64_t code = 0; code < total; ++code) {
        std::vector<ModP> c;
        std::uint64_t t = code;
        for (int i = 0; i < m; ++i) {
            c.emplace_back(t % p, p);
            t /= p;
        }
        c.push_back(fld.one());
        Poly<ModP> f(fld, c);
        if (is_irreducible(f)) return f;
    }
    throw InvariantViolation("no irreducible polynomial found");
}

/// All monic squarefree quartics over 𝔽_p whose factor degrees are `type`,
/// in lexicographic order; at most `limit` of them.
inline std::vector<Poly<ModP>> quartics_of_type(const PrimeField& fld, std::vector<int> type, std::size_t limit)
{
    std::sort(type.begin(), type.end());
    const std::uint64_t p = fld.p;
    std::vector<Poly<ModP>> out;
    for (std::uint64_t code = 0; code < p * p * p * p && out.size() < limit; ++code) {
        std::vector<ModP> c;
        std::uint64_t t = code;
        for (int i = 0; i < 4; ++i) {
            c.emplace_back(t % p, p);
            t /= p;
        }
        c.push_back(fld.one());
        Poly<ModP> f(fld, c);
        if (!is_squarefree(f)) continue;
        if (factorize(f).degree_pattern() == type) out.push_back(f);
    }
    return out;
}

/// 𝔽_p-algebra of Frobenius-equivariant maps E → 𝔽_{p^m}.
class EquivariantAlgebra {
public:
    using Value = AlgElement<ModP>;
    using Elem = std::vector<Value>;

    EquivariantAlgebra(EtaleAlgebra<ModP> big, Perm frob) : k_(std::move(big)), f_(std::move(frob)) {}

    std::size_t size() const { return f_.size(); }
    const Perm& frobenius() const { return f_; }
    const EtaleAlgebra<ModP>& value_field() const { return k_; }

    Elem one() const { return Elem(size(), k_.one()); }
    Elem scalar(const ModP& c) const { return Elem(size(), k_.scalar(c)); }

    static Elem mul(const Elem& a, const Elem& b)
    {
        Elem out = a;
        for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
        return out;
    }

    static bool is_unit(const Elem& a)
    {
        return std::all_of(a.begin(), a.end(), [](const Value& v) { return !v.is_zero(); });
    }

    /// N_{A/k}: the product of all values, an element of 𝔽_p.
    ModP norm(const Elem& a) const
    {
        Value acc = k_.one();
        for (const auto& v : a) acc = acc * v;
        return as_scalar(acc);
    }

    /// The value if it lies in 𝔽_p, else throws.
    ModP as_scalar(const Value& v) const
    {
        const Poly<ModP> g = k_.to_monogenic(v);
        if (g.degree() > 0) throw InvariantViolation("value is not in the prime field");
        return g.coeff(0);
    }

    bool is_scalar(const Elem& a) const
    {
        for (const auto& v : a)
            if (!(v == a[0]) || k_.to_monogenic(v).degree() > 0) return false;
        return true;
    }

    /// Every element of the algebra, in a fixed order.
    std::vector<Elem> enumerate() const
    {
        const auto orbs = orbits(f_);
        std::vector<std::vector<Value>> choices;
        for (const auto& o : orbs) choices.push_back(subfield(o.size()));
        std::vector<Elem> out;
        std::vector<std::size_t> idx(orbs.size(), 0);
        for (;;) {
            Elem e(size());
            for (std::size_t r = 0; r < orbs.size(); ++r) {
                Value v = choices[r][idx[r]];
                for (std::size_t e_i : orbs[r]) {
                    e[e_i] = v;
                    v = v.pow(k_.field().p);
                }
            }
            out.push_back(std::move(e));
            std::size_t r = 0;
            while (r < idx.size() && ++idx[r] == choices[r].size()) idx[r++] = 0;
            if (r == idx.size()) break;
        }
        return out;
    }

    /// Flat exact key for set membership.
    std::vector<std::uint64_t> key(const Elem& a) const
    {
        std::vector<std::uint64_t> out;
        const std::size_t m = k_.dimension();
        for (const auto& v : a) {
            const Poly<ModP> g = k_.to_monogenic(v);
            for (std::size_t i = 0; i < m; ++i) out.push_back(g.coeff(i).value());
        }
        return out;
    }

private:
    /// Elements a with a^{p^d} = a.
    std::vector<Value> subfield(std::size_t d) const
    {
        const std::uint64_t p = k_.field().p;
        const std::size_t m = k_.dimension();
        std::uint64_t total = 1;
        for (std::size_t i = 0; i < m; ++i) total *= p;
        std::vector<Value> out;
        for (std::uint64_t code = 0; code < total; ++code) {
            std::vector<ModP> c;
            std::uint64_t t = code;
            for (std::size_t i = 0; i < m; ++i) {
                c.emplace_back(t % p, p);
                t /= p;
            }
            const Value v = k_.from_coords(c);
            Value w = v;
            for (std::size_t i = 0; i < d; ++i) w = w.pow(p);
            if (w == v) out.push_back(v);
        }
        return out;
    }

    EtaleAlgebra<ModP> k_;
    Perm f_;
};

/// L, S and C for one Frobenius cycle type, with σ*, τ* and N_{S/C}.
class QuarticModel {
public:
    using Elem = EquivariantAlgebra::Elem;

    QuarticModel(const PrimeField& fld, std::vector<int> type)
        : fld_(fld),
          type_(type),
          frob_(frobenius_of_type(type)),
          big_(EtaleAlgebra<ModP>::from_poly(first_irreducible(fld, order(frob_)))),
          L_(big_, frob_),
          S_(big_, action_on_pairs(frob_)),
          C_(big_, action_on_partitions(frob_))
    {
    }

    const PrimeField& field() const { return fld_; }
    const std::vector<int>& type() const { return type_; }
    const EquivariantAlgebra& L() const { return L_; }
    const EquivariantAlgebra& S() const { return S_; }
    const EquivariantAlgebra& C() const { return C_; }

    Elem sigma_star(const Elem& x) const
    {
        Elem out(6);
        for (std::size_t k = 0; k < 6; ++k) {
            const auto [i, j] = gm::pairs()[k];
            out[k] = x[i] * x[j];
        }
        return out;
    }

    Elem tau_star(const Elem& s) const
    {
        Elem out(4, big_.one());
        for (std::size_t k = 0; k < 6; ++k) {
            const auto [i, j] = gm::pairs()[k];
            out[i] = out[i] * s[k];
            out[j] = out[j] * s[k];
        }
        return out;
    }

    Elem norm_S_over_C(const Elem& s) const
    {
        Elem out(3, big_.one());
        for (std::size_t k = 0; k < 6; ++k) out[gm::partition_of_pair(k)] = out[gm::partition_of_pair(k)] * s[k];
        return out;
    }

    Elem i_S_over_C(const Elem& c) const
    {
        Elem out(6);
        for (std::size_t k = 0; k < 6; ++k) out[k] = c[gm::partition_of_pair(k)];
        return out;
    }

private:
    static std::size_t order(const Perm& f)
    {
        std::size_t m = 1;
        for (const auto& o : orbits(f)) m = std::lcm(m, o.size());
        return m;
    }

    PrimeField fld_;
    std::vector<int> type_;
    Perm frob_;
    EtaleAlgebra<ModP> big_;
    EquivariantAlgebra L_, S_, C_;
};

/// Outcome of the exhaustive checks for one cycle type over one 𝔽_p.
struct ExhaustiveReport {
    std::uint64_t p = 0;
    std::vector<int> type;
    std::string quartic;  // a representative polynomial, empty when none exists
    std::vector<int> S_components, C_components;
    std::set<std::uint64_t> NL, NS, NC;
    bool equality1 = false;       // {x : x² ∈ N(L/k)} = k×²·N(S/k)
    bool equality2 = false;       // k× ∩ N(S/C) = k×²·N(L/k)
    bool converse = false;        // N_{S/C}(y) ∈ k× ⇒ y = λσ*(x)
    bool square_identities = false;  // the four commutative squares, on every unit
    bool polynomial_agrees = false;  // N(L/k) recomputed from k[x]/(P)
    std::size_t units_S = 0;
    std::vector<std::string> failures;
    bool exists() const { return !quartic.empty(); }
    bool ok() const
    {
        return !exists() || (equality1 && equality2 && converse && square_identities && polynomial_agrees);
    }
};

inline std::set<std::uint64_t> k_squares_times(const PrimeField& fld, const std::set<std::uint64_t>& n)
{
    std::set<std::uint64_t> out;
    for (std::uint64_t a = 1; a < fld.p; ++a)
        for (auto v : n) out.insert((ModP(a, fld.p) * ModP(a, fld.p) * ModP(v, fld.p)).value());
    return out;
}

inline ExhaustiveReport exhaustive_check(const PrimeField& fld, std::vector<int> type)
{
    std::sort(type.begin(), type.end());
    ExhaustiveReport rep;
    rep.p = fld.p;
    rep.type = type;
    auto reps = quartics_of_type(fld, type, 1);
    if (reps.empty()) return rep;
    rep.quartic = reps[0].to_string();

    const QuarticModel m(fld, type);
    rep.S_components = orbit_sizes(m.S().frobenius());
    rep.C_components = orbit_sizes(m.C().frobenius());
    std::vector<EquivariantAlgebra::Elem> Lu, Su, Cu;
    for (auto& x : m.L().enumerate())
        if (EquivariantAlgebra::is_unit(x)) Lu.push_back(std::move(x));
    for (auto& x : m.S().enumerate())
        if (EquivariantAlgebra::is_unit(x)) Su.push_back(std::move(x));
    for (auto& x : m.C().enumerate())
        if (EquivariantAlgebra::is_unit(x)) Cu.push_back(std::move(x));
    rep.units_S = Su.size();
    for (const auto& x : Lu) rep.NL.insert(m.L().norm(x).value());
    for (const auto& x : Su) rep.NS.insert(m.S().norm(x).value());
    for (const auto& x : Cu) rep.NC.insert(m.C().norm(x).value());

    // equality 1
    std::set<std::uint64_t> lhs1;
    for (std::uint64_t x = 1; x < fld.p; ++x)
        if (rep.NL.count((ModP(x, fld.p) * ModP(x, fld.p)).value())) lhs1.insert(x);
    rep.equality1 = lhs1 == k_squares_times(fld, rep.NS);
    if (!rep.equality1) rep.failures.push_back("equality 1 fails");

    // equality 2 and the converse
    std::set<std::uint64_t> lhs2;
    std::set<std::vector<std::uint64_t>> image;  // {λσ*(x)}
    for (const auto& x : Lu) {
        const auto sx = m.sigma_star(x);
        for (std::uint64_t l = 1; l < fld.p; ++l) image.insert(m.S().key(EquivariantAlgebra::mul(m.S().scalar(ModP(l, fld.p)), sx)));
    }
    rep.converse = true;
    for (const auto& y : Su) {
        const auto n = m.norm_S_over_C(y);
        if (!m.C().is_scalar(n)) continue;
        lhs2.insert(m.C().as_scalar(n[0]).value());
        if (!image.count(m.S().key(y)) && rep.converse) {
            rep.converse = false;
            rep.failures.push_back("converse fails");
        }
    }
    rep.equality2 = lhs2 == k_squares_times(fld, rep.NL);
    if (!rep.equality2) rep.failures.push_back("equality 2 fails");

    // the commutative squares, on every unit
    rep.square_identities = true;
    for (const auto& x : Lu) {
        const ModP nx = m.L().norm(x);
        const auto sx = m.sigma_star(x);
        bool ok = m.norm_S_over_C(sx) == m.C().scalar(nx);
        const auto back = m.tau_star(sx);
        ok = ok && back == EquivariantAlgebra::mul(EquivariantAlgebra::mul(x, x), m.L().scalar(nx));
        if (!ok) {
            rep.square_identities = false;
            rep.failures.push_back("σ* identity fails");
            break;
        }
    }
    for (const auto& s : Su) {
        const ModP ns = m.S().norm(s);
        if (!(m.L().norm(m.tau_star(s)) == ns * ns)) {
            rep.square_identities = false;
            rep.failures.push_back("N_L(τ*(s)) ≠ N_S(s)²");
            break;
        }
    }
    for (const auto& c : Cu) {
        if (!(m.tau_star(m.i_S_over_C(c)) == m.L().scalar(m.C().norm(c)))) {
            rep.square_identities = false;
            rep.failures.push_back("τ*∘i_{S/C} ≠ N_C");
            break;
        }
    }

    // the same norm group from the polynomial model k[x]/(P)
    const auto alg = EtaleAlgebra<ModP>::from_poly(reps[0]);
    rep.polynomial_agrees = alg.component_degrees() == type;
    std::set<std::uint64_t> npoly;
    const std::uint64_t p = fld.p;
    for (std::uint64_t code = 0; code < p * p * p * p; ++code) {
        std::vector<ModP> c;
        std::uint64_t t = code;
        for (int i = 0; i < 4; ++i) {
            c.emplace_back(t % p, p);
            t /= p;
        }
        const auto x = alg.from_coords(c);
        if (x.is_unit()) npoly.insert(x.norm().value());
    }
    rep.polynomial_agrees = rep.polynomial_agrees && npoly == rep.NL;
    if (!rep.polynomial_agrees) rep.failures.push_back("polynomial model disagrees");
    return rep;
}

inline std::vector<std::vector<int>> all_cycle_types()
{
    return {{4}, {1, 3}, {2, 2}, {1, 1, 2}, {1, 1, 1, 1}};
}

}  // namespace qres::gs

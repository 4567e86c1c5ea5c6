#pragma once

// Factorization of univariate polynomials over 𝔽_p (p odd) and over ℚ.
//
// 𝔽_p: squarefree decomposition, distinct-degree splitting, then a root scan
// (p < 10^4) or Cantor-Zassenhaus equal-degree splitting.
// ℚ:   squarefree decomposition, degree-pattern sieve modulo several primes,
//      Hensel lifting of a modular factorization and exhaustive
//      recombination of the lifted factors.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "qres/errors.hpp"
#include "qres/poly.hpp"
#include "qres/scalar.hpp"

namespace qres {

template <Scalar F>
struct Factor {
    Poly<F> poly;  // monic irreducible
    unsigned multiplicity = 1;
};

template <Scalar F>
struct Factorization {
    F leading;
    std::vector<Factor<F>> factors;

    Poly<F> product() const
    {
        Poly<F> acc = Poly<F>::constant(leading);
        for (const auto& fa : factors)
            for (unsigned i = 0; i < fa.multiplicity; ++i) acc = acc * fa.poly;
        return acc;
    }

    std::vector<int> degree_pattern() const
    {
        std::vector<int> d;
        for (const auto& fa : factors)
            for (unsigned i = 0; i < fa.multiplicity; ++i) d.push_back(fa.poly.degree());
        std::sort(d.begin(), d.end());
        return d;
    }
};

struct FactorOptions {
    /// Upper limit on candidate subsets tried during recombination.
    std::size_t recombination_cap = 200000;
    /// Number of auxiliary primes used for the degree-pattern sieve.
    std::size_t sieve_primes = 24;
};

namespace detail {

template <Scalar F>
bool poly_less(const Poly<F>& a, const Poly<F>& b)
{
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (std::size_t k = a.size(); k-- > 0;) {
        const F x = a.coeff(k), y = b.coeff(k);
        if (x == y) continue;
        if constexpr (std::is_same_v<F, Rational>)
            return x < y;
        else
            return x.value() < y.value();
    }
    return false;
}

template <Scalar F>
void sort_factors(std::vector<Factor<F>>& fs)
{
    std::sort(fs.begin(), fs.end(), [](const Factor<F>& a, const Factor<F>& b) {
        if (a.poly == b.poly) return a.multiplicity < b.multiplicity;
        return poly_less(a.poly, b.poly);
    });
}

}  // namespace detail

/// Squarefree decomposition of a monic polynomial: pairs (squarefree part,
/// multiplicity), with pairwise coprime parts.
template <Scalar F>
std::vector<std::pair<Poly<F>, unsigned>> squarefree_decomposition(const Poly<F>& f)
{
    const auto fld = f.field();
    std::vector<std::pair<Poly<F>, unsigned>> out;
    if (f.degree() <= 0) return out;
    const std::uint64_t p = fld.characteristic();
    Poly<F> c = gcd(f, f.derivative());
    Poly<F> w = exact_div(f.monic(), c);
    unsigned i = 1;
    while (w.degree() > 0) {
        Poly<F> y = gcd(w, c);
        Poly<F> fac = exact_div(w, y);
        if (fac.degree() > 0) out.emplace_back(fac, i);
        w = y;
        c = exact_div(c, y);
        ++i;
    }
    if (c.degree() > 0) {
        if (p == 0) throw InvariantViolation("squarefree decomposition left a residue in characteristic 0");
        // c is a p-th power: in 𝔽_p, a^{1/p} = a.
        std::vector<F> root;
        for (std::size_t k = 0; k < c.size(); k += p) root.push_back(c.coeff(k));
        for (auto& [g, m] : squarefree_decomposition(Poly<F>(fld, root))) out.emplace_back(g, m * static_cast<unsigned>(p));
    }
    return out;
}

// ---------------------------------------------------------------------------
// 𝔽_p

namespace detail {

/// Distinct-degree factorization of a monic squarefree polynomial.
inline std::vector<std::pair<Poly<ModP>, int>> distinct_degree(Poly<ModP> g)
{
    const auto fld = g.field();
    std::vector<std::pair<Poly<ModP>, int>> out;
    const Poly<ModP> x = Poly<ModP>::x(fld);
    Poly<ModP> h = x % g;
    const mpz_class p(static_cast<unsigned long>(fld.p));
    for (int i = 1; 2 * i <= g.degree(); ++i) {
        h = pow_mod(h, p, g);
        Poly<ModP> d = gcd(g, h - x);
        if (d.degree() > 0) {
            out.emplace_back(d, i);
            g = exact_div(g, d);
            h = h % g;
        }
    }
    if (g.degree() > 0) out.emplace_back(g, g.degree());
    return out;
}

inline void equal_degree(const Poly<ModP>& g, int d, std::mt19937_64& rng, std::vector<Poly<ModP>>& out)
{
    const auto fld = g.field();
    if (g.degree() == d) {
        out.push_back(g.monic());
        return;
    }
    mpz_class e = 1;
    for (int i = 0; i < d; ++i) e *= static_cast<unsigned long>(fld.p);
    e = (e - 1) / 2;
    while (true) {
        std::vector<ModP> coeffs;
        for (int i = 0; i < g.degree(); ++i) coeffs.emplace_back(rng() % fld.p, fld.p);
        Poly<ModP> a(fld, coeffs);
        if (a.degree() <= 0) continue;
        Poly<ModP> b = pow_mod(a, e, g) - Poly<ModP>::constant(fld.one());
        Poly<ModP> s = gcd(g, b);
        if (s.degree() > 0 && s.degree() < g.degree()) {
            equal_degree(s, d, rng, out);
            equal_degree(exact_div(g, s), d, rng, out);
            return;
        }
    }
}

}  // namespace detail

inline Factorization<ModP> factorize(const Poly<ModP>& f)
{
    if (f.is_zero()) throw PreconditionError("factorize: zero polynomial");
    Factorization<ModP> out{f.lc(), {}};
    std::mt19937_64 rng(0x5eedULL ^ f.field().p);
    for (const auto& [part, mult] : squarefree_decomposition(f.monic())) {
        for (const auto& [block, d] : detail::distinct_degree(part)) {
            std::vector<Poly<ModP>> pieces;
            if (d == 1 && f.field().p < 10000) {
                const auto fld = block.field();
                for (std::uint64_t r = 0; r < fld.p; ++r)
                    if (block.eval(ModP(r, fld.p)).is_zero())
                        pieces.push_back(Poly<ModP>::x(fld) - Poly<ModP>::constant(ModP(r, fld.p)));
            } else {
                detail::equal_degree(block, d, rng, pieces);
            }
            for (auto& pc : pieces) out.factors.push_back({pc, mult});
        }
    }
    detail::sort_factors(out.factors);
    return out;
}

// ---------------------------------------------------------------------------
// ℚ

namespace detail {

using ZPoly = std::vector<mpz_class>;  // low-to-high, integer coefficients

inline ZPoly zmul(const ZPoly& a, const ZPoly& b)
{
    if (a.empty() || b.empty()) return {};
    ZPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

inline ZPoly zsub(ZPoly a, const ZPoly& b)
{
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

inline ZPoly zadd_scaled(ZPoly a, const ZPoly& b, const mpz_class& s)
{
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] += s * b[i];
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

/// Symmetric residues modulo m.
inline ZPoly zmods(ZPoly a, const mpz_class& m)
{
    const mpz_class half = m / 2;
    for (auto& c : a) {
        c %= m;
        if (c < 0) c += m;
        if (c > half) c -= m;
    }
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

inline Poly<ModP> to_modp(const ZPoly& a, const PrimeField& fld)
{
    std::vector<ModP> c;
    for (const auto& x : a) c.push_back(fld.from_mpz(x));
    return Poly<ModP>(fld, c);
}

inline ZPoly from_modp(const Poly<ModP>& a)
{
    ZPoly r;
    for (const auto& c : a.coefficients()) r.emplace_back(static_cast<unsigned long>(c.value()));
    return r;
}

inline Poly<Rational> to_rational(const ZPoly& a)
{
    std::vector<Rational> c;
    for (const auto& x : a) c.emplace_back(x);
    return Poly<Rational>(RationalField{}, c);
}

/// Exact division of integer polynomials with monic divisor; nullopt if the
/// remainder is nonzero.
inline std::optional<ZPoly> zdiv_monic(const ZPoly& a, const ZPoly& b)
{
    if (b.empty() || b.back() != 1) throw InvariantViolation("zdiv_monic: divisor not monic");
    if (a.size() < b.size()) return std::nullopt;
    ZPoly rem = a;
    ZPoly quo(a.size() - b.size() + 1, 0);
    const std::size_t db = b.size() - 1;
    for (std::size_t k = quo.size(); k-- > 0;) {
        const mpz_class t = rem[k + db];
        quo[k] = t;
        if (t == 0) continue;
        for (std::size_t j = 0; j <= db; ++j) rem[k + j] -= t * b[j];
    }
    for (std::size_t j = 0; j < db; ++j)
        if (rem[j] != 0) return std::nullopt;
    return quo;
}

/// Lift f ≡ g·h (mod p) to f ≡ G·H (mod p^k), f monic, g and h monic and
/// coprime modulo p.
inline std::pair<ZPoly, ZPoly> hensel_lift(const ZPoly& f, const Poly<ModP>& g0, const Poly<ModP>& h0, unsigned k)
{
    const auto fld = g0.field();
    const mpz_class p(static_cast<unsigned long>(fld.p));
    auto [one, s, t] = xgcd(g0, h0);
    if (one.degree() != 0) throw InvariantViolation("hensel_lift: factors not coprime mod p");
    ZPoly g = from_modp(g0), h = from_modp(h0);
    mpz_class pj = p;
    for (unsigned j = 1; j < k; ++j) {
        ZPoly err = zsub(f, zmul(g, h));
        for (auto& c : err) {
            if (c % pj != 0) throw InvariantViolation("hensel_lift: lost congruence");
            c /= pj;
        }
        const Poly<ModP> e = to_modp(err, fld);
        const Poly<ModP> tau = (e * t) % g0;
        const Poly<ModP> sigma = (e * s) % h0;
        g = zadd_scaled(g, from_modp(tau), pj);
        h = zadd_scaled(h, from_modp(sigma), pj);
        pj *= p;
    }
    return {zmods(g, pj), zmods(h, pj)};
}

inline std::vector<std::uint64_t> small_odd_primes(std::size_t count, std::uint64_t start = 3)
{
    std::vector<std::uint64_t> out;
    for (std::uint64_t n = start; out.size() < count; n += 2) {
        bool prime = true;
        for (std::uint64_t d = 3; d * d <= n; d += 2)
            if (n % d == 0) {
                prime = false;
                break;
            }
        if (prime) out.push_back(n);
    }
    return out;
}

inline std::set<int> subset_degree_sums(const std::vector<int>& degs)
{
    std::set<int> sums{0};
    for (int d : degs) {
        std::set<int> next = sums;
        for (int s : sums) next.insert(s + d);
        sums = std::move(next);
    }
    return sums;
}

/// Factor a monic squarefree integer polynomial into monic irreducibles.
inline std::vector<ZPoly> factor_squarefree_monic(ZPoly g, const FactorOptions& opt)
{
    const int n = static_cast<int>(g.size()) - 1;
    if (n <= 1) return {g};

    // degree-pattern sieve; remember the prime with the fewest modular factors
    std::set<int> possible;
    for (int d = 0; d <= n; ++d) possible.insert(d);
    std::uint64_t best_p = 0;
    std::size_t best_count = SIZE_MAX;
    Factorization<ModP> best;
    std::size_t used = 0;
    for (std::uint64_t p : small_odd_primes(400)) {
        if (used >= opt.sieve_primes) break;
        const PrimeField fld(p);
        Poly<ModP> gp = to_modp(g, fld);
        if (!is_squarefree(gp)) continue;
        ++used;
        Factorization<ModP> fp = factorize(gp);
        std::set<int> sums = subset_degree_sums(fp.degree_pattern());
        std::set<int> inter;
        std::set_intersection(possible.begin(), possible.end(), sums.begin(), sums.end(),
                              std::inserter(inter, inter.begin()));
        possible = std::move(inter);
        if (fp.factors.size() < best_count) {
            best_count = fp.factors.size();
            best_p = p;
            best = fp;
        }
        if (possible.size() == 2) return {g};  // only {0, n}: irreducible
    }
    if (best_p == 0) throw InvariantViolation("no good prime for factorization");
    if (best_count == 1) return {g};

    // coefficient bound for any factor: 2^n ||g||_2 (Mignotte), lift past 2B
    mpz_class norm2 = 0;
    for (const auto& c : g) norm2 += c * c;
    mpz_class norm;
    mpz_sqrt(norm.get_mpz_t(), norm2.get_mpz_t());
    norm += 1;
    const mpz_class bound = (mpz_class(1) << n) * norm;
    const mpz_class p(static_cast<unsigned long>(best_p));
    unsigned k = 1;
    mpz_class pk = p;
    while (pk <= 2 * bound) {
        pk *= p;
        ++k;
    }

    // multifactor lift by peeling one modular factor at a time
    std::vector<ZPoly> lifted;
    {
        const PrimeField fld(best_p);
        ZPoly rest = g;
        for (std::size_t i = 0; i + 1 < best.factors.size(); ++i) {
            Poly<ModP> gi = best.factors[i].poly;
            Poly<ModP> others = Poly<ModP>::constant(fld.one());
            for (std::size_t j = i + 1; j < best.factors.size(); ++j) others = others * best.factors[j].poly;
            auto [a, b] = hensel_lift(rest, gi, others, k);
            lifted.push_back(a);
            rest = b;
        }
        lifted.push_back(rest);
    }

    // recombination
    std::vector<ZPoly> result;
    ZPoly remaining = g;
    std::vector<ZPoly> pool = lifted;
    std::size_t tried = 0;
    for (std::size_t size = 1; 2 * size <= pool.size();) {
        bool found = false;
        std::vector<std::size_t> idx(size);
        for (std::size_t i = 0; i < size; ++i) idx[i] = i;
        while (true) {
            int deg = 0;
            for (auto i : idx) deg += static_cast<int>(pool[i].size()) - 1;
            if (possible.count(deg) != 0) {
                if (++tried > opt.recombination_cap)
                    throw FactorizationInconclusive("recombination cap of " + std::to_string(opt.recombination_cap) +
                                                    " subsets exceeded");
                ZPoly cand{1};
                for (auto i : idx) cand = zmods(zmul(cand, pool[i]), pk);
                if (auto q = zdiv_monic(remaining, cand)) {
                    result.push_back(cand);
                    remaining = *q;
                    std::vector<ZPoly> next;
                    for (std::size_t i = 0; i < pool.size(); ++i)
                        if (std::find(idx.begin(), idx.end(), i) == idx.end()) next.push_back(pool[i]);
                    pool = std::move(next);
                    found = true;
                    break;
                }
            }
            // next combination
            std::size_t pos = size;
            while (pos-- > 0) {
                if (idx[pos] != pos + pool.size() - size) break;
                if (pos == 0) {
                    pos = SIZE_MAX;
                    break;
                }
            }
            if (pos == SIZE_MAX || idx[pos] == pos + pool.size() - size) break;
            ++idx[pos];
            for (std::size_t j = pos + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
        }
        if (!found) ++size;
    }
    result.push_back(remaining);
    return result;
}

}  // namespace detail

/// Factorization over ℚ into monic irreducible factors with multiplicities.
inline Factorization<Rational> factorize(const Poly<Rational>& f, const FactorOptions& opt = {})
{
    if (f.is_zero()) throw PreconditionError("factorize: zero polynomial");
    const RationalField fld;
    Factorization<Rational> out{f.lc(), {}};
    for (const auto& [part, mult] : squarefree_decomposition(f.monic())) {
        if (part.degree() == 1) {
            out.factors.push_back({part, mult});
            continue;
        }
        // d^n part(x/d) is a monic integer polynomial for d = lcm of denominators
        mpz_class d = 1;
        for (const auto& c : part.coefficients()) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), c.den().get_mpz_t());
        const std::size_t n = static_cast<std::size_t>(part.degree());
        detail::ZPoly z(n + 1);
        mpz_class dk = 1;
        for (std::size_t k = n + 1; k-- > 0;) {
            Rational c = part.coeff(k) * Rational(dk);
            if (!c.is_integer()) throw InvariantViolation("denominator clearing failed");
            z[k] = c.num();
            dk *= d;
        }
        for (const auto& zf : detail::factor_squarefree_monic(z, opt)) {
            // undo the scaling: H(x) -> H(d x) / d^deg
            Poly<Rational> h = detail::to_rational(zf);
            Poly<Rational> back = h.compose(Poly<Rational>(fld, {Rational(0), Rational(d)})).monic();
            out.factors.push_back({back, mult});
        }
    }
    detail::sort_factors(out.factors);
    return out;
}

template <Scalar F>
bool is_irreducible(const Poly<F>& f)
{
    if (f.degree() <= 0) return false;
    auto fa = factorize(f);
    return fa.factors.size() == 1 && fa.factors[0].multiplicity == 1;
}

}  // namespace qres

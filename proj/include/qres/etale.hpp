#pragma once

// Étale algebras k[x]/(f) = ∏ k[x]/(f_i) with f separable, their elements,
// norms, traces, minimal polynomials and discriminant square classes.

#include <algorithm>
#include <memory>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "qres/errors.hpp"
#include "qres/factor.hpp"
#include "qres/integers.hpp"
#include "qres/matrix.hpp"
#include "qres/poly.hpp"
#include "qres/scalar.hpp"

namespace qres {

template <Scalar F>
class AlgElement;

template <Scalar F>
class EtaleAlgebra {
public:
    using field_type = field_of<F>;

    EtaleAlgebra() = default;

    /// k[x]/(f) for separable f, split into its irreducible components.
    static EtaleAlgebra from_poly(const Poly<F>& f)
    {
        if (f.degree() < 1) throw PreconditionError("étale algebra needs a polynomial of positive degree");
        if (!is_squarefree(f)) throw NotEtale();
        auto fa = factorize(f);
        std::vector<Poly<F>> comps;
        for (const auto& x : fa.factors) comps.push_back(x.poly);
        return EtaleAlgebra(f.monic(), std::move(comps));
    }

    const field_type& field() const { return d_->fld; }
    const Poly<F>& defining_poly() const { return d_->f; }
    const std::vector<Poly<F>>& components() const { return d_->comps; }
    std::size_t num_components() const { return d_->comps.size(); }
    std::size_t dimension() const { return static_cast<std::size_t>(d_->f.degree()); }
    bool is_field() const { return d_->comps.size() == 1; }

    std::vector<int> component_degrees() const
    {
        std::vector<int> d;
        for (const auto& c : d_->comps) d.push_back(c.degree());
        std::sort(d.begin(), d.end());
        return d;
    }

    AlgElement<F> from_residues(std::vector<Poly<F>> r) const;
    AlgElement<F> scalar(const F& c) const;
    AlgElement<F> one() const { return scalar(field().one()); }
    AlgElement<F> zero() const { return scalar(field().zero()); }
    /// Image of g(x), x the class of the variable.
    AlgElement<F> from_monogenic(const Poly<F>& g) const;
    AlgElement<F> generator() const { return from_monogenic(Poly<F>::x(field())); }
    /// Element with coordinates v in the basis 1, x, ..., x^{n-1}.
    AlgElement<F> from_coords(const std::vector<F>& v) const { return from_monogenic(Poly<F>(field(), v)); }

    /// Representative of degree < n: the CRT inverse of from_monogenic.
    Poly<F> to_monogenic(const AlgElement<F>& a) const;

    /// Square class of the discriminant of the trace form. Over ℚ the
    /// squarefree integer, over 𝔽_p either 1 or the least non-residue.
    F disc_square_class() const
    {
        F det = field().one();
        for (const auto& c : d_->comps) det *= trace_form_det(c);
        return square_class_of(det);
    }

    static F square_class_of(const F& x)
    {
        if (x.is_zero()) throw PreconditionError("square class of zero");
        if constexpr (std::is_same_v<F, Rational>) {
            return Rational(squarefree_part(x));
        } else {
            if (x.legendre() == 1) return x.field().one();
            for (std::uint64_t r = 2;; ++r)
                if (ModP(r, x.modulus()).legendre() == -1) return ModP(r, x.modulus());
        }
    }

    friend bool operator==(const EtaleAlgebra& a, const EtaleAlgebra& b) { return a.d_->f == b.d_->f; }

private:
    struct Data {
        field_type fld;
        Poly<F> f;
        std::vector<Poly<F>> comps;
        std::vector<Poly<F>> idempotents;  // CRT idempotents mod f
    };

    EtaleAlgebra(Poly<F> f, std::vector<Poly<F>> comps)
    {
        auto d = std::make_shared<Data>();
        d->fld = f.field();
        d->f = std::move(f);
        d->comps = std::move(comps);
        for (const auto& c : d->comps) {
            const Poly<F> cof = exact_div(d->f, c);
            auto [g, s, t] = xgcd(cof % c, c);
            if (g.degree() != 0) throw NotEtale();
            d->idempotents.push_back((cof * s) % d->f);
        }
        d_ = std::move(d);
    }

    static F trace_form_det(const Poly<F>& c)
    {
        const std::size_t n = static_cast<std::size_t>(c.degree());
        // power sums of the roots by Newton's identities
        std::vector<F> p(2 * n, c.field().zero());
        const auto e = [&](std::size_t k) {  // coefficient of x^{n-k}, monic c
            return c.coeff(n - k);
        };
        p[0] = c.field().from_int(static_cast<long>(n));
        for (std::size_t k = 1; k < 2 * n; ++k) {
            F acc = c.field().zero();
            for (std::size_t i = 1; i < k && i <= n; ++i) acc += e(i) * p[k - i];
            if (k <= n) acc += c.field().from_int(static_cast<long>(k)) * e(k);
            p[k] = -acc;
        }
        Matrix<F> g(c.field(), n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) g(i, j) = p[i + j];
        return g.det();
    }

    std::shared_ptr<const Data> d_;
    friend class AlgElement<F>;
};

template <Scalar F>
class AlgElement {
public:
    AlgElement() = default;
    AlgElement(EtaleAlgebra<F> alg, std::vector<Poly<F>> residues) : alg_(std::move(alg)), r_(std::move(residues))
    {
        if (r_.size() != alg_.num_components()) throw PreconditionError("component count mismatch");
        for (std::size_t i = 0; i < r_.size(); ++i) r_[i] = r_[i] % alg_.components()[i];
    }

    const EtaleAlgebra<F>& algebra() const { return alg_; }
    const std::vector<Poly<F>>& residues() const { return r_; }
    const Poly<F>& residue(std::size_t i) const { return r_[i]; }

    bool is_zero() const
    {
        for (const auto& x : r_)
            if (!x.is_zero()) return false;
        return true;
    }
    bool is_unit() const
    {
        for (const auto& x : r_)
            if (x.is_zero()) return false;
        return true;
    }

    friend AlgElement operator+(const AlgElement& a, const AlgElement& b) { return a.zip(b, [](auto& x, auto& y) { return x + y; }); }
    friend AlgElement operator-(const AlgElement& a, const AlgElement& b) { return a.zip(b, [](auto& x, auto& y) { return x - y; }); }
    friend AlgElement operator*(const AlgElement& a, const AlgElement& b) { return a.zip(b, [](auto& x, auto& y) { return x * y; }); }
    friend AlgElement operator*(const F& s, AlgElement a)
    {
        for (auto& x : a.r_) x = x * s;
        return a;
    }
    friend AlgElement operator*(AlgElement a, const F& s) { return s * std::move(a); }
    AlgElement operator-() const
    {
        AlgElement a = *this;
        for (auto& x : a.r_) x = -x;
        return a;
    }
    friend bool operator==(const AlgElement& a, const AlgElement& b) { return a.alg_ == b.alg_ && a.r_ == b.r_; }

    /// Inverse; NotInvertible carries the first component where a vanishes.
    AlgElement inv() const
    {
        AlgElement out = *this;
        for (std::size_t i = 0; i < r_.size(); ++i) {
            if (r_[i].is_zero()) throw NotInvertible(i);
            auto [g, s, t] = xgcd(r_[i], alg_.components()[i]);
            if (g.degree() != 0) throw NotInvertible(i);
            out.r_[i] = s % alg_.components()[i];
        }
        return out;
    }
    friend AlgElement operator/(const AlgElement& a, const AlgElement& b) { return a * b.inv(); }

    AlgElement pow(unsigned long e) const
    {
        AlgElement acc = alg_.one(), base = *this;
        while (e) {
            if (e & 1UL) acc = acc * base;
            base = base * base;
            e >>= 1UL;
        }
        return acc;
    }

    /// Matrix of multiplication on component i in its power basis.
    Matrix<F> component_matrix(std::size_t i) const
    {
        const Poly<F>& f = alg_.components()[i];
        const std::size_t d = static_cast<std::size_t>(f.degree());
        const auto fld = alg_.field();
        Matrix<F> m(fld, d, d);
        Poly<F> col = r_[i];
        const Poly<F> x = Poly<F>::x(fld);
        for (std::size_t j = 0; j < d; ++j) {
            for (std::size_t k = 0; k < d; ++k) m(k, j) = col.coeff(k);
            col = (col * x) % f;
        }
        return m;
    }

    /// Characteristic polynomial of the regular representation.
    Poly<F> charpoly() const
    {
        Poly<F> acc = Poly<F>::constant(alg_.field().one());
        for (std::size_t i = 0; i < r_.size(); ++i) acc = acc * component_matrix(i).charpoly();
        return acc;
    }

    F norm() const
    {
        const Poly<F> cp = charpoly();
        F c0 = cp.coeff(0);
        return cp.degree() % 2 == 0 ? c0 : -c0;
    }

    F trace() const
    {
        const Poly<F> cp = charpoly();
        return -cp.coeff(static_cast<std::size_t>(cp.degree() - 1));
    }

    /// Minimal polynomial: lcm over components of the first linear relation
    /// among the powers of the residue.
    Poly<F> minpoly() const
    {
        const auto fld = alg_.field();
        Poly<F> acc = Poly<F>::constant(fld.one());
        for (std::size_t i = 0; i < r_.size(); ++i) {
            const Poly<F>& f = alg_.components()[i];
            const std::size_t d = static_cast<std::size_t>(f.degree());
            std::vector<std::vector<F>> cols;
            Poly<F> pw = Poly<F>::constant(fld.one());
            for (std::size_t k = 0; k <= d; ++k) {
                std::vector<F> v(d, fld.zero());
                for (std::size_t j = 0; j < d; ++j) v[j] = pw.coeff(j);
                if (k > 0) {
                    auto sol = solve_linear(Matrix<F>::from_columns(fld, d, cols), v);
                    if (sol.consistent()) {
                        std::vector<F> mc;
                        for (const auto& c : *sol.particular) mc.push_back(-c);
                        mc.push_back(fld.one());
                        const Poly<F> m(fld, mc);
                        acc = exact_div(acc * m, gcd(acc, m));
                        break;
                    }
                }
                cols.push_back(v);
                pw = (pw * r_[i]) % f;
            }
        }
        return acc.monic();
    }

    bool is_generator() const { return static_cast<std::size_t>(minpoly().degree()) == alg_.dimension(); }

    std::string to_string() const
    {
        std::string s = "(";
        for (std::size_t i = 0; i < r_.size(); ++i) s += (i ? ", " : "") + r_[i].to_string();
        return s + ")";
    }

private:
    template <class Op>
    AlgElement zip(const AlgElement& b, Op op) const
    {
        if (!(alg_ == b.alg_)) throw PreconditionError("elements of different algebras");
        AlgElement out = *this;
        for (std::size_t i = 0; i < r_.size(); ++i) out.r_[i] = op(r_[i], b.r_[i]) % alg_.components()[i];
        return out;
    }

    EtaleAlgebra<F> alg_;
    std::vector<Poly<F>> r_;
};

template <Scalar F>
AlgElement<F> EtaleAlgebra<F>::from_residues(std::vector<Poly<F>> r) const
{
    return AlgElement<F>(*this, std::move(r));
}

template <Scalar F>
AlgElement<F> EtaleAlgebra<F>::scalar(const F& c) const
{
    return from_monogenic(Poly<F>::constant(c));
}

template <Scalar F>
AlgElement<F> EtaleAlgebra<F>::from_monogenic(const Poly<F>& g) const
{
    std::vector<Poly<F>> r;
    for (const auto& c : d_->comps) r.push_back(g % c);
    return AlgElement<F>(*this, std::move(r));
}

template <Scalar F>
Poly<F> EtaleAlgebra<F>::to_monogenic(const AlgElement<F>& a) const
{
    Poly<F> acc(field());
    for (std::size_t i = 0; i < d_->comps.size(); ++i) acc += a.residue(i) * d_->idempotents[i];
    return acc % d_->f;
}

// ---------------------------------------------------------------------------
// Fingerprints over ℚ

struct Fingerprint {
    std::size_t dimension = 0;
    std::vector<int> component_degrees;
    mpz_class disc_class;
    std::vector<std::pair<std::uint64_t, std::vector<int>>> patterns;  // prime -> splitting degrees
};

enum class FingerprintMatch { Agree, Inconclusive };

namespace detail {

inline bool reducible_mod(const Poly<Rational>& f, std::uint64_t p)
{
    for (const auto& c : f.coefficients())
        if (mpz_divisible_ui_p(c.den().get_mpz_t(), p) != 0) return false;
    return true;
}

inline std::vector<int> pattern_mod(const EtaleAlgebra<Rational>& a, std::uint64_t p)
{
    const PrimeField fld(p);
    std::vector<int> degs;
    for (const auto& c : a.components()) {
        std::vector<ModP> cc;
        for (const auto& x : c.coefficients()) cc.push_back(from_rational(fld, x));
        for (int d : factorize(Poly<ModP>(fld, cc)).degree_pattern()) degs.push_back(d);
    }
    std::sort(degs.begin(), degs.end());
    return degs;
}

// p is usable when every component reduces to a separable polynomial.
inline bool good_prime(const EtaleAlgebra<Rational>& a, std::uint64_t p)
{
    const PrimeField fld(p);
    for (const auto& c : a.components()) {
        if (!reducible_mod(c, p)) return false;
        std::vector<ModP> cc;
        for (const auto& x : c.coefficients()) cc.push_back(from_rational(fld, x));
        if (!is_squarefree(Poly<ModP>(fld, cc))) return false;
    }
    return true;
}

}  // namespace detail

inline Fingerprint fingerprint(const EtaleAlgebra<Rational>& a, const std::vector<std::uint64_t>& primes)
{
    Fingerprint fp{a.dimension(), a.component_degrees(), a.disc_square_class().num(), {}};
    for (auto p : primes) fp.patterns.emplace_back(p, detail::pattern_mod(a, p));
    return fp;
}

/// Odd primes below 2000, drawn with the given seed, at which both algebras
/// have separable reductions of their components.
inline std::vector<std::uint64_t> fingerprint_primes(const EtaleAlgebra<Rational>& a, const EtaleAlgebra<Rational>& b,
                                                     std::size_t count, std::uint64_t seed)
{
    std::vector<std::uint64_t> pool = detail::small_odd_primes(300);
    std::mt19937_64 rng(seed);
    std::shuffle(pool.begin(), pool.end(), rng);
    std::vector<std::uint64_t> out;
    for (auto p : pool) {
        if (out.size() == count) break;
        if (detail::good_prime(a, p) && detail::good_prime(b, p)) out.push_back(p);
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Agree when dimension, component degrees, discriminant class and the
/// splitting patterns at 20 common good primes coincide. A mismatch is
/// reported as inconclusive.
inline FingerprintMatch compare_fingerprints(const EtaleAlgebra<Rational>& a, const EtaleAlgebra<Rational>& b,
                                             std::uint64_t seed = 20)
{
    const auto primes = fingerprint_primes(a, b, 20, seed);
    const Fingerprint fa = fingerprint(a, primes), fb = fingerprint(b, primes);
    const bool same = fa.dimension == fb.dimension && fa.component_degrees == fb.component_degrees &&
                      fa.disc_class == fb.disc_class && fa.patterns == fb.patterns;
    return same ? FingerprintMatch::Agree : FingerprintMatch::Inconclusive;
}

}  // namespace qres

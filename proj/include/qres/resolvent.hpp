#pragma once

// The resolvent quadratic extension S/C of a quartic étale algebra
// L = k[x]/(P): S = k[y]/(P₆) with y the pair-sum element, C = k[c] with
// c = y(e₁ − y), and the unit-group maps σ*: L → S, τ*: S → L.

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qres/errors.hpp"
#include "qres/etale.hpp"
#include "qres/matrix.hpp"
#include "qres/poly.hpp"
#include "qres/random.hpp"

namespace qres {

struct NotGeneric : Error {
    using Error::Error;
};

/// k[u,v]/(P(u), R(u,v)) with R = (P(v) − P(u))/(v − u). Its points are the
/// ordered pairs (i, j), i ≠ j, of roots of P. Elements are three
/// coefficients of v⁰, v¹, v², each a polynomial in u reduced mod P.
template <Scalar F>
class PairRing {
public:
    using Elem = std::array<Poly<F>, 3>;

    PairRing() = default;
    explicit PairRing(Poly<F> p) : p_(std::move(p))
    {
        if (p_.degree() != 4 || !p_.is_monic()) throw PreconditionError("pair ring needs a monic quartic");
        const auto fld = p_.field();
        for (std::size_t j = 0; j < 3; ++j) {
            Poly<F> r(fld);
            for (std::size_t k = j + 1; k <= 4; ++k) r += Poly<F>::monomial(p_.coeff(k), k - 1 - j);
            r_[j] = r % p_;
        }
    }

    const Poly<F>& modulus() const { return p_; }

    Elem zero() const { return {Poly<F>(p_.field()), Poly<F>(p_.field()), Poly<F>(p_.field())}; }
    Elem one() const { return from_u(Poly<F>::constant(p_.field().one())); }

    Elem from_u(const Poly<F>& g) const
    {
        Elem e = zero();
        e[0] = g % p_;
        return e;
    }

    Elem from_v(const Poly<F>& g) const
    {
        Elem v = zero();
        v[1] = Poly<F>::constant(p_.field().one());
        Elem acc = zero();
        const auto& c = g.coefficients();
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = add(mul(acc, v), from_u(Poly<F>::constant(*it)));
        return acc;
    }

    Elem add(const Elem& a, const Elem& b) const
    {
        return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
    }

    Elem mul(const Elem& a, const Elem& b) const
    {
        std::array<Poly<F>, 5> d;
        for (auto& x : d) x = Poly<F>(p_.field());
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) d[i + j] += a[i] * b[j];
        for (std::size_t k = 4; k >= 3; --k) {
            const Poly<F> t = d[k] % p_;
            d[k] = Poly<F>(p_.field());
            for (std::size_t i = 0; i < 3; ++i) d[k - 3 + i] -= t * r_[i];
        }
        return {d[0] % p_, d[1] % p_, d[2] % p_};
    }

    /// The involution u ↔ v.
    Elem swap(const Elem& a) const
    {
        Elem out = zero();
        for (std::size_t b = 0; b < 3; ++b)
            for (std::size_t i = 0; i < a[b].size(); ++i) {
                Elem term = mul(from_v(Poly<F>::monomial(a[b].coeff(i), i)),
                                from_u(Poly<F>::monomial(p_.field().one(), b)));
                out = add(out, term);
            }
        return out;
    }

    /// Coordinates in the basis uᵃvᵇ, index 4b + a.
    std::vector<F> coords(const Elem& e) const
    {
        std::vector<F> v;
        for (std::size_t b = 0; b < 3; ++b)
            for (std::size_t a = 0; a < 4; ++a) v.push_back(e[b].coeff(a));
        return v;
    }

    Matrix<F> mult_matrix(const Elem& e) const
    {
        std::vector<std::vector<F>> cols;
        for (std::size_t b = 0; b < 3; ++b)
            for (std::size_t a = 0; a < 4; ++a) {
                Elem basis = zero();
                basis[b] = Poly<F>::monomial(p_.field().one(), a);
                cols.push_back(coords(mul(e, basis)));
            }
        return Matrix<F>::from_columns(p_.field(), 12, cols);
    }

private:
    Poly<F> p_;
    std::array<Poly<F>, 3> r_;
};

/// P₆ with P₆(Y)² = Res_x(P(x), P(Y − x)) / (16 P(Y/2)); its roots are the
/// six sums ℓᵢ + ℓⱼ, i < j.
template <Scalar F>
Poly<F> sextic_resolvent(const Poly<F>& p_in)
{
    if (p_in.degree() != 4) throw PreconditionError("sextic resolvent needs a quartic");
    const Poly<F> p = p_in.monic();
    const auto fld = p.field();
    using PF = Poly<F>;
    const PF one = PF::constant(fld.one());
    // P(Y − x) as a polynomial in x with coefficients in k[Y]
    const PF y = PF::x(fld);
    std::vector<PF> shifted(5, PF(fld));
    std::vector<PF> pw{one};  // (Y − x)^k expanded in x, coefficients in k[Y]
    for (std::size_t k = 0; k <= 4; ++k) {
        for (std::size_t j = 0; j < pw.size(); ++j) shifted[j] += pw[j] * p.coeff(k);
        std::vector<PF> nx(pw.size() + 1, PF(fld));
        for (std::size_t j = 0; j < pw.size(); ++j) {
            nx[j] += pw[j] * y;
            nx[j + 1] -= pw[j];
        }
        pw = std::move(nx);
    }
    std::vector<PF> base;
    for (std::size_t k = 0; k <= 4; ++k) base.push_back(PF::constant(p.coeff(k)));
    PF res = resultant_sylvester(base, shifted, one);
    // 16 P(Y/2) = ∏ (Y − 2ℓᵢ)
    PF diag(fld);
    for (std::size_t k = 0; k <= 4; ++k)
        diag += PF::monomial(p.coeff(k) * power(fld.from_int(2), static_cast<unsigned long>(4 - k)), k);
    if (!res.is_monic()) throw InvariantViolation("pair-sum resultant is not monic: " + res.to_string("Y"));
    return poly_exact_sqrt(exact_div(res, diag));
}

template <Scalar F>
struct Substitution {
    Poly<F> forward;  // ℓ = forward(x)
    Poly<F> back;     // x = back(ℓ)
    bool identity = true;
};

struct ResolventOptions {
    std::uint64_t seed = 0;
    long bound = 2;
    int max_attempts = 64;
    bool genericize = true;
};

namespace detail {

/// Multiplication-by-g matrix on k[x]/(p), basis 1, x, x², x³.
template <Scalar F>
Matrix<F> mult_matrix_mod(const Poly<F>& g, const Poly<F>& p)
{
    const std::size_t n = static_cast<std::size_t>(p.degree());
    std::vector<std::vector<F>> cols;
    Poly<F> col = g % p;
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<F> v;
        for (std::size_t k = 0; k < n; ++k) v.push_back(col.coeff(k));
        cols.push_back(v);
        col = (col * Poly<F>::x(p.field())) % p;
    }
    return Matrix<F>::from_columns(p.field(), n, cols);
}

/// Minimal polynomial of g in k[x]/(p) by the first linear relation among
/// its powers.
template <Scalar F>
Poly<F> krylov_minpoly(const Poly<F>& g, const Poly<F>& p)
{
    const auto fld = p.field();
    const std::size_t n = static_cast<std::size_t>(p.degree());
    std::vector<std::vector<F>> cols;
    Poly<F> pw = Poly<F>::constant(fld.one());
    for (std::size_t k = 0; k <= n; ++k) {
        std::vector<F> v;
        for (std::size_t j = 0; j < n; ++j) v.push_back(pw.coeff(j));
        if (k > 0) {
            auto sol = solve_linear(Matrix<F>::from_columns(fld, n, cols), v);
            if (sol.consistent()) {
                std::vector<F> mc;
                for (const auto& c : *sol.particular) mc.push_back(-c);
                mc.push_back(fld.one());
                return Poly<F>(fld, mc);
            }
        }
        cols.push_back(v);
        pw = (pw * g) % p;
    }
    throw InvariantViolation("no Krylov relation found");
}

/// Why the generator of k[x]/(p) fails conditions (i)–(iii), if it does.
template <Scalar F>
std::optional<std::string> genericity_defect(const Poly<F>& p)
{
    if (!is_squarefree(p)) return "quartic is not separable";
    const Poly<F> p6 = sextic_resolvent(p);
    if (!is_squarefree(p6)) return "sextic resolvent " + p6.to_string("Y") + " is not separable";
    const F e1 = -p.coeff(3);
    const Poly<F> y = Poly<F>::x(p.field());
    const Poly<F> c = (y * (Poly<F>::constant(e1) - y)) % p6;
    const Poly<F> rc = krylov_minpoly(c, p6);
    if (rc.degree() != 3) return "c has minimal polynomial of degree " + std::to_string(rc.degree());
    return std::nullopt;
}

}  // namespace detail

template <Scalar F>
class Resolvent {
public:
    using Elem = AlgElement<F>;

    /// Builds S/C for the quartic p, replacing its generator by a
    /// Tschirnhaus transform when it is not generic.
    static Resolvent build(const Poly<F>& p_in, const ResolventOptions& opt = {})
    {
        if (p_in.degree() != 4) throw PreconditionError("expected a quartic, got degree " + std::to_string(p_in.degree()));
        const Poly<F> p = p_in.monic();
        if (!is_squarefree(p)) throw NotEtale();
        Resolvent r;
        r.orig_ = EtaleAlgebra<F>::from_poly(p);
        const auto fld = p.field();
        const Poly<F> x = Poly<F>::x(fld);

        auto defect = detail::genericity_defect(p);
        Poly<F> quartic = p;
        r.sub_.forward = x;
        r.sub_.back = x;
        if (defect) {
            if (!opt.genericize) throw NotGeneric(*defect);
            Rng rng(opt.seed);
            long bound = opt.bound;
            std::vector<std::string> tried{"identity: " + *defect};
            bool found = false;
            for (int attempt = 0; attempt < opt.max_attempts && !found; ++attempt) {
                if (attempt > 0 && attempt % 8 == 0) bound *= 2;
                std::vector<F> q;
                for (int i = 0; i < 4; ++i) q.push_back(draw_scalar<F>(rng, fld, bound));
                const Poly<F> qp(fld, q);
                if (qp.degree() < 1) {
                    tried.push_back(qp.to_string() + ": constant");
                    continue;
                }
                const Poly<F> cand = detail::mult_matrix_mod(qp, p).charpoly();
                auto d = detail::genericity_defect(cand);
                if (d) {
                    tried.push_back(qp.to_string() + ": " + *d);
                    continue;
                }
                quartic = cand;
                r.sub_.forward = qp % p;
                r.sub_.identity = false;
                found = true;
            }
            if (!found) throw GenericityExhausted(std::move(tried));
            // x = back(ℓ): invert the change of basis x^i ↦ ℓ^j
            std::vector<std::vector<F>> cols;
            Poly<F> pw = Poly<F>::constant(fld.one());
            for (int j = 0; j < 4; ++j) {
                std::vector<F> v;
                for (std::size_t k = 0; k < 4; ++k) v.push_back(pw.coeff(k));
                cols.push_back(v);
                pw = (pw * r.sub_.forward) % p;
            }
            auto inv = Matrix<F>::from_columns(fld, 4, cols).inverse();
            if (!inv) throw InvariantViolation("substituted generator does not generate L");
            r.sub_.back = Poly<F>(fld, inv->apply({fld.zero(), fld.one(), fld.zero(), fld.zero()}));
        }
        r.finish(quartic);
        return r;
    }

    const EtaleAlgebra<F>& original_L() const { return orig_; }
    const Substitution<F>& substitution() const { return sub_; }
    const EtaleAlgebra<F>& L() const { return l_; }
    const EtaleAlgebra<F>& S() const { return s_; }
    const EtaleAlgebra<F>& C() const { return c_; }
    const Poly<F>& quartic() const { return l_.defining_poly(); }
    const Poly<F>& P6() const { return s_.defining_poly(); }
    const Poly<F>& rhoC() const { return c_.defining_poly(); }
    const Poly<F>& rho() const { return rho_; }
    const F& e1() const { return e1_; }
    const field_of<F>& field() const { return l_.field(); }

    /// y, the image of the generator under the differential of σ*.
    Elem y() const { return s_.generator(); }
    Elem c_in_S() const { return cs_; }
    Elem c() const { return c_.generator(); }
    Elem a() const { return c_.scalar(e1_ * e1_ / field().from_int(4)) - c_.generator(); }

    /// Element of the original algebra k[x]/(P) rewritten in the generic
    /// generator ℓ.
    Elem to_generic(const Elem& x) const
    {
        const Poly<F> g = orig_.to_monogenic(x);
        return l_.from_monogenic(g.compose(sub_.back) % quartic());
    }

    /// σ*(x): the element whose value at the pair {i, j} is x(i)·x(j).
    Elem sigma_star(const Elem& x) const
    {
        check_alg(x, l_, "σ*");
        const Poly<F> g = l_.to_monogenic(x);
        const auto prod = pair_.mul(pair_.from_u(g), pair_.from_v(g));
        auto h = sum_solver_->solve(pair_.coords(prod));
        if (!h) throw InvariantViolation("σ*: g(u)g(v) is not a polynomial in u+v");
        return s_.from_coords(*h);
    }

    /// τ*(s): the element whose value at i is ∏_{j≠i} s({i, j}), computed as
    /// the norm of h(z) from L[z]/(M_u) to L.
    Elem tau_star(const Elem& s) const
    {
        check_alg(s, s_, "τ*");
        const Poly<F> h = s_.to_monogenic(s);
        std::vector<Elem> hz;
        for (std::size_t i = 0; i < h.size(); ++i) hz.push_back(l_.scalar(h.coeff(i)));
        // columns: h·zᵏ mod M_u, k = 0, 1, 2
        std::array<std::array<Elem, 3>, 3> m;
        std::vector<Elem> cur = reduce_mod_m(hz);
        for (std::size_t k = 0; k < 3; ++k) {
            for (std::size_t i = 0; i < 3; ++i) m[i][k] = cur[i];
            std::vector<Elem> shifted{l_.zero()};
            shifted.insert(shifted.end(), cur.begin(), cur.end());
            cur = reduce_mod_m(shifted);
        }
        return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
               m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
               m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    }

    /// The nontrivial C-automorphism of S: y ↦ e₁ − y.
    Elem gamma(const Elem& s) const
    {
        check_alg(s, s_, "γ");
        const Poly<F> h = s_.to_monogenic(s);
        const Poly<F> refl = Poly<F>::constant(e1_) - Poly<F>::x(field());
        return s_.from_monogenic(h.compose(refl) % P6());
    }

    Elem norm_S_over_C(const Elem& s) const { return to_C(s * gamma(s), "N_{S/C}"); }
    Elem trace_S_over_C(const Elem& s) const { return to_C(s + gamma(s), "Tr_{S/C}"); }

    /// The inclusion C ⊆ S.
    Elem i_S_over_C(const Elem& x) const
    {
        check_alg(x, c_, "i_{S/C}");
        return c_.to_monogenic(x).eval_in(cs_, s_.one());
    }

    /// Elements of S fixed by γ, as a basis of coordinate vectors.
    std::vector<std::vector<F>> gamma_fixed_space() const
    {
        Matrix<F> g(field(), 6, 6);
        for (std::size_t j = 0; j < 6; ++j) {
            std::vector<F> e(6, field().zero());
            e[j] = field().one();
            const Poly<F> img = s_.to_monogenic(gamma(s_.from_coords(e)));
            for (std::size_t i = 0; i < 6; ++i) g(i, j) = img.coeff(i) - e[i];
        }
        return g.kernel();
    }

    const PairRing<F>& pair_ring() const { return pair_; }

private:
    Resolvent() = default;

    void finish(const Poly<F>& quartic)
    {
        const auto fld = quartic.field();
        l_ = EtaleAlgebra<F>::from_poly(quartic);
        e1_ = -quartic.coeff(3);
        const Poly<F> p6 = sextic_resolvent(quartic);
        s_ = EtaleAlgebra<F>::from_poly(p6);
        const Poly<F> y = Poly<F>::x(fld);
        const Poly<F> cpoly = (y * (Poly<F>::constant(e1_) - y)) % p6;
        cs_ = s_.from_monogenic(cpoly);
        const Poly<F> rc = detail::krylov_minpoly(cpoly, p6);
        if (rc.degree() != 3) throw InvariantViolation("c does not generate a cubic algebra");
        c_ = EtaleAlgebra<F>::from_poly(rc);

        pair_ = PairRing<F>(quartic);
        std::vector<std::vector<F>> cols;
        auto sum = pair_.add(pair_.from_u(y), pair_.from_v(y));
        auto pw = pair_.one();
        for (int k = 0; k < 6; ++k) {
            cols.push_back(pair_.coords(pw));
            pw = pair_.mul(pw, sum);
        }
        sum_solver_ = std::make_shared<ColumnSpaceSolver<F>>(Matrix<F>::from_columns(fld, 12, cols));

        std::vector<std::vector<F>> ccols;
        Poly<F> cp = Poly<F>::constant(fld.one());
        for (int k = 0; k < 3; ++k) {
            std::vector<F> v;
            for (std::size_t i = 0; i < 6; ++i) v.push_back(cp.coeff(i));
            ccols.push_back(v);
            cp = (cp * cpoly) % p6;
        }
        c_solver_ = std::make_shared<ColumnSpaceSolver<F>>(Matrix<F>::from_columns(fld, 6, ccols));

        // M_u(z) = P(z − u)/(z − 2u) over L by synthetic division
        const Elem u = l_.generator();
        std::vector<Elem> shifted{l_.zero()};  // P(z − u), low to high
        for (int k = 4; k >= 0; --k) {
            std::vector<Elem> nx(shifted.size() + 1, l_.zero());
            for (std::size_t j = 0; j < shifted.size(); ++j) {
                nx[j + 1] = nx[j + 1] + shifted[j];
                nx[j] = nx[j] - u * shifted[j];
            }
            nx[0] = nx[0] + l_.scalar(quartic.coeff(static_cast<std::size_t>(k)));
            shifted = std::move(nx);
        }
        while (shifted.size() > 5) {
            if (!shifted.back().is_zero()) throw InvariantViolation("P(z − u) has wrong degree");
            shifted.pop_back();
        }
        const Elem two_u = fld.from_int(2) * u;
        std::array<Elem, 4> b;
        b[3] = shifted[4];
        for (std::size_t j = 3; j >= 1; --j) b[j - 1] = shifted[j] + two_u * b[j];
        if (!(shifted[0] + two_u * b[0]).is_zero()) throw InvariantViolation("z − 2u does not divide P(z − u)");
        if (!(b[3] == l_.one())) throw InvariantViolation("M_u is not monic");
        m_ = {b[0], b[1], b[2]};

        rho_ = a().charpoly();
        // ρ(X) = −ρ_C(e₁²/4 − X)
        const Poly<F> alt = -(rc.compose(Poly<F>::constant(e1_ * e1_ / fld.from_int(4)) - y));
        if (!(alt == rho_)) throw InvariantViolation("the two computations of ρ disagree");
        if (!(c_.disc_square_class() == l_.disc_square_class()))
            throw InvariantViolation("L and C have different discriminant classes");
    }

    std::vector<Elem> reduce_mod_m(std::vector<Elem> h) const
    {
        while (h.size() > 3) {
            const Elem t = h.back();
            h.pop_back();
            const std::size_t d = h.size();  // degree of the removed term
            for (std::size_t i = 0; i < 3; ++i) h[d - 3 + i] = h[d - 3 + i] - t * m_[i];
        }
        while (h.size() < 3) h.push_back(l_.zero());
        return h;
    }

    Elem to_C(const Elem& s, const char* what) const
    {
        const Poly<F> g = s_.to_monogenic(s);
        std::vector<F> v;
        for (std::size_t i = 0; i < 6; ++i) v.push_back(g.coeff(i));
        auto sol = c_solver_->solve(v);
        if (!sol) throw InvariantViolation(std::string(what) + ": value does not lie in C");
        return c_.from_coords(*sol);
    }

    static void check_alg(const Elem& x, const EtaleAlgebra<F>& a, const char* what)
    {
        if (!(x.algebra() == a)) throw PreconditionError(std::string(what) + ": element of the wrong algebra");
    }

    EtaleAlgebra<F> orig_, l_, s_, c_;
    Substitution<F> sub_;
    F e1_;
    Poly<F> rho_;
    Elem cs_;
    PairRing<F> pair_;
    std::shared_ptr<const ColumnSpaceSolver<F>> sum_solver_, c_solver_;
    std::array<Elem, 3> m_;
};

}  // namespace qres

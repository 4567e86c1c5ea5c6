#pragma once

// Quadratic forms over ℚ: diagonalization, Hilbert symbols, Hasse and
// Clifford invariants, and 2-torsion Brauer classes as ramification sets.

#include <algorithm>
#include <atomic>
#include <compare>
#include <functional>
#include <iterator>
#include <map>
#include <mutex>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qres/errors.hpp"
#include "qres/integers.hpp"
#include "qres/matrix.hpp"
#include "qres/scalar.hpp"

namespace qres {

/// A place of ℚ: a prime, or ∞ (stored as 0 and ordered last).
struct Place {
    mpz_class p;

    static Place infinity() { return Place{0}; }
    bool is_infinite() const { return p == 0; }
    std::string to_string() const { return is_infinite() ? "inf" : p.get_str(); }

    friend bool operator==(const Place& a, const Place& b) { return a.p == b.p; }
    friend std::strong_ordering operator<=>(const Place& a, const Place& b)
    {
        if (a.is_infinite() || b.is_infinite()) return a.is_infinite() <=> b.is_infinite();
        const int c = cmp(a.p, b.p);
        return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
    }
};

namespace detail {

inline int mod8(const mpz_class& u)
{
    mpz_class r = u % 8;
    if (r < 0) r += 8;
    return static_cast<int>(r.get_si());
}

}  // namespace detail

namespace detail {

/// x = p^v·u with u a p-adic unit; returns v and an integer in the square
/// class of u (numerator times denominator).
inline std::pair<long, mpz_class> split_at(const Rational& x, const mpz_class& p)
{
    mpz_class n = abs(x.num()), d = x.den(), t;
    long v = static_cast<long>(mpz_remove(t.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
    n = t;
    v -= static_cast<long>(mpz_remove(t.get_mpz_t(), d.get_mpz_t(), p.get_mpz_t()));
    d = t;
    return {v, x.sign() < 0 ? mpz_class(-n * d) : mpz_class(n * d)};
}

}  // namespace detail

/// (a, b)_v: +1 when z² = ax² + by² has a nonzero solution over ℚ_v.
/// Uses only p-adic valuations and unit residues, so nothing is factored.
inline int hilbert_symbol(const Rational& a, const Rational& b, const Place& v)
{
    if (a.is_zero() || b.is_zero()) throw PreconditionError("Hilbert symbol of zero");
    if (v.is_infinite()) return (a.sign() < 0 && b.sign() < 0) ? -1 : 1;
    const mpz_class& p = v.p;
    const auto [va, A] = detail::split_at(a, p);
    const auto [vb, B] = detail::split_at(b, p);
    const int alpha = static_cast<int>(((va % 2) + 2) % 2), beta = static_cast<int>(((vb % 2) + 2) % 2);
    if (p == 2) {
        const int u = detail::mod8(A), w = detail::mod8(B);
        const int eps_u = (u % 4 == 3), eps_w = (w % 4 == 3);
        const int om_u = (u == 3 || u == 5), om_w = (w == 3 || w == 5);
        return ((eps_u * eps_w + alpha * om_w + beta * om_u) % 2) ? -1 : 1;
    }
    int s = 1;
    if (alpha && beta && mpz_class(p % 4) == 3) s = -s;
    if (beta) s *= mpz_legendre(A.get_mpz_t(), p.get_mpz_t());
    if (alpha) s *= mpz_legendre(B.get_mpz_t(), p.get_mpz_t());
    return s;
}

/// Counters behind the global product-formula assertion.
struct ProductFormulaStats {
    std::atomic<std::uint64_t> classes{0};
    std::atomic<std::uint64_t> violations{0};
    std::mutex mutex;
    std::string first_violation;  // the first class with an odd ramification set

    void record(const std::function<std::string()>& what, bool ok)
    {
        ++classes;
        if (ok) return;
        ++violations;
        std::lock_guard<std::mutex> lock(mutex);
        if (first_violation.empty()) first_violation = what();
    }

    void reset()
    {
        std::lock_guard<std::mutex> lock(mutex);
        classes = 0;
        violations = 0;
        first_violation.clear();
    }
};

inline ProductFormulaStats& product_formula_stats()
{
    static ProductFormulaStats s;
    return s;
}

/// A class in ₂Br(ℚ), given by its (finite, even) set of ramified places.
class BrauerClass2 {
public:
    BrauerClass2() = default;
    explicit BrauerClass2(std::set<Place> places) : ram_(std::move(places)) {}

    const std::set<Place>& places() const { return ram_; }
    bool trivial() const { return ram_.empty(); }
    bool even() const { return ram_.size() % 2 == 0; }

    friend BrauerClass2 operator+(const BrauerClass2& a, const BrauerClass2& b)
    {
        std::set<Place> out;
        std::set_symmetric_difference(a.ram_.begin(), a.ram_.end(), b.ram_.begin(), b.ram_.end(),
                                      std::inserter(out, out.begin()));
        return BrauerClass2(std::move(out));
    }
    BrauerClass2& operator+=(const BrauerClass2& b) { return *this = *this + b; }
    friend bool operator==(const BrauerClass2& a, const BrauerClass2& b) { return a.ram_ == b.ram_; }

    std::vector<std::string> labels() const
    {
        std::vector<std::string> out;
        for (const auto& p : ram_) out.push_back(p.to_string());
        return out;
    }

    std::string to_string() const
    {
        std::string s = "{";
        bool first = true;
        for (const auto& p : ram_) {
            s += (first ? "" : ", ") + p.to_string();
            first = false;
        }
        return s + "}";
    }

private:
    std::set<Place> ram_;
};

/// Odd primes dividing the square class of x.
inline std::set<mpz_class> odd_primes_of(const Rational& x)
{
    std::set<mpz_class> out;
    for (const auto& [p, e] : factor_integer(squarefree_part(x))) {
        (void)e;
        if (p != 2) out.insert(p);
    }
    return out;
}

/// The quaternion algebra (a, b)_ℚ as its ramification set. Every call is
/// checked against the product formula.
inline BrauerClass2 quaternion_class(const Rational& a, const Rational& b)
{
    if (a.is_zero() || b.is_zero()) throw PreconditionError("quaternion class with a zero slot");
    std::set<Place> candidates{Place{2}, Place::infinity()};
    for (const auto& p : odd_primes_of(a)) candidates.insert(Place{p});
    for (const auto& p : odd_primes_of(b)) candidates.insert(Place{p});
    std::set<Place> ram;
    for (const auto& v : candidates)
        if (hilbert_symbol(a, b, v) == -1) ram.insert(v);
    product_formula_stats().record([&] { return "(" + a.to_string() + ", " + b.to_string() + ")"; },
                                   ram.size() % 2 == 0);
    return BrauerClass2(std::move(ram));
}

class QuadForm {
public:
    QuadForm() = default;

    static QuadForm from_gram(Matrix<Rational> g)
    {
        if (g.rows() != g.cols()) throw PreconditionError("Gram matrix must be square");
        for (std::size_t i = 0; i < g.rows(); ++i)
            for (std::size_t j = 0; j < i; ++j)
                if (!(g(i, j) == g(j, i))) throw PreconditionError("Gram matrix must be symmetric");
        if (g.det().is_zero()) throw DegenerateForm("degenerate quadratic form");
        QuadForm q;
        q.gram_ = std::move(g);
        q.diag_ = diagonalize_gram(q.gram_);
        q.local_data();
        return q;
    }

    static QuadForm diagonal(const std::vector<Rational>& a)
    {
        Matrix<Rational> g(RationalField{}, a.size(), a.size());
        for (std::size_t i = 0; i < a.size(); ++i) g(i, i) = a[i];
        return from_gram(std::move(g));
    }

    /// Orthogonal sum.
    friend QuadForm operator+(const QuadForm& a, const QuadForm& b)
    {
        const std::size_t n = a.dim(), m = b.dim();
        Matrix<Rational> g(RationalField{}, n + m, n + m);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) g(i, j) = a.gram_(i, j);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) g(n + i, n + j) = b.gram_(i, j);
        return from_gram(std::move(g));
    }

    std::size_t dim() const { return gram_.rows(); }
    const Matrix<Rational>& gram() const { return gram_; }
    /// Entries of a congruent diagonal form.
    const std::vector<Rational>& diagonal_entries() const { return diag_; }

    /// Square classes of the diagonal entries. Factors every entry, so it is
    /// meant for small forms; the invariants below never call it.
    std::vector<mpz_class> diagonal_classes() const
    {
        std::vector<mpz_class> out;
        for (const auto& a : diag_) out.push_back(squarefree_part(a));
        return out;
    }

    const Rational& determinant() const { return det_; }

    /// Signed discriminant (−1)^{n(n−1)/2}·det as a squarefree integer.
    const mpz_class& disc() const { return disc_; }

    std::pair<std::size_t, std::size_t> signature() const
    {
        std::size_t pos = 0;
        for (const auto& a : diag_) pos += a.sign() > 0;
        return {pos, dim() - pos};
    }

    bool is_definite() const
    {
        auto [p, n] = signature();
        return p == 0 || n == 0;
    }

    /// ∞, 2, and the odd primes at which the form is not unimodular: those
    /// dividing det or a denominator of the Gram matrix. At every other
    /// place the Hasse–Witt invariant is trivial.
    const std::set<Place>& relevant_places() const { return places_; }

    /// Hasse–Witt invariant ∏_{i<j} (aᵢ, aⱼ)_v.
    int hasse(const Place& v) const
    {
        int s = 1;
        for (std::size_t i = 0; i < diag_.size(); ++i)
            for (std::size_t j = i + 1; j < diag_.size(); ++j) s *= hilbert_symbol(diag_[i], diag_[j], v);
        return s;
    }

    std::map<std::string, int> hasse_map() const
    {
        std::map<std::string, int> out;
        for (const auto& v : relevant_places()) out[v.to_string()] = hasse(v);
        return out;
    }

    /// Hasse–Witt invariant as a Brauer class: Σ_{i<j} (aᵢ, aⱼ). Checked
    /// against the product formula like every quaternion class.
    BrauerClass2 hasse_class() const
    {
        std::set<Place> ram;
        for (const auto& v : places_)
            if (hasse(v) == -1) ram.insert(v);
        BrauerClass2 c(std::move(ram));
        product_formula_stats().record([&] { return "Hasse-Witt class of " + diagonal_text(); }, c.even());
        return c;
    }

    std::string diagonal_text() const
    {
        std::string s = "<";
        for (std::size_t i = 0; i < diag_.size(); ++i) s += (i ? ", " : "") + diag_[i].to_string();
        return s + ">";
    }

private:
    static std::vector<Rational> diagonalize_gram(Matrix<Rational> g)
    {
        const std::size_t n = g.rows();
        std::vector<Rational> out;
        for (std::size_t k = 0; k < n; ++k) {
            if (g(k, k).is_zero()) {
                std::size_t j = k + 1;
                while (j < n && g(j, j).is_zero()) ++j;
                if (j < n) {
                    g.swap_rows(k, j);
                    g.swap_cols(k, j);
                } else {
                    j = k + 1;
                    while (j < n && g(k, j).is_zero()) ++j;
                    if (j == n) throw DegenerateForm("degenerate quadratic form");
                    // e_k ← e_k + e_j gives the diagonal entry 2·B(e_k, e_j)
                    for (std::size_t c = 0; c < n; ++c) g(k, c) = g(k, c) + g(j, c);
                    for (std::size_t r = 0; r < n; ++r) g(r, k) = g(r, k) + g(r, j);
                }
            }
            const Rational piv = g(k, k);
            out.push_back(piv);
            for (std::size_t i = k + 1; i < n; ++i) {
                const Rational f = g(i, k) / piv;
                if (f.is_zero()) continue;
                for (std::size_t c = k; c < n; ++c) g(i, c) = g(i, c) - f * g(k, c);
                for (std::size_t r = k; r < n; ++r) g(r, i) = g(r, i) - f * g(r, k);
            }
        }
        return out;
    }

    void local_data()
    {
        det_ = Rational(1);
        for (const auto& a : diag_) det_ = det_ * a;
        const std::size_t n = dim();
        const int sign = det_.sign() * ((n * (n - 1) / 2) % 2 == 1 ? -1 : 1);
        mpz_class den_lcm = 1;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), gram_(i, j).den().get_mpz_t());
        disc_ = sign;
        places_ = {Place{2}, Place::infinity()};
        std::map<mpz_class, unsigned> exps;
        for (const auto& [p, e] : factor_integer(det_.num())) exps[p] += e;
        for (const auto& [p, e] : factor_integer(det_.den())) exps[p] += e;
        for (const auto& [p, e] : exps) {
            if (e % 2 == 1) disc_ *= p;
            if (p != 2) places_.insert(Place{p});
        }
        for (const auto& [p, e] : factor_integer(den_lcm)) {
            (void)e;
            if (p != 2) places_.insert(Place{p});
        }
    }

    Matrix<Rational> gram_;
    std::vector<Rational> diag_;
    Rational det_;
    mpz_class disc_;
    std::set<Place> places_;
};

/// The hyperbolic form of dimension 2m.
inline QuadForm hyperbolic_form(std::size_t m)
{
    std::vector<Rational> a;
    for (std::size_t i = 0; i < m; ++i) {
        a.emplace_back(1);
        a.emplace_back(-1);
    }
    return QuadForm::diagonal(a);
}

/// Clifford invariant: the Hasse–Witt class corrected by dimension mod 8
/// (c = s, s+(−1,−d), s+(−1,−1), s+(−1,d) for n ≡ 1–2, 3–4, 5–6, 7–8),
/// d the signed discriminant. For even n it is the class of the Clifford
/// algebra, for odd n of the even Clifford algebra.
inline BrauerClass2 clifford_class(const QuadForm& q)
{
    const Rational d(q.disc());
    const Rational m1(-1);
    BrauerClass2 c = q.hasse_class();
    switch (q.dim() % 8) {
    case 1:
    case 2:
        break;
    case 3:
    case 4:
        c += quaternion_class(m1, -d);
        break;
    case 5:
    case 6:
        c += quaternion_class(m1, m1);
        break;
    default:
        c += quaternion_class(m1, d);
        break;
    }
    return c;
}

/// Hyperbolic over ℚ: hyperbolic at every place (Hasse–Minkowski), i.e.
/// signature 0, trivial discriminant and the Hasse invariants of the
/// hyperbolic form at every relevant finite place.
inline bool is_hyperbolic(const QuadForm& q)
{
    if (q.dim() % 2 != 0) return false;
    auto [pos, neg] = q.signature();
    if (pos != neg || q.disc() != 1) return false;
    const QuadForm h = hyperbolic_form(q.dim() / 2);
    for (const auto& v : q.relevant_places())
        if (!v.is_infinite() && q.hasse(v) != h.hasse(v)) return false;
    return true;
}

enum class AlbertClass { Split, Index2, Index4 };

inline std::string to_string(AlbertClass c)
{
    switch (c) {
    case AlbertClass::Split: return "split";
    case AlbertClass::Index2: return "index2";
    default: return "index4";
    }
}

/// Index of the biquaternion algebra with Albert form q: split when q is
/// hyperbolic, division (index 4) when q is anisotropic, i.e. definite,
/// since every 6-dimensional form over ℚ_p is isotropic.
inline AlbertClass classify_albert(const QuadForm& q)
{
    if (q.dim() != 6) throw PreconditionError("an Albert form has dimension 6");
    if (q.is_definite()) return AlbertClass::Index4;
    return is_hyperbolic(q) ? AlbertClass::Split : AlbertClass::Index2;
}

}  // namespace qres

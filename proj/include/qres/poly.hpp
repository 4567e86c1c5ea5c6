#pragma once

// Dense univariate polynomials over an exact field, coefficients stored
// low-to-high with the leading coefficient nonzero (zero polynomial = no
// coefficients).

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <string>
#include <tuple>
#include <type_traits>
#include <utility>
#include <vector>

#include "qres/errors.hpp"
#include "qres/scalar.hpp"

namespace qres {

/// Map a rational into any supported field (denominator must be a unit).
template <class Field>
auto from_rational(const Field& fld, const Rational& r) -> typename Field::element_type
{
    if constexpr (std::is_same_v<Field, RationalField>) {
        return r;
    } else {
        auto den = fld.from_mpz(r.den());
        if (den.is_zero()) throw PreconditionError("denominator vanishes modulo " + fld.name());
        return fld.from_mpz(r.num()) / den;
    }
}

template <Scalar F>
class Poly {
public:
    using field_type = field_of<F>;
    using scalar_type = F;

    Poly() = default;
    explicit Poly(field_type fld) : fld_(fld) {}
    Poly(field_type fld, std::vector<F> coeffs) : fld_(fld), c_(std::move(coeffs)) { trim(); }

    static Poly constant(const F& c) { return Poly(c.field(), {c}); }
    static Poly monomial(const F& c, std::size_t deg)
    {
        std::vector<F> v(deg + 1, c.field().zero());
        v[deg] = c;
        return Poly(c.field(), std::move(v));
    }
    static Poly x(field_type fld) { return monomial(fld.one(), 1); }
    static Poly from_ints(field_type fld, std::initializer_list<long> low_to_high)
    {
        std::vector<F> v;
        for (long a : low_to_high) v.push_back(fld.from_int(a));
        return Poly(fld, std::move(v));
    }

    const field_type& field() const { return fld_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    bool is_monic() const { return !c_.empty() && c_.back().is_one(); }
    std::size_t size() const { return c_.size(); }
    const std::vector<F>& coefficients() const { return c_; }

    F coeff(std::size_t i) const { return i < c_.size() ? c_[i] : fld_.zero(); }
    F lc() const { return c_.empty() ? fld_.zero() : c_.back(); }

    Poly monic() const
    {
        if (is_zero()) return *this;
        return *this * lc().inv();
    }

    F eval(const F& t) const
    {
        F acc = fld_.zero();
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
        return acc;
    }

    /// Evaluate at an element of any commutative ring containing the base
    /// field's scalars via `ring_one * scalar` (used for algebra elements).
    template <class R>
    R eval_in(const R& t, const R& ring_one) const
    {
        R acc = ring_one * fld_.zero();
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + ring_one * (*it);
        return acc;
    }

    /// p(q(x))
    Poly compose(const Poly& q) const
    {
        Poly acc(fld_);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * q + constant(*it);
        return acc;
    }

    Poly derivative() const
    {
        std::vector<F> d;
        for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * fld_.from_int(static_cast<long>(i)));
        return Poly(fld_, std::move(d));
    }

    Poly& operator+=(const Poly& o)
    {
        if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), fld_.zero());
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }
    Poly& operator-=(const Poly& o)
    {
        if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), fld_.zero());
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        trim();
        return *this;
    }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    Poly operator-() const
    {
        Poly r = *this;
        for (auto& a : r.c_) a = -a;
        return r;
    }

    friend Poly operator*(const Poly& a, const Poly& b)
    {
        if (a.is_zero() || b.is_zero()) return Poly(a.fld_);
        std::vector<F> r(a.c_.size() + b.c_.size() - 1, a.fld_.zero());
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        }
        return Poly(a.fld_, std::move(r));
    }
    friend Poly operator*(Poly a, const F& s)
    {
        for (auto& x : a.c_) x *= s;
        a.trim();
        return a;
    }
    friend Poly operator*(const F& s, Poly a) { return std::move(a) * s; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    /// Euclidean division; the divisor must be nonzero.
    friend std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b)
    {
        if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
        if (a.degree() < b.degree()) return {Poly(a.fld_), a};
        std::vector<F> rem = a.c_;
        std::vector<F> quo(a.c_.size() - b.c_.size() + 1, a.fld_.zero());
        const F inv_lc = b.lc().inv();
        const std::size_t db = b.c_.size() - 1;
        for (std::size_t k = quo.size(); k-- > 0;) {
            F t = rem[k + db] * inv_lc;
            quo[k] = t;
            if (t.is_zero()) continue;
            for (std::size_t j = 0; j <= db; ++j) rem[k + j] -= t * b.c_[j];
        }
        rem.resize(db);
        return {Poly(a.fld_, std::move(quo)), Poly(a.fld_, std::move(rem))};
    }
    friend Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }
    friend Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

    /// Text form such as "x^4+x+1"; integers juxtapose the variable,
    /// other coefficients use '*'.
    std::string to_string(const std::string& var = "x") const
    {
        if (is_zero()) return "0";
        std::string out;
        bool first_term = true;
        for (std::size_t k = c_.size(); k-- > 0;) {
            const F& a = c_[k];
            if (a.is_zero()) continue;
            std::string s = a.to_string();
            bool neg = false;
            if constexpr (std::is_same_v<F, Rational>) {
                neg = a.sign() < 0;
                if (neg) s = (-a).to_string();
            }
            if (neg)
                out += "-";
            else if (!first_term)
                out += "+";
            first_term = false;
            if (k == 0) {
                out += s;
                continue;
            }
            if (s != "1") out += s.find('/') == std::string::npos ? s : s + "*";
            out += var;
            if (k > 1) out += "^" + std::to_string(k);
        }
        return out;
    }

private:
    void trim()
    {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    field_type fld_{};
    std::vector<F> c_;
};

template <Scalar F>
Poly<F> exact_div(const Poly<F>& a, const Poly<F>& b)
{
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) throw InvariantViolation("polynomial division is not exact");
    return q;
}

template <Scalar F>
Poly<F> gcd(Poly<F> a, Poly<F> b)
{
    while (!b.is_zero()) {
        Poly<F> r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

/// Returns (g, s, t) with s*a + t*b = g = gcd(a, b) monic.
template <Scalar F>
std::tuple<Poly<F>, Poly<F>, Poly<F>> xgcd(const Poly<F>& a, const Poly<F>& b)
{
    const auto fld = a.field();
    Poly<F> r0 = a, r1 = b;
    Poly<F> s0 = Poly<F>::constant(fld.one()), s1(fld);
    Poly<F> t0(fld), t1 = Poly<F>::constant(fld.one());
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        Poly<F> s2 = s0 - q * s1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        Poly<F> t2 = t0 - q * t1;
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero()) return {r0, s0, t0};
    const F inv = r0.lc().inv();
    return {r0 * inv, s0 * inv, t0 * inv};
}

template <Scalar F>
Poly<F> pow_mod(Poly<F> base, mpz_class e, const Poly<F>& mod)
{
    Poly<F> acc = Poly<F>::constant(mod.field().one()) % mod;
    base = base % mod;
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t()) != 0) acc = (acc * base) % mod;
        base = (base * base) % mod;
        e >>= 1;
    }
    return acc;
}

template <Scalar F>
bool is_squarefree(const Poly<F>& f)
{
    if (f.degree() <= 0) return true;
    Poly<F> d = f.derivative();
    if (d.is_zero()) return false;
    return gcd(f, d).degree() == 0;
}

/// Res_x(f, g) by the Euclidean recurrence over a field.
template <Scalar F>
F resultant(const Poly<F>& f, const Poly<F>& g)
{
    const auto fld = f.field();
    if (f.is_zero() && g.is_zero()) throw UndefinedResultant();
    if (f.is_zero() || g.is_zero()) {
        const Poly<F>& other = f.is_zero() ? g : f;
        return other.degree() == 0 ? fld.one() : fld.zero();
    }
    Poly<F> a = f, b = g;
    F acc = fld.one();
    while (true) {
        const int n = a.degree(), m = b.degree();
        if (n == 0) return acc * power(a.lc(), static_cast<unsigned long>(m));
        if (m == 0) return acc * power(b.lc(), static_cast<unsigned long>(n));
        Poly<F> r = a % b;
        if (r.is_zero()) return fld.zero();
        const int k = r.degree();
        // Res(a,b) = (-1)^{nm} lc(b)^{n-k} Res(b, r)
        if ((n * m) % 2 == 1) acc = -acc;
        acc = acc * power(b.lc(), static_cast<unsigned long>(n - k));
        a = std::move(b);
        b = std::move(r);
    }
}

/// Determinant over an integral domain by fraction-free (Bareiss)
/// elimination. R needs +, -, *, ==, is_zero() and exact_div(R, R).
template <class R>
R det_bareiss(std::vector<std::vector<R>> m, const R& one)
{
    const std::size_t n = m.size();
    if (n == 0) return one;
    R prev = one;
    bool negate = false;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            std::size_t piv = k + 1;
            while (piv < n && m[piv][k].is_zero()) ++piv;
            if (piv == n) return one - one;
            std::swap(m[k], m[piv]);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = exact_div(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev);
            m[i][k] = one - one;
        }
        prev = m[k][k];
    }
    R d = m[n - 1][n - 1];
    return negate ? (one - one) - d : d;
}

/// Sylvester-matrix resultant over an integral domain; coefficient vectors
/// are low-to-high with nonzero leading entries.
template <class R>
R resultant_sylvester(const std::vector<R>& f, const std::vector<R>& g, const R& one)
{
    if (f.empty() || g.empty()) throw UndefinedResultant();
    const std::size_t n = f.size() - 1, m = g.size() - 1;
    const std::size_t N = n + m;
    if (N == 0) return one;
    const R zero = one - one;
    std::vector<std::vector<R>> s(N, std::vector<R>(N, zero));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j <= n; ++j) s[i][i + j] = f[n - j];
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= m; ++j) s[m + i][i + j] = g[m - j];
    return det_bareiss(std::move(s), one);
}

template <Scalar F>
F exact_div(const F& a, const F& b)
{
    return a / b;
}

/// Monic square root of a monic even-degree polynomial, or NotASquare.
template <Scalar F>
Poly<F> poly_exact_sqrt(const Poly<F>& f)
{
    if (!f.is_monic() || f.degree() % 2 != 0) throw NotASquare();
    const auto fld = f.field();
    const std::size_t n = static_cast<std::size_t>(f.degree()), h = n / 2;
    // g = x^h + g_{h-1} x^{h-1} + ... ; match the top h coefficients of f.
    std::vector<F> g(h + 1, fld.zero());
    g[h] = fld.one();
    const F two = fld.from_int(2);
    for (std::size_t k = 1; k <= h; ++k) {
        // coefficient of x^{n-k} in g^2: 2 g_{h-k} + sum_{i=1}^{k-1} g_{h-i} g_{h-k+i}
        F acc = f.coeff(n - k);
        for (std::size_t i = 1; i < k; ++i) acc -= g[h - i] * g[h - k + i];
        g[h - k] = acc / two;
    }
    Poly<F> root(fld, std::move(g));
    if (root * root != f) throw NotASquare();
    return root;
}

// ---------------------------------------------------------------------------
// Text parsing.

template <class Field>
Poly<typename Field::element_type> parse_poly(const std::string& text, const Field& fld)
{
    using F = typename Field::element_type;
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) throw ParseError("empty polynomial");
    std::vector<F> coeffs;
    char var = 0;
    std::size_t i = 0;
    auto add_term = [&](const Rational& c, std::size_t deg) {
        if (coeffs.size() <= deg) coeffs.resize(deg + 1, fld.zero());
        coeffs[deg] += from_rational(fld, c);
    };
    auto read_int = [&]() {
        std::size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        return s.substr(start, i - start);
    };
    bool first = true;
    while (i < s.size()) {
        int sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            sign = s[i] == '-' ? -1 : 1;
            ++i;
        } else if (!first) {
            throw ParseError("expected '+' or '-' at position " + std::to_string(i) + " in '" + text + "'");
        }
        first = false;
        Rational c(1);
        bool have_coeff = false;
        std::string num = read_int();
        if (!num.empty()) {
            have_coeff = true;
            std::string lit = num;
            if (i < s.size() && s[i] == '/') {
                ++i;
                std::string den = read_int();
                if (den.empty()) throw ParseError("bad fraction in '" + text + "'");
                lit += "/" + den;
            }
            c = Rational::parse(lit);
            if (i < s.size() && s[i] == '*') ++i;
        }
        std::size_t deg = 0;
        if (i < s.size() && std::isalpha(static_cast<unsigned char>(s[i]))) {
            if (var != 0 && s[i] != var) throw ParseError("mixed variables in '" + text + "'");
            var = s[i++];
            deg = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                std::string e = read_int();
                if (e.empty()) throw ParseError("missing exponent in '" + text + "'");
                deg = std::stoul(e);
            }
        } else if (!have_coeff) {
            throw ParseError("empty term in '" + text + "'");
        }
        add_term(sign < 0 ? -c : c, deg);
    }
    return Poly<F>(fld, std::move(coeffs));
}

}  // namespace qres

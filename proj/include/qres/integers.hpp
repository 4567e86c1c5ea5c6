#pragma once

// Integer helpers over GMP: primality, factorization, square classes.

#include <gmpxx.h>

#include <algorithm>
#include <map>
#include <vector>

#include "qres/errors.hpp"
#include "qres/scalar.hpp"

namespace qres {

inline bool is_probable_prime(const mpz_class& n)
{
    if (n < 2) return false;
    return mpz_probab_prime_p(n.get_mpz_t(), 30) != 0;
}

namespace detail {

// Pollard-Brent; returns a nontrivial factor of the odd composite n.
inline mpz_class brent_factor(const mpz_class& n)
{
    for (unsigned long c = 1;; ++c) {
        mpz_class y = 2, x, g = 1, q = 1, ys;
        const std::size_t m = 64;
        std::size_t r = 1;
        auto step = [&](const mpz_class& v) { return mpz_class((v * v + c) % n); };
        do {
            x = y;
            for (std::size_t i = 0; i < r; ++i) y = step(y);
            std::size_t k = 0;
            do {
                ys = y;
                for (std::size_t i = 0; i < std::min(m, r - k); ++i) {
                    y = step(y);
                    q = (q * abs(mpz_class(x - y))) % n;
                }
                mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                k += m;
            } while (k < r && g == 1);
            r *= 2;
        } while (g == 1);
        if (g == n) {
            do {
                ys = step(ys);
                mpz_class diff = abs(mpz_class(x - ys));
                mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

inline void factor_into(mpz_class n, std::map<mpz_class, unsigned>& out, unsigned mult = 1)
{
    if (n == 1) return;
    if (is_probable_prime(n)) {
        out[n] += mult;
        return;
    }
    // n = r^k: factor the root instead
    if (mpz_perfect_power_p(n.get_mpz_t()) != 0) {
        for (unsigned long k = mpz_sizeinbase(n.get_mpz_t(), 2); k >= 2; --k) {
            mpz_class r;
            if (mpz_root(r.get_mpz_t(), n.get_mpz_t(), k) != 0) {
                factor_into(r, out, mult * static_cast<unsigned>(k));
                return;
            }
        }
    }
    mpz_class d = brent_factor(n);
    factor_into(d, out, mult);
    factor_into(n / d, out, mult);
}

}  // namespace detail

/// Prime factorization of |n| (n != 0), as prime -> exponent.
inline std::map<mpz_class, unsigned> factor_integer(mpz_class n)
{
    if (n == 0) throw PreconditionError("cannot factor zero");
    n = abs(n);
    std::map<mpz_class, unsigned> out;
    for (unsigned long p : {2UL, 3UL, 5UL}) {
        while (mpz_divisible_ui_p(n.get_mpz_t(), p) != 0) {
            ++out[mpz_class(p)];
            n /= p;
        }
    }
    // wheel trial division for small primes
    for (unsigned long p = 7; p < 5000 && p * p <= n; p += 2) {
        while (mpz_divisible_ui_p(n.get_mpz_t(), p) != 0) {
            ++out[mpz_class(p)];
            n /= p;
        }
    }
    detail::factor_into(n, out);
    return out;
}

/// Squarefree integer representing the square class of a nonzero rational.
inline mpz_class squarefree_part(const Rational& x)
{
    if (x.is_zero()) throw PreconditionError("square class of zero");
    mpz_class n = x.num() * x.den();
    mpz_class out = sgn(n) < 0 ? -1 : 1;
    for (const auto& [p, e] : factor_integer(n))
        if (e % 2 == 1) out *= p;
    return out;
}

inline bool is_rational_square(const Rational& x)
{
    if (x.sign() < 0) return false;
    if (x.is_zero()) return true;
    return mpz_perfect_square_p(x.num().get_mpz_t()) != 0 && mpz_perfect_square_p(x.den().get_mpz_t()) != 0;
}

/// Exact square root of a rational square, or throws.
inline Rational rational_sqrt(const Rational& x)
{
    if (!is_rational_square(x)) throw PreconditionError("not a rational square: " + x.to_string());
    mpz_class a, b;
    mpz_sqrt(a.get_mpz_t(), x.num().get_mpz_t());
    mpz_sqrt(b.get_mpz_t(), x.den().get_mpz_t());
    return Rational(a, b);
}

/// Positive divisors of |n|, n != 0, sorted.
inline std::vector<mpz_class> positive_divisors(const mpz_class& n)
{
    std::vector<mpz_class> divs{1};
    for (const auto& [p, e] : factor_integer(n)) {
        const std::size_t base = divs.size();
        mpz_class pk = 1;
        for (unsigned k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

}  // namespace qres

#pragma once

// 50-digit complex root finder used as an independent oracle for the exact
// constructions: roots of P, pair sums and resolvent roots.

#include <boost/multiprecision/cpp_complex.hpp>

#include <algorithm>
#include <vector>

#include "qres/poly.hpp"

namespace oracle {

using Cx = boost::multiprecision::cpp_complex_50;
using Real = boost::multiprecision::cpp_bin_float_50;

inline Cx to_cx(const qres::Rational& r)
{
    return Cx(Real(r.num().get_str()) / Real(r.den().get_str()));
}

inline Cx eval(const qres::Poly<qres::Rational>& p, const Cx& z)
{
    Cx acc = 0;
    const auto& c = p.coefficients();
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + to_cx(*it);
    return acc;
}

/// All complex roots of a squarefree polynomial (Durand–Kerner).
inline std::vector<Cx> roots(const qres::Poly<qres::Rational>& p_in)
{
    const auto p = p_in.monic();
    const int n = p.degree();
    std::vector<Cx> z(n);
    const Cx seed(Real("0.4"), Real("0.9"));
    Cx pw = 1;
    for (int i = 0; i < n; ++i) {
        z[i] = pw;
        pw *= seed;
    }
    for (int it = 0; it < 2000; ++it) {
        Real delta = 0;
        for (int i = 0; i < n; ++i) {
            Cx den = 1;
            for (int j = 0; j < n; ++j)
                if (j != i) den *= z[i] - z[j];
            const Cx step = eval(p, z[i]) / den;
            z[i] -= step;
            delta = std::max(delta, Real(abs(step)));
        }
        if (delta < Real("1e-45")) break;
    }
    return z;
}

inline bool close(const Cx& a, const Cx& b, const char* tol = "1e-30")
{
    return abs(a - b) < Real(tol) * (1 + abs(a));
}

/// True when the two lists agree as multisets up to tolerance.
inline bool same_multiset(std::vector<Cx> a, std::vector<Cx> b)
{
    if (a.size() != b.size()) return false;
    for (const auto& x : a) {
        auto it = std::find_if(b.begin(), b.end(), [&](const Cx& y) { return close(x, y); });
        if (it == b.end()) return false;
        b.erase(it);
    }
    return true;
}

}  // namespace oracle

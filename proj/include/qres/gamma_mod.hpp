#pragma once

// Permutation lattices of a 4-element set X: ℤ[X], ℤ[∧²] (pairs) and ℤ[ℛ]
// (partitions into two pairs), the maps between them as integer matrices,
// and the exact sequences and commuting squares they satisfy.

#include <algorithm>
#include <array>
#include <map>
#include <string>
#include <vector>

#include "qres/errors.hpp"
#include "qres/intmatrix.hpp"

namespace qres::gm {

enum class BasisKind { Trivial, X, Pairs, Partitions };

inline std::size_t basis_size(BasisKind k)
{
    switch (k) {
    case BasisKind::Trivial: return 1;
    case BasisKind::X: return 4;
    case BasisKind::Pairs: return 6;
    case BasisKind::Partitions: return 3;
    }
    return 0;
}

inline std::string basis_name(BasisKind k)
{
    switch (k) {
    case BasisKind::Trivial: return "Z";
    case BasisKind::X: return "Z[X]";
    case BasisKind::Pairs: return "Z[P]";
    case BasisKind::Partitions: return "Z[R]";
    }
    return "?";
}

using Pair = std::array<int, 2>;

/// Pairs in lexicographic order: 12, 13, 14, 23, 24, 34 (elements 0-based).
inline const std::array<Pair, 6>& pairs()
{
    static const std::array<Pair, 6> p{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
    return p;
}

inline std::size_t pair_index(int a, int b)
{
    if (a > b) std::swap(a, b);
    for (std::size_t i = 0; i < 6; ++i)
        if (pairs()[i][0] == a && pairs()[i][1] == b) return i;
    throw PreconditionError("not a pair of distinct elements of X");
}

inline std::size_t complement_pair(std::size_t i)
{
    std::vector<int> rest;
    for (int x = 0; x < 4; ++x)
        if (x != pairs()[i][0] && x != pairs()[i][1]) rest.push_back(x);
    return pair_index(rest[0], rest[1]);
}

/// Partition containing pair i: {12|34} = 0, {13|24} = 1, {14|23} = 2.
inline std::size_t partition_of_pair(std::size_t i) { return std::min(i, complement_pair(i)); }

inline std::string pair_label(std::size_t i)
{
    return std::to_string(pairs()[i][0] + 1) + std::to_string(pairs()[i][1] + 1);
}

inline std::string partition_label(std::size_t r) { return pair_label(r) + "|" + pair_label(complement_pair(r)); }

struct ModuleMap {
    std::string name;
    BasisKind source, target;
    IntMatrix matrix;  // rows indexed by target basis, columns by source basis
};

inline const std::vector<std::string>& map_names()
{
    static const std::vector<std::string> n{"epsilon_X", "nu_X",      "sigma",     "tau",        "gamma",       "id_minus_gamma",
                                            "eps_rel",   "nu_rel",    "epsilon_R", "nu_R",       "epsilon_P6",  "nu_P6"};
    return n;
}

namespace detail {

inline IntMatrix ones(std::size_t r, std::size_t c)
{
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = 1;
    return m;
}

}  // namespace detail

/// The named map, built from its definition on basis elements.
inline ModuleMap build_map(const std::string& name)
{
    using BK = BasisKind;
    if (name == "epsilon_X") return {name, BK::X, BK::Trivial, detail::ones(1, 4)};
    if (name == "nu_X") return {name, BK::Trivial, BK::X, detail::ones(4, 1)};
    if (name == "epsilon_R") return {name, BK::Partitions, BK::Trivial, detail::ones(1, 3)};
    if (name == "nu_R") return {name, BK::Trivial, BK::Partitions, detail::ones(3, 1)};
    if (name == "epsilon_P6") return {name, BK::Pairs, BK::Trivial, detail::ones(1, 6)};
    if (name == "nu_P6") return {name, BK::Trivial, BK::Pairs, detail::ones(6, 1)};
    if (name == "sigma") {
        // λ ↦ sum of its two elements
        IntMatrix m(4, 6);
        for (std::size_t l = 0; l < 6; ++l)
            for (int x : pairs()[l]) m(x, l) = 1;
        return {name, BK::Pairs, BK::X, m};
    }
    if (name == "tau") {
        // x ↦ sum of the pairs containing x
        IntMatrix m(6, 4);
        for (int x = 0; x < 4; ++x)
            for (int y = 0; y < 4; ++y)
                if (y != x) m(pair_index(x, y), x) = 1;
        return {name, BK::X, BK::Pairs, m};
    }
    if (name == "gamma") {
        IntMatrix m(6, 6);
        for (std::size_t l = 0; l < 6; ++l) m(complement_pair(l), l) = 1;
        return {name, BK::Pairs, BK::Pairs, m};
    }
    if (name == "id_minus_gamma") return {name, BK::Pairs, BK::Pairs, IntMatrix::identity(6) - build_map("gamma").matrix};
    if (name == "eps_rel") {
        IntMatrix m(3, 6);
        for (std::size_t l = 0; l < 6; ++l) m(partition_of_pair(l), l) = 1;
        return {name, BK::Pairs, BK::Partitions, m};
    }
    if (name == "nu_rel") {
        // {λ, γλ} ↦ λ + γλ
        IntMatrix m(6, 3);
        for (std::size_t r = 0; r < 3; ++r) {
            m(r, r) = 1;
            m(complement_pair(r), r) = 1;
        }
        return {name, BK::Partitions, BK::Pairs, m};
    }
    throw PreconditionError("unknown module map '" + name + "'");
}

/// Negative control: σ with σ(12) = e1+e2-e3-e4 and σ(34) = 2(e3+e4). The
/// complexes stay well defined but prop1 acquires ℤ/2 homology at ℤ[X].
inline IntMatrix tampered_sigma()
{
    IntMatrix m = build_map("sigma").matrix;
    const std::size_t a = pair_index(0, 1), b = pair_index(2, 3);
    for (std::size_t x : {2U, 3U}) {
        m(x, a) -= 1;
        m(x, b) += 1;
    }
    return m;
}

/// σ∘τ as a 4×4 matrix.
inline IntMatrix composite_sigma_tau() { return build_map("sigma").matrix * build_map("tau").matrix; }

// ---------------------------------------------------------------------------
// Permutation action

using Perm = std::array<int, 4>;

inline std::vector<Perm> all_permutations()
{
    std::vector<Perm> out;
    Perm p{0, 1, 2, 3};
    do out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}

/// Permutation matrix of g on the given basis: column b is the image of b.
inline IntMatrix perm_matrix(const Perm& g, BasisKind kind)
{
    const std::size_t n = basis_size(kind);
    IntMatrix m(n, n);
    for (std::size_t b = 0; b < n; ++b) {
        std::size_t img = 0;
        switch (kind) {
        case BasisKind::Trivial: img = 0; break;
        case BasisKind::X: img = static_cast<std::size_t>(g[b]); break;
        case BasisKind::Pairs: img = pair_index(g[pairs()[b][0]], g[pairs()[b][1]]); break;
        case BasisKind::Partitions: img = partition_of_pair(pair_index(g[pairs()[b][0]], g[pairs()[b][1]])); break;
        }
        m(img, b) = 1;
    }
    return m;
}

inline bool is_equivariant(const ModuleMap& f)
{
    for (const auto& g : all_permutations())
        if (!(perm_matrix(g, f.target) * f.matrix == f.matrix * perm_matrix(g, f.source))) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Duality and commuting squares

struct DualityReport {
    bool tau_is_sigma_transpose = false;
    bool nu_is_epsilon_transpose = false;
    bool gamma_symmetric = false;
    bool ok() const { return tau_is_sigma_transpose && nu_is_epsilon_transpose && gamma_symmetric; }
};

inline DualityReport check_duality()
{
    DualityReport r;
    r.tau_is_sigma_transpose = build_map("tau").matrix == build_map("sigma").matrix.transpose();
    r.nu_is_epsilon_transpose = build_map("nu_X").matrix == build_map("epsilon_X").matrix.transpose() &&
                                build_map("nu_R").matrix == build_map("epsilon_R").matrix.transpose() &&
                                build_map("nu_P6").matrix == build_map("epsilon_P6").matrix.transpose() &&
                                build_map("nu_rel").matrix == build_map("eps_rel").matrix.transpose();
    const IntMatrix g = build_map("gamma").matrix;
    r.gamma_symmetric = g == g.transpose();
    return r;
}

/// Square with top f: A→B, left e: A→C, right g: B→D, bottom h: C→D;
/// commutes iff g∘f = h∘e.
inline bool check_square(const IntMatrix& f, const IntMatrix& g, const IntMatrix& e, const IntMatrix& h)
{
    if (g.cols() != f.rows() || h.cols() != e.rows() || f.cols() != e.cols() || g.rows() != h.rows())
        throw PreconditionError("check_square: incompatible shapes");
    return g * f == h * e;
}

struct NamedSquare {
    std::string name;
    bool commutes = false;
};

inline std::vector<NamedSquare> standard_squares()
{
    const auto M = [](const char* n) { return build_map(n).matrix; };
    const IntMatrix two = 2 * IntMatrix::identity(1);
    // σ × ε_∧² : ℤ[∧²] → ℤ[X] × ℤ and (ν, 2) : ℤ → ℤ[X] × ℤ
    const IntMatrix sigma_eps = IntMatrix::vcat(M("sigma"), M("epsilon_P6"));
    const IntMatrix nu_two = IntMatrix::vcat(M("nu_X"), two);
    return {
        {"diag1.left: epsilon_X o sigma = 2 epsilon_P6", check_square(M("sigma"), M("epsilon_X"), M("epsilon_P6"), two)},
        {"diag1.right: sigma o nu_rel = nu_X o epsilon_R", check_square(M("nu_rel"), M("sigma"), M("epsilon_R"), M("nu_X"))},
        {"diag2: (sigma x epsilon_P6) o nu_rel = (nu_X, 2) o epsilon_R",
         check_square(M("nu_rel"), sigma_eps, M("epsilon_R"), nu_two)},
        {"diag3.left: tau o nu_X = nu_P6 o 2", check_square(M("nu_X"), M("tau"), two, M("nu_P6"))},
        {"diag3.right: eps_rel o tau = nu_R o epsilon_X", check_square(M("tau"), M("eps_rel"), M("epsilon_X"), M("nu_R"))},
    };
}

// ---------------------------------------------------------------------------
// Sequences

struct Sequence {
    std::string name;
    std::vector<Lattice> nodes;
    std::vector<LatticeMap> maps;
};

/// Overrides used by negative controls: replace a named map's matrix.
using MapOverrides = std::map<std::string, IntMatrix>;

inline std::vector<Sequence> standard_sequences(const MapOverrides& over = {})
{
    const auto M = [&](const std::string& n) {
        auto it = over.find(n);
        return it != over.end() ? it->second : build_map(n).matrix;
    };
    const IntMatrix eps_X = M("epsilon_X"), nu_X = M("nu_X"), sigma = M("sigma"), tau = M("tau");
    const IntMatrix eps_R = M("epsilon_R"), nu_R = M("nu_R"), eps_P = M("epsilon_P6"), nu_P = M("nu_P6");
    const IntMatrix eps_rel = M("eps_rel"), nu_rel = M("nu_rel"), id_g = M("id_minus_gamma");

    const Lattice ZX = Lattice::free("Z[X]", 4), ZP = Lattice::free("Z[P]", 6), ZR = Lattice::free("Z[R]", 3);
    const Lattice Z = Lattice::free("Z", 1);
    const Lattice Z2{"Z/2", 1, IntMatrix::identity(1), 2 * IntMatrix::identity(1)};
    const Lattice IR = Lattice::kernel_of("I[R]", eps_R), IP = Lattice::kernel_of("I[P]", eps_P),
                  IX = Lattice::kernel_of("I[X]", eps_X);
    const Lattice JR = Lattice::cokernel_of("J[R]", nu_R), JP = Lattice::cokernel_of("J[P]", nu_P),
                  JX = Lattice::cokernel_of("J[X]", nu_X);
    const Lattice J_rel = Lattice::cokernel_of("J[P/R]", nu_rel), I_rel = Lattice::kernel_of("I[P/R]", eps_rel);
    const IntMatrix sigma_eps = IntMatrix::vcat(sigma, eps_P);
    const IntMatrix nu_two = IntMatrix::vcat(nu_X, 2 * IntMatrix::identity(1));
    const Lattice JpX = Lattice::cokernel_of("J'[X]", nu_two);
    const Lattice ZXxZ = Lattice::free("Z[X]xZ", 5);
    const IntMatrix eps_m2 = IntMatrix::hcat(eps_X, (-2) * IntMatrix::identity(1));
    const IntMatrix tau_nu = IntMatrix::hcat(tau, nu_P);
    const IntMatrix nu_m2 = IntMatrix::vcat(nu_X, (-2) * IntMatrix::identity(1));

    return {
        {"exseq1", {ZR, ZP, ZP, ZR}, {{"nu_rel", nu_rel}, {"id_minus_gamma", id_g}, {"eps_rel", eps_rel}}},
        {"prop1", {IR, ZP, ZX, Z2}, {{"nu_rel", nu_rel}, {"sigma", sigma}, {"epsilon_X mod 2", eps_X}}},
        {"corol2", {IR, IP, IX}, {{"nu_rel", nu_rel}, {"sigma_I", sigma}}},
        {"corol3", {J_rel, JpX, Z}, {{"sigma'", sigma_eps}, {"epsilon'", eps_m2}}},
        {"prop1bis", {IR, ZP, ZXxZ, Z}, {{"nu_rel", nu_rel}, {"sigma x epsilon_P6", sigma_eps}, {"(epsilon_X,-2)", eps_m2}}},
        {"prop1bisdual", {Z, ZXxZ, ZP, JR}, {{"nu_X x -2", nu_m2}, {"(tau,nu_P6)", tau_nu}, {"eps_rel", eps_rel}}},
        {"prop2", {JX, JP, JR}, {{"tau_J", tau}, {"eps_rel", eps_rel}}},
        {"I=J", {J_rel, I_rel}, {{"id_minus_gamma", id_g}}},
    };
}

inline std::vector<ExactnessReport> check_all_sequences(const MapOverrides& over = {})
{
    std::vector<ExactnessReport> out;
    for (const auto& s : standard_sequences(over)) out.push_back(check_exact(s.name, s.nodes, s.maps));
    return out;
}

}  // namespace qres::gm

#pragma once

// Integer matrices, Smith normal form, and homology of complexes of
// subquotient lattices K/Q ⊆ ℤ^n.

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qres/errors.hpp"
#include "qres/matrix.hpp"
#include "qres/scalar.hpp"

namespace qres {

class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, 0) {}
    IntMatrix(std::size_t rows, std::size_t cols, std::initializer_list<long> row_major) : IntMatrix(rows, cols)
    {
        if (row_major.size() != rows * cols) throw PreconditionError("IntMatrix: entry count mismatch");
        std::size_t k = 0;
        for (long v : row_major) a_[k++] = v;
    }

    static IntMatrix identity(std::size_t n)
    {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    static IntMatrix from_columns(std::size_t rows, const std::vector<std::vector<mpz_class>>& cols)
    {
        IntMatrix m(rows, cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (cols[j].size() != rows) throw PreconditionError("IntMatrix: column length mismatch");
            for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    mpz_class& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const mpz_class& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    std::vector<mpz_class> column(std::size_t j) const
    {
        std::vector<mpz_class> v;
        for (std::size_t i = 0; i < rows_; ++i) v.push_back((*this)(i, j));
        return v;
    }

    IntMatrix transpose() const
    {
        IntMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b)
    {
        if (a.cols_ != b.rows_)
            throw PreconditionError("IntMatrix product shape mismatch: " + a.shape() + " * " + b.shape());
        IntMatrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                if (a(i, k) == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
            }
        return c;
    }
    friend IntMatrix operator*(long s, IntMatrix m)
    {
        for (auto& x : m.a_) x *= s;
        return m;
    }
    friend IntMatrix operator+(IntMatrix a, const IntMatrix& b)
    {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw PreconditionError("IntMatrix sum shape mismatch");
        for (std::size_t k = 0; k < a.a_.size(); ++k) a.a_[k] += b.a_[k];
        return a;
    }
    friend IntMatrix operator-(IntMatrix a, const IntMatrix& b) { return a + (-1) * b; }
    friend bool operator==(const IntMatrix& a, const IntMatrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }

    /// Block [A | B] (same row count).
    static IntMatrix hcat(const IntMatrix& a, const IntMatrix& b)
    {
        if (a.rows_ != b.rows_) throw PreconditionError("hcat row mismatch");
        IntMatrix m(a.rows_, a.cols_ + b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            for (std::size_t j = 0; j < a.cols_; ++j) m(i, j) = a(i, j);
            for (std::size_t j = 0; j < b.cols_; ++j) m(i, a.cols_ + j) = b(i, j);
        }
        return m;
    }
    /// Block [A ; B] (same column count).
    static IntMatrix vcat(const IntMatrix& a, const IntMatrix& b)
    {
        if (a.cols_ != b.cols_) throw PreconditionError("vcat column mismatch");
        IntMatrix m(a.rows_ + b.rows_, a.cols_);
        for (std::size_t j = 0; j < a.cols_; ++j) {
            for (std::size_t i = 0; i < a.rows_; ++i) m(i, j) = a(i, j);
            for (std::size_t i = 0; i < b.rows_; ++i) m(a.rows_ + i, j) = b(i, j);
        }
        return m;
    }

    bool is_zero() const
    {
        for (const auto& x : a_)
            if (x != 0) return false;
        return true;
    }

    std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

    std::string to_string() const
    {
        std::string s = "[";
        for (std::size_t i = 0; i < rows_; ++i) {
            s += i ? ", [" : "[";
            for (std::size_t j = 0; j < cols_; ++j) s += (j ? "," : "") + (*this)(i, j).get_str();
            s += "]";
        }
        return s + "]";
    }

    Matrix<Rational> to_rational() const
    {
        Matrix<Rational> m(RationalField{}, rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) m(i, j) = Rational((*this)(i, j));
        return m;
    }

    void swap_rows(std::size_t i, std::size_t j)
    {
        if (i == j) return;
        for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
    }
    void swap_cols(std::size_t i, std::size_t j)
    {
        if (i == j) return;
        for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, i), (*this)(r, j));
    }
    /// row_i += k * row_j
    void add_row(std::size_t i, std::size_t j, const mpz_class& k)
    {
        for (std::size_t c = 0; c < cols_; ++c) (*this)(i, c) += k * (*this)(j, c);
    }
    /// col_i += k * col_j
    void add_col(std::size_t i, std::size_t j, const mpz_class& k)
    {
        for (std::size_t r = 0; r < rows_; ++r) (*this)(r, i) += k * (*this)(r, j);
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<mpz_class> a_;
};

/// D = U·M·V with U, V unimodular; D diagonal, nonnegative, d_i | d_{i+1}.
struct SmithForm {
    IntMatrix D, U, V, U_inv, V_inv;
    std::size_t rank = 0;

    std::vector<mpz_class> diagonal() const
    {
        std::vector<mpz_class> d;
        for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) d.push_back(D(i, i));
        return d;
    }
};

inline SmithForm smith_normal_form(const IntMatrix& m)
{
    const std::size_t r = m.rows(), c = m.cols();
    SmithForm s{m, IntMatrix::identity(r), IntMatrix::identity(c), IntMatrix::identity(r), IntMatrix::identity(c), 0};
    IntMatrix& A = s.D;
    // Each elementary operation is mirrored on U (rows), U_inv (inverse, columns),
    // V (columns) and V_inv (inverse, rows).
    auto swap_r = [&](std::size_t i, std::size_t j) {
        A.swap_rows(i, j);
        s.U.swap_rows(i, j);
        s.U_inv.swap_cols(i, j);
    };
    auto swap_c = [&](std::size_t i, std::size_t j) {
        A.swap_cols(i, j);
        s.V.swap_cols(i, j);
        s.V_inv.swap_rows(i, j);
    };
    auto addr = [&](std::size_t i, std::size_t j, const mpz_class& k) {  // row_i += k row_j
        A.add_row(i, j, k);
        s.U.add_row(i, j, k);
        s.U_inv.add_col(j, i, -k);
    };
    auto addc = [&](std::size_t i, std::size_t j, const mpz_class& k) {  // col_i += k col_j
        A.add_col(i, j, k);
        s.V.add_col(i, j, k);
        s.V_inv.add_row(j, i, -k);
    };
    auto negr = [&](std::size_t i) {
        for (std::size_t k = 0; k < c; ++k) A(i, k) = -A(i, k);
        for (std::size_t k = 0; k < r; ++k) s.U(i, k) = -s.U(i, k);
        for (std::size_t k = 0; k < r; ++k) s.U_inv(k, i) = -s.U_inv(k, i);
    };

    for (std::size_t t = 0; t < std::min(r, c); ++t) {
        // pivot: smallest nonzero absolute value in the trailing block
        auto place_min = [&]() {
            std::size_t bi = r, bj = c;
            for (std::size_t i = t; i < r; ++i)
                for (std::size_t j = t; j < c; ++j)
                    if (A(i, j) != 0 && (bi == r || abs(A(i, j)) < abs(A(bi, bj)))) {
                        bi = i;
                        bj = j;
                    }
            if (bi == r) return false;
            swap_r(t, bi);
            swap_c(t, bj);
            return true;
        };
        if (!place_min()) break;
        while (true) {
            bool dirty = false;
            for (std::size_t i = t + 1; i < r; ++i) {
                if (A(i, t) == 0) continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), A(i, t).get_mpz_t(), A(t, t).get_mpz_t());
                addr(i, t, -q);
                if (A(i, t) != 0) dirty = true;
            }
            for (std::size_t j = t + 1; j < c; ++j) {
                if (A(t, j) == 0) continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), A(t, j).get_mpz_t(), A(t, t).get_mpz_t());
                addc(j, t, -q);
                if (A(t, j) != 0) dirty = true;
            }
            if (dirty) {
                place_min();
                continue;
            }
            // divisibility of the trailing block by the pivot
            bool fixed = false;
            for (std::size_t i = t + 1; i < r && !fixed; ++i)
                for (std::size_t j = t + 1; j < c; ++j)
                    if (A(i, j) % A(t, t) != 0) {
                        addr(t, i, 1);
                        fixed = true;
                        break;
                    }
            if (!fixed) break;
        }
        if (A(t, t) < 0) negr(t);
        ++s.rank;
    }
    return s;
}

/// Basis (columns) of the integer kernel {x ∈ ℤ^cols : M x = 0}.
inline IntMatrix integer_kernel(const IntMatrix& m)
{
    const SmithForm s = smith_normal_form(m);
    IntMatrix k(m.cols(), m.cols() - s.rank);
    for (std::size_t j = s.rank; j < m.cols(); ++j)
        for (std::size_t i = 0; i < m.cols(); ++i) k(i, j - s.rank) = s.V(i, j);
    return k;
}

/// Basis (columns) of the lattice spanned by the columns of g.
inline IntMatrix lattice_basis(const IntMatrix& g)
{
    const SmithForm s = smith_normal_form(g);
    // g = U⁻¹ D V⁻¹, so its column lattice is spanned by d_i · (column i of U⁻¹)
    IntMatrix b(g.rows(), s.rank);
    for (std::size_t j = 0; j < s.rank; ++j)
        for (std::size_t i = 0; i < g.rows(); ++i) b(i, j) = s.U_inv(i, j) * s.D(j, j);
    return b;
}

/// Integer coordinates of v in a lattice basis b (full column rank), or
/// nullopt when v is outside the lattice.
inline std::optional<std::vector<mpz_class>> lattice_coordinates(const IntMatrix& b, const std::vector<mpz_class>& v)
{
    if (b.cols() == 0) {
        for (const auto& x : v)
            if (x != 0) return std::nullopt;
        return std::vector<mpz_class>{};
    }
    std::vector<Rational> rv;
    for (const auto& x : v) rv.emplace_back(x);
    auto sol = solve_linear(b.to_rational(), rv);
    if (!sol.consistent()) return std::nullopt;
    if (!sol.kernel.empty()) throw PreconditionError("lattice_coordinates: basis is not independent");
    std::vector<mpz_class> out;
    for (const auto& x : *sol.particular) {
        if (!x.is_integer()) return std::nullopt;
        out.push_back(x.num());
    }
    return out;
}

inline bool lattice_contains(const IntMatrix& b, const IntMatrix& gens)
{
    const IntMatrix basis = lattice_basis(b);
    for (std::size_t j = 0; j < gens.cols(); ++j)
        if (!lattice_coordinates(basis, gens.column(j))) return false;
    return true;
}

/// Subquotient K/Q of ℤ^n, with K and Q given by generator columns, Q ⊆ K.
struct Lattice {
    std::string name;
    std::size_t ambient = 0;
    IntMatrix K;  // ambient x k
    IntMatrix Q;  // ambient x q

    static Lattice free(std::string name, std::size_t n) { return {std::move(name), n, IntMatrix::identity(n), IntMatrix(n, 0)}; }
    static Lattice zero() { return {"0", 0, IntMatrix(0, 0), IntMatrix(0, 0)}; }
    static Lattice kernel_of(std::string name, const IntMatrix& f)
    {
        return {std::move(name), f.cols(), integer_kernel(f), IntMatrix(f.cols(), 0)};
    }
    static Lattice cokernel_of(std::string name, const IntMatrix& f)
    {
        return {std::move(name), f.rows(), IntMatrix::identity(f.rows()), f};
    }
};

/// A ℤ-linear map between subquotients, given by a lift on the ambient spaces.
struct LatticeMap {
    std::string name;
    IntMatrix matrix;  // target.ambient x source.ambient
};

/// Homology of one node: torsion invariant factors (> 1) and free rank.
struct NodeHomology {
    std::string node;
    std::vector<mpz_class> torsion;
    std::size_t free_rank = 0;

    bool trivial() const { return torsion.empty() && free_rank == 0; }

    /// e.g. "0", "Z/2", "Z^2 + Z/3"
    std::string to_string() const
    {
        if (trivial()) return "0";
        std::string s;
        if (free_rank > 0) s = free_rank == 1 ? "Z" : "Z^" + std::to_string(free_rank);
        for (const auto& d : torsion) s += (s.empty() ? "" : " + ") + std::string("Z/") + d.get_str();
        return s;
    }
};

struct ExactnessReport {
    std::string name;
    std::vector<NodeHomology> nodes;           // one per node, including ends
    std::vector<std::string> defects;          // ill-defined maps or non-complex
    bool exact() const
    {
        if (!defects.empty()) return false;
        for (const auto& n : nodes)
            if (!n.trivial()) return false;
        return true;
    }
};

/// Checks that `f` maps K_src into K_tgt and Q_src into Q_tgt.
inline bool well_defined(const LatticeMap& f, const Lattice& src, const Lattice& tgt)
{
    if (f.matrix.rows() != tgt.ambient || f.matrix.cols() != src.ambient)
        throw PreconditionError("map " + f.name + " has shape " + f.matrix.shape() + ", expected " +
                                std::to_string(tgt.ambient) + "x" + std::to_string(src.ambient));
    if (tgt.ambient == 0) return true;
    return lattice_contains(tgt.K, f.matrix * src.K) && lattice_contains(tgt.Q, f.matrix * src.Q);
}

/// Homology at B of A --f--> B --g--> C, all subquotients.
inline NodeHomology homology_at(const Lattice& a, const LatticeMap& f, const Lattice& b, const LatticeMap& g,
                                const Lattice& c)
{
    NodeHomology h{b.name, {}, 0};
    if (b.ambient == 0) return h;
    // Z = {x ∈ K_B : g x ∈ Q_C}: kernel of [g K_B | -Q_C], projected to the K_B part
    const IntMatrix gk = g.matrix * b.K;
    IntMatrix z_gens;
    if (c.ambient == 0) {
        z_gens = b.K;
    } else {
        const IntMatrix sys = IntMatrix::hcat(gk, (-1) * c.Q);
        const IntMatrix ker = integer_kernel(sys);
        IntMatrix coords(b.K.cols(), ker.cols());
        for (std::size_t j = 0; j < ker.cols(); ++j)
            for (std::size_t i = 0; i < b.K.cols(); ++i) coords(i, j) = ker(i, j);
        z_gens = b.K * coords;
    }
    const IntMatrix z = lattice_basis(z_gens);
    // W = f(K_A) + Q_B, in coordinates of the basis of Z
    const IntMatrix w_gens = IntMatrix::hcat(f.matrix * a.K, b.Q);
    IntMatrix w(z.cols(), w_gens.cols());
    for (std::size_t j = 0; j < w_gens.cols(); ++j) {
        auto co = lattice_coordinates(z, w_gens.column(j));
        if (!co) throw InvariantViolation("not a complex at " + b.name + ": image leaves the cycles");
        for (std::size_t i = 0; i < z.cols(); ++i) w(i, j) = (*co)[i];
    }
    const SmithForm s = smith_normal_form(w);
    for (std::size_t i = 0; i < s.rank; ++i)
        if (s.D(i, i) != 1) h.torsion.push_back(s.D(i, i));
    h.free_rank = z.cols() - s.rank;
    return h;
}

/// Homology at every node of 0 -> L_0 -> L_1 -> ... -> L_m -> 0.
inline ExactnessReport check_exact(const std::string& name, const std::vector<Lattice>& nodes,
                                   const std::vector<LatticeMap>& maps)
{
    if (maps.size() + 1 != nodes.size()) throw PreconditionError("check_exact: need one map between consecutive nodes");
    ExactnessReport rep{name, {}, {}};
    for (std::size_t i = 0; i < maps.size(); ++i)
        if (!well_defined(maps[i], nodes[i], nodes[i + 1]))
            rep.defects.push_back(maps[i].name + " is not well defined on " + nodes[i].name + " -> " + nodes[i + 1].name);
    if (!rep.defects.empty()) return rep;
    const Lattice zero = Lattice::zero();
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const Lattice& prev = i == 0 ? zero : nodes[i - 1];
        const Lattice& next = i + 1 == nodes.size() ? zero : nodes[i + 1];
        LatticeMap f{"0", i == 0 ? IntMatrix(nodes[i].ambient, 0) : maps[i - 1].matrix};
        LatticeMap g{"0", i + 1 == nodes.size() ? IntMatrix(0, nodes[i].ambient) : maps[i].matrix};
        try {
            rep.nodes.push_back(homology_at(prev, f, nodes[i], g, next));
        } catch (const InvariantViolation& e) {
            rep.defects.push_back(e.what());
            rep.nodes.push_back({nodes[i].name, {}, 0});
        }
    }
    return rep;
}

}  // namespace qres

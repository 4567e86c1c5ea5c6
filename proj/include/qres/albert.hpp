#pragma once

// Albert forms of the classes cor_{C/k}(S/C, x): the transfer of ⟨x⟩N_{S/C}
// along the linear form s on C with s(1) = s(c) = 0, s(c²) = 1.

#include <string>
#include <vector>

#include "qres/qform.hpp"
#include "qres/resolvent.hpp"

namespace qres {

using RationalResolvent = Resolvent<Rational>;
using QElem = AlgElement<Rational>;

/// s(α + βc + γc²) = scale·γ.
inline Rational transfer_functional(const RationalResolvent& rd, const QElem& x, const Rational& scale = Rational(1))
{
    return scale * rd.C().to_monogenic(x).coeff(2);
}

/// The k-basis 1, c, c², y, cy, c²y of S.
inline std::vector<QElem> transfer_basis(const RationalResolvent& rd)
{
    const QElem c = rd.c_in_S(), y = rd.y();
    return {rd.S().one(), c, c * c, y, c * y, c * c * y};
}

/// s_*(⟨x⟩N_{S/C}) on the basis above; Gram matrix by polarization.
inline QuadForm transfer_form(const RationalResolvent& rd, const QElem& x, const Rational& scale = Rational(1))
{
    if (!x.is_unit()) throw PreconditionError("transfer_form needs a unit of C");
    const auto basis = transfer_basis(rd);
    auto q = [&](const QElem& v) { return transfer_functional(rd, x * rd.norm_S_over_C(v), scale); };
    Matrix<Rational> g(RationalField{}, 6, 6);
    std::vector<Rational> qd;
    for (const auto& b : basis) qd.push_back(q(b));
    for (std::size_t i = 0; i < 6; ++i) {
        g(i, i) = qd[i];
        for (std::size_t j = i + 1; j < 6; ++j) {
            const Rational b = half(q(basis[i] + basis[j]) - qd[i] - qd[j]);
            g(i, j) = b;
            g(j, i) = b;
        }
    }
    try {
        return QuadForm::from_gram(std::move(g));
    } catch (const DegenerateForm&) {
        throw DegenerateForm("transfer degenerate");
    }
}

/// cor_{C/k}(S/C, x), computed as the Clifford invariant of its Albert form.
inline BrauerClass2 cor_class(const RationalResolvent& rd, const QElem& x)
{
    return clifford_class(transfer_form(rd, x));
}

/// The element λ(λ − a) of C.
inline QElem lambda_element(const RationalResolvent& rd, const Rational& lambda)
{
    return lambda * (rd.C().scalar(lambda) - rd.a());
}

/// (λ, −ρ(λ))_ℚ.
inline BrauerClass2 quat_from_lambda(const RationalResolvent& rd, const Rational& lambda)
{
    if (lambda.is_zero()) throw PreconditionError("λ must be nonzero");
    const Rational r = rd.rho().eval(lambda);
    if (r.is_zero()) throw LambdaIsRoot();
    return quaternion_class(lambda, -r);
}

/// s_*(⟨β⟩) on C: the 3-dimensional form v ↦ s(βv²).
inline QuadForm transfer_of_rank_one(const RationalResolvent& rd, const QElem& beta)
{
    const auto& C = rd.C();
    const std::vector<QElem> basis{C.one(), C.generator(), C.generator() * C.generator()};
    Matrix<Rational> g(RationalField{}, 3, 3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) g(i, j) = transfer_functional(rd, beta * basis[i] * basis[j]);
    return QuadForm::from_gram(std::move(g));
}

/// Both sides of the Clifford/corestriction square for the Pfister form
/// ⟨1, −a, −b, ab⟩ over C with a ∈ k×, b ∈ C×: the Clifford invariant of its
/// transfer, and cor_{C/k}(a, b)_C = (a, N_{C/k}(b)) by the projection
/// formula.
struct ClifSquare {
    BrauerClass2 via_transfer;
    BrauerClass2 via_projection;
    mpz_class transfer_disc;
};

inline ClifSquare clif_square(const RationalResolvent& rd, const Rational& a, const QElem& b)
{
    const auto& C = rd.C();
    const QuadForm t = transfer_of_rank_one(rd, C.one()) + transfer_of_rank_one(rd, C.scalar(-a)) +
                       transfer_of_rank_one(rd, -b) + transfer_of_rank_one(rd, a * b);
    return {clifford_class(t), quaternion_class(a, b.norm()), t.disc()};
}

}  // namespace qres

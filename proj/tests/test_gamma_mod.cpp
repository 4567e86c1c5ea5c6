#include <gtest/gtest.h>

#include <random>

#include "qres/gamma_mod.hpp"
#include "qres/intmatrix.hpp"

using namespace qres;
using namespace qres::gm;

namespace {

bool is_unimodular(const IntMatrix& m)
{
    if (m.rows() == 0) return true;
    auto d = m.to_rational().det();
    return d == Rational(1) || d == Rational(-1);
}

void expect_valid_snf(const IntMatrix& m)
{
    const SmithForm s = smith_normal_form(m);
    EXPECT_EQ(s.U * m * s.V, s.D);
    EXPECT_EQ(s.U * s.U_inv, IntMatrix::identity(m.rows()));
    EXPECT_EQ(s.V * s.V_inv, IntMatrix::identity(m.cols()));
    EXPECT_TRUE(is_unimodular(s.U));
    EXPECT_TRUE(is_unimodular(s.V));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (i != j) EXPECT_EQ(s.D(i, j), 0);
    auto d = s.diagonal();
    for (std::size_t i = 0; i < d.size(); ++i) {
        EXPECT_GE(d[i], 0);
        if (i + 1 < d.size() && d[i] != 0) EXPECT_EQ(d[i + 1] % d[i], 0) << m.to_string();
        if (d[i] == 0 && i + 1 < d.size()) EXPECT_EQ(d[i + 1], 0);
    }
}

}  // namespace

TEST(Smith, TrivialCases)
{
    auto s = smith_normal_form(IntMatrix::identity(3));
    EXPECT_EQ(s.D, IntMatrix::identity(3));
    auto z = smith_normal_form(IntMatrix(2, 3));
    EXPECT_TRUE(z.D.is_zero());
    EXPECT_EQ(z.rank, 0U);
    expect_valid_snf(IntMatrix(0, 3));
}

TEST(Smith, SigmaIsDiag1112)
{
    auto s = smith_normal_form(build_map("sigma").matrix);
    EXPECT_EQ(s.diagonal(), (std::vector<mpz_class>{1, 1, 1, 2}));
    expect_valid_snf(build_map("sigma").matrix);
}

TEST(Smith, RandomMatricesReconstruct)
{
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<long> dist(-9, 9);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t r = 1 + trial % 5, c = 1 + (trial / 5) % 6;
        IntMatrix m(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) m(i, j) = trial % 7 == 0 ? 2 * dist(rng) : dist(rng);
        expect_valid_snf(m);
        // kernel vectors are killed, and the kernel has the right rank
        auto k = integer_kernel(m);
        EXPECT_TRUE((m * k).is_zero());
        EXPECT_EQ(k.cols(), c - m.to_rational().rank());
    }
}

TEST(Smith, KnownInvariantFactors)
{
    IntMatrix m(3, 3, {2, 4, 4, -6, 6, 12, 10, -4, -16});
    EXPECT_EQ(smith_normal_form(m).diagonal(), (std::vector<mpz_class>{2, 6, 12}));
}

TEST(GammaMod, MapColumnsFromDefinitions)
{
    auto sigma = build_map("sigma").matrix;
    EXPECT_EQ(sigma.column(0), (std::vector<mpz_class>{1, 1, 0, 0}));  // {1,2} -> e1 + e2
    auto tau = build_map("tau").matrix;
    EXPECT_EQ(tau.column(0), (std::vector<mpz_class>{1, 1, 1, 0, 0, 0}));  // 1 -> e12 + e13 + e14
    auto gamma = build_map("gamma").matrix;
    EXPECT_EQ(gamma.column(0), (std::vector<mpz_class>{0, 0, 0, 0, 0, 1}));  // {1,2} -> e34
    EXPECT_THROW(build_map("bogus"), PreconditionError);
    EXPECT_EQ(partition_label(0), "12|34");
    EXPECT_EQ(partition_label(1), "13|24");
    EXPECT_EQ(partition_label(2), "14|23");
}

TEST(GammaMod, Duality)
{
    auto d = check_duality();
    EXPECT_TRUE(d.tau_is_sigma_transpose);
    EXPECT_TRUE(d.nu_is_epsilon_transpose);
    EXPECT_TRUE(d.gamma_symmetric);
}

TEST(GammaMod, SigmaTau)
{
    auto st = composite_sigma_tau();
    EXPECT_EQ(st(0, 0), 3);
    EXPECT_EQ(st(0, 1), 1);
    for (std::size_t i = 0; i < 4; ++i) {
        mpz_class row = 0;
        for (std::size_t j = 0; j < 4; ++j) row += st(i, j);
        EXPECT_EQ(row, 6);
    }
    EXPECT_EQ(st, 2 * IntMatrix::identity(4) + build_map("nu_X").matrix * build_map("epsilon_X").matrix);
}

TEST(GammaMod, EquivarianceAllMaps)
{
    EXPECT_EQ(all_permutations().size(), 24U);
    for (const auto& n : map_names()) EXPECT_TRUE(is_equivariant(build_map(n))) << n;
    // a non-equivariant control
    ModuleMap bad = build_map("sigma");
    bad.matrix(0, 0) = 2;
    EXPECT_FALSE(is_equivariant(bad));
}

TEST(GammaMod, Squares)
{
    for (const auto& sq : standard_squares()) EXPECT_TRUE(sq.commutes) << sq.name;
    IntMatrix z1(2, 3), z2(4, 2), z3(5, 3), z4(4, 5);
    EXPECT_TRUE(check_square(z1, z2, z3, z4));
    EXPECT_THROW(check_square(z1, z1, z3, z4), PreconditionError);
}

TEST(GammaMod, AllSequencesExact)
{
    auto reps = check_all_sequences();
    EXPECT_EQ(reps.size(), 8U);
    for (const auto& r : reps) {
        EXPECT_TRUE(r.defects.empty()) << r.name << ": " << (r.defects.empty() ? "" : r.defects[0]);
        for (const auto& n : r.nodes) EXPECT_TRUE(n.trivial()) << r.name << " at " << n.node << ": " << n.to_string();
    }
}

TEST(GammaMod, SimpleComplexes)
{
    auto id = check_exact("id", {Lattice::free("Z", 1), Lattice::free("Z", 1)}, {{"id", IntMatrix::identity(1)}});
    EXPECT_TRUE(id.exact());
    auto twice = check_exact("2", {Lattice::free("Z", 1), Lattice::free("Z", 1)}, {{"2", 2 * IntMatrix::identity(1)}});
    ASSERT_FALSE(twice.exact());
    EXPECT_EQ(twice.nodes[1].to_string(), "Z/2");
    auto zero = check_exact("0", {Lattice::free("Z", 1), Lattice::free("Z", 1)}, {{"0", IntMatrix(1, 1)}});
    EXPECT_EQ(zero.nodes[0].to_string(), "Z");
    EXPECT_EQ(zero.nodes[1].to_string(), "Z");
    EXPECT_THROW(check_exact("bad", {Lattice::free("Z", 1), Lattice::free("Z", 2)}, {{"m", IntMatrix(1, 1)}}),
                 PreconditionError);
}

TEST(GammaMod, TamperedSigmaShowsZ2)
{
    const auto reps = check_all_sequences({{"sigma", tampered_sigma()}});
    const auto& prop1 = reps[1];
    ASSERT_EQ(prop1.name, "prop1");
    EXPECT_TRUE(prop1.defects.empty());
    EXPECT_FALSE(prop1.exact());
    EXPECT_EQ(prop1.nodes[2].node, "Z[X]");
    EXPECT_EQ(prop1.nodes[2].to_string(), "Z/2");
    EXPECT_FALSE(is_equivariant({"sigma", BasisKind::Pairs, BasisKind::X, tampered_sigma()}));
}

#include <gtest/gtest.h>

#include <random>

#include "qres/etale.hpp"

using namespace qres;

namespace {

const RationalField QQ;
Poly<Rational> qp(const std::string& s) { return parse_poly(s, QQ); }

AlgElement<Rational> random_element(const EtaleAlgebra<Rational>& a, std::mt19937_64& rng, long bound = 5)
{
    std::uniform_int_distribution<long> dist(-bound, bound);
    std::vector<Rational> c;
    for (std::size_t i = 0; i < a.dimension(); ++i) c.emplace_back(dist(rng));
    return a.from_coords(c);
}

}  // namespace

TEST(Etale, Decomposition)
{
    auto split = EtaleAlgebra<Rational>::from_poly(qp("x^2-1"));
    EXPECT_EQ(split.component_degrees(), (std::vector<int>{1, 1}));
    auto field4 = EtaleAlgebra<Rational>::from_poly(qp("x^4+x+1"));
    EXPECT_TRUE(field4.is_field());
    auto biq = EtaleAlgebra<Rational>::from_poly(qp("x^4-10x^2+1"));
    EXPECT_TRUE(biq.is_field());
    auto prod = EtaleAlgebra<Rational>::from_poly(qp("x^4-5x^2+6"));
    EXPECT_EQ(prod.component_degrees(), (std::vector<int>{2, 2}));
    EXPECT_THROW(EtaleAlgebra<Rational>::from_poly(qp("x^4")), NotEtale);
    EXPECT_THROW(EtaleAlgebra<Rational>::from_poly(qp("x^3-x^2-x+1")), NotEtale);
}

TEST(Etale, NormTraceExamples)
{
    auto l = EtaleAlgebra<Rational>::from_poly(qp("x^4+x+1"));
    EXPECT_EQ(l.generator().trace(), Rational(0));
    EXPECT_EQ(l.scalar(Rational(3)).norm(), Rational(81));
    auto k2 = EtaleAlgebra<Rational>::from_poly(qp("x^2-2"));
    EXPECT_EQ((k2.one() + k2.generator()).norm(), Rational(-1));
    EXPECT_EQ(l.generator().charpoly(), qp("x^4+x+1"));
}

TEST(Etale, NormTraceAreHomomorphisms)
{
    std::mt19937_64 rng(23);
    for (const char* f : {"x^4+x+1", "x^4-5x^2+6", "x^4-1", "x^3-2", "x^4-10x^2+1"}) {
        auto a = EtaleAlgebra<Rational>::from_poly(qp(f));
        for (int t = 0; t < 20; ++t) {
            auto u = random_element(a, rng), v = random_element(a, rng);
            EXPECT_EQ((u * v).norm(), u.norm() * v.norm());
            EXPECT_EQ((u + v).trace(), u.trace() + v.trace());
            if (u.is_unit()) {
                EXPECT_EQ(u.norm() * u.inv().norm(), Rational(1));
            }
            EXPECT_EQ(u.is_unit(), !u.norm().is_zero());
        }
    }
}

TEST(Etale, DecompositionInvariance)
{
    // the same element seen in the monogenic algebra and in its factors
    std::mt19937_64 rng(29);
    auto a = EtaleAlgebra<Rational>::from_poly(qp("x^4-5x^2+6"));
    for (int t = 0; t < 20; ++t) {
        auto u = random_element(a, rng);
        Poly<Rational> g = a.to_monogenic(u);
        EXPECT_EQ(a.from_monogenic(g), u);
        // regular representation on the monogenic basis 1, x, x², x³
        Matrix<Rational> m(QQ, 4, 4);
        Poly<Rational> col = g;
        for (std::size_t j = 0; j < 4; ++j) {
            for (std::size_t k = 0; k < 4; ++k) m(k, j) = col.coeff(k);
            col = (col * Poly<Rational>::x(QQ)) % a.defining_poly();
        }
        EXPECT_EQ(m.charpoly(), u.charpoly());
        EXPECT_EQ(m.det(), u.norm());
    }
}

TEST(Etale, NonUnitsAndInversion)
{
    auto a = EtaleAlgebra<Rational>::from_poly(qp("x^2-1"));
    auto e = a.from_residues({Poly<Rational>::constant(Rational(1)), Poly<Rational>(QQ)});
    EXPECT_FALSE(e.is_unit());
    try {
        (void)e.inv();
        FAIL();
    } catch (const NotInvertible& ex) {
        EXPECT_EQ(ex.component, 1U);
    }
    auto u = a.from_coords({Rational(2), Rational(1)});
    EXPECT_EQ(u * u.inv(), a.one());
}

TEST(Etale, Minpoly)
{
    auto a = EtaleAlgebra<Rational>::from_poly(qp("x^2-3x+2"));
    EXPECT_EQ(a.zero().minpoly(), qp("x"));
    auto g = a.generator();
    EXPECT_EQ(g.minpoly(), qp("x^2-3x+2"));
    EXPECT_TRUE(g.is_generator());
    EXPECT_FALSE(a.one().is_generator());
    auto l = EtaleAlgebra<Rational>::from_poly(qp("x^4-10x^2+1"));
    auto s = l.generator() * l.generator();
    EXPECT_EQ(s.minpoly(), qp("x^2-10x+1"));
    EXPECT_TRUE((s.charpoly() % s.minpoly()).is_zero());
    EXPECT_EQ(s.charpoly(), s.minpoly() * s.minpoly());
    std::mt19937_64 rng(31);
    for (int t = 0; t < 20; ++t) {
        auto u = random_element(l, rng, 2);
        auto mp = u.minpoly();
        EXPECT_TRUE((u.charpoly() % mp).is_zero());
        EXPECT_EQ(u.is_generator(), mp == u.charpoly());
        EXPECT_TRUE(mp.eval_in(u, l.one()).is_zero());
    }
}

TEST(Etale, DiscSquareClass)
{
    EXPECT_EQ(EtaleAlgebra<Rational>::from_poly(qp("x^2-1")).disc_square_class(), Rational(1));
    EXPECT_EQ(EtaleAlgebra<Rational>::from_poly(qp("x^2-2")).disc_square_class(), Rational(2));
    // disc(x^4+x+1) = 229 and disc(x^3-4x+1) = 229
    EXPECT_EQ(EtaleAlgebra<Rational>::from_poly(qp("x^4+x+1")).disc_square_class(), Rational(229));
    EXPECT_EQ(EtaleAlgebra<Rational>::from_poly(qp("x^3-4x+1")).disc_square_class(), Rational(229));
    const PrimeField f7(7);
    auto a = EtaleAlgebra<ModP>::from_poly(parse_poly("x^2-3", f7));  // 3 is a non-residue mod 7
    EXPECT_EQ(a.disc_square_class(), f7.from_int(3));
}

TEST(Etale, FiniteFieldAlgebra)
{
    const PrimeField f5(5);
    auto a = EtaleAlgebra<ModP>::from_poly(parse_poly("x^4+x+1", f5));
    std::vector<int> pattern = factorize(parse_poly("x^4+x+1", f5)).degree_pattern();
    EXPECT_EQ(a.component_degrees(), pattern);
    // brute-force root scan agrees on the number of linear factors
    int roots = 0;
    for (long r = 0; r < 5; ++r) roots += parse_poly("x^4+x+1", f5).eval(f5.from_int(r)).is_zero();
    EXPECT_EQ(std::count(pattern.begin(), pattern.end(), 1), roots);
}

TEST(Etale, Fingerprints)
{
    auto a = EtaleAlgebra<Rational>::from_poly(qp("x^4-10x^2+1"));
    // ℚ(√2+√3) generated by √2 - √3 + 1 has minpoly (x-1)^4 - 10 (x-1)^2 + 1
    auto b = EtaleAlgebra<Rational>::from_poly(qp("x^4-10x^2+1").compose(qp("x-1")));
    EXPECT_EQ(compare_fingerprints(a, b), FingerprintMatch::Agree);
    auto c = EtaleAlgebra<Rational>::from_poly(qp("x^4+x+1"));
    EXPECT_EQ(compare_fingerprints(a, c), FingerprintMatch::Inconclusive);
}

#include <gtest/gtest.h>

#include <random>

#include "qres/factor.hpp"
#include "qres/integers.hpp"
#include "qres/matrix.hpp"
#include "qres/poly.hpp"
#include "qres/scalar.hpp"

using namespace qres;

namespace {

const RationalField QQ;

Poly<Rational> qp(const std::string& s) { return parse_poly(s, QQ); }

Poly<Rational> random_qpoly(std::mt19937_64& rng, int deg, long bound)
{
    std::uniform_int_distribution<long> dist(-bound, bound);
    std::vector<Rational> c;
    for (int i = 0; i < deg; ++i) c.emplace_back(dist(rng));
    c.emplace_back(1);
    return Poly<Rational>(QQ, c);
}

}  // namespace

TEST(Scalar, RationalArithmetic)
{
    Rational a(mpz_class(3), mpz_class(-6));
    EXPECT_EQ(a.to_string(), "-1/2");
    EXPECT_EQ(a * a, Rational(mpz_class(1), mpz_class(4)));
    EXPECT_THROW(Rational(0).inv(), DivisionByZero);
    EXPECT_THROW(Rational::parse("1/0"), ParseError);
}

TEST(Scalar, PrimeFieldRejectsBadModuli)
{
    EXPECT_THROW(PrimeField(2), PreconditionError);
    EXPECT_THROW(PrimeField(9), PreconditionError);
    EXPECT_NO_THROW(PrimeField(13));
    const PrimeField f13(13);
    EXPECT_EQ(f13.from_int(-1).value(), 12U);
    EXPECT_EQ((f13.from_int(5) / f13.from_int(3)) * f13.from_int(3), f13.from_int(5));
    EXPECT_THROW(f13.zero().inv(), DivisionByZero);
}

TEST(Poly, ParseAndPrint)
{
    EXPECT_EQ(qp("x^4 + x + 1").to_string(), "x^4+x+1");
    EXPECT_EQ(qp("Y^6-4Y^2-1").to_string("Y"), "Y^6-4Y^2-1");
    EXPECT_EQ(qp("1/2*x^2 - 3").to_string(), "1/2*x^2-3");
    EXPECT_EQ(qp("2x-x").to_string(), "x");
    EXPECT_THROW(qp("x^"), ParseError);
    EXPECT_THROW(qp("x+y"), ParseError);
    EXPECT_THROW(qp(""), ParseError);
}

TEST(Poly, DivisionAndGcd)
{
    auto f = qp("x^4-1"), g = qp("x^2-3x+2");
    auto [q, r] = divmod(f, g);
    EXPECT_EQ(q * g + r, f);
    EXPECT_LT(r.degree(), g.degree());
    EXPECT_EQ(gcd(f, g), qp("x-1"));
    auto [d, s, t] = xgcd(f, g);
    EXPECT_EQ(s * f + t * g, d);
    EXPECT_THROW(divmod(f, Poly<Rational>(QQ)), DivisionByZero);
}

TEST(Poly, ResultantAgreesWithSylvester)
{
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        auto f = random_qpoly(rng, 1 + trial % 5, 9);
        auto g = random_qpoly(rng, 1 + (trial / 5) % 4, 9);
        Rational a = resultant(f, g);
        Rational b = resultant_sylvester(f.coefficients(), g.coefficients(), Rational(1));
        EXPECT_EQ(a, b) << f.to_string() << " , " << g.to_string();
    }
    EXPECT_EQ(resultant(qp("x-2"), qp("x^2+1")), Rational(5));
    EXPECT_THROW(resultant(Poly<Rational>(QQ), Poly<Rational>(QQ)), UndefinedResultant);
    EXPECT_EQ(resultant(Poly<Rational>(QQ), qp("3")), Rational(1));
    EXPECT_EQ(resultant(Poly<Rational>(QQ), qp("x")), Rational(0));
}

TEST(Poly, ExactSqrt)
{
    auto g = qp("x^3-4x+1/3");
    EXPECT_EQ(poly_exact_sqrt(g * g), g);
    EXPECT_THROW(poly_exact_sqrt(qp("x^2+1")), NotASquare);
    EXPECT_THROW(poly_exact_sqrt(qp("x^3")), NotASquare);
}

TEST(Matrix, SolveKernelInverse)
{
    Matrix<Rational> m(QQ, 3, 3);
    long vals[3][3] = {{1, 2, 3}, {4, 5, 6}, {7, 8, 10}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m(i, j) = vals[i][j];
    EXPECT_EQ(m.det(), Rational(-3));
    auto inv = m.inverse();
    ASSERT_TRUE(inv);
    EXPECT_EQ(m * *inv, Matrix<Rational>::identity(QQ, 3));
    m(2, 2) = 9;
    EXPECT_FALSE(m.inverse());
    auto ker = m.kernel();
    ASSERT_EQ(ker.size(), 1U);
    EXPECT_EQ(m.apply(ker[0]), std::vector<Rational>(3, Rational(0)));
    auto sol = solve_linear(m, {Rational(1), Rational(1), Rational(2)});
    EXPECT_FALSE(sol.consistent());
    sol = solve_linear(m, {Rational(6), Rational(15), Rational(24)});
    ASSERT_TRUE(sol.consistent());
    EXPECT_EQ(m.apply(*sol.particular), (std::vector<Rational>{6, 15, 24}));
}

TEST(Matrix, CharpolyMatchesDeterminant)
{
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> dist(-5, 5);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 1 + trial % 6;
        Matrix<Rational> m(QQ, n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m(i, j) = (trial % 3 == 0 && i > j + 1) ? 0 : dist(rng);
        auto cp = m.charpoly();
        ASSERT_EQ(cp.degree(), static_cast<int>(n));
        for (long t = -3; t <= 3; ++t) {
            Matrix<Rational> s(QQ, n, n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) s(i, j) = (i == j ? Rational(t) : Rational(0)) - m(i, j);
            EXPECT_EQ(cp.eval(Rational(t)), s.det());
        }
    }
}

TEST(Integers, FactorAndSquareClass)
{
    auto fa = factor_integer(mpz_class("600851475143"));
    mpz_class back = 1;
    for (auto& [p, e] : fa)
        for (unsigned i = 0; i < e; ++i) back *= p;
    EXPECT_EQ(back, mpz_class("600851475143"));
    EXPECT_EQ(squarefree_part(Rational(mpz_class(-12), mpz_class(5))), mpz_class(-15));
    EXPECT_TRUE(is_rational_square(Rational(mpz_class(9), mpz_class(4))));
    mpz_class big = mpz_class("1000000007") * mpz_class("998244353");
    auto f2 = factor_integer(big);
    EXPECT_EQ(f2.size(), 2U);
}

namespace {

// Brute-force irreducibility oracle over 𝔽_p: no monic factor of degree <= n/2.
bool brute_irreducible(const Poly<ModP>& f)
{
    const auto fld = f.field();
    const int n = f.degree();
    for (int d = 1; 2 * d <= n; ++d) {
        std::vector<std::uint64_t> digits(d, 0);
        while (true) {
            std::vector<ModP> c;
            for (int i = 0; i < d; ++i) c.emplace_back(digits[i], fld.p);
            c.push_back(fld.one());
            if ((f % Poly<ModP>(fld, c)).is_zero()) return false;
            int k = 0;
            while (k < d && ++digits[k] == fld.p) digits[k++] = 0;
            if (k == d) break;
        }
    }
    return true;
}

}  // namespace

TEST(Factor, FiniteFieldRandom)
{
    std::mt19937_64 rng(3);
    for (std::uint64_t p : {3ULL, 5ULL, 7ULL, 10007ULL}) {
        const PrimeField fld(p);
        for (int trial = 0; trial < 40; ++trial) {
            std::vector<ModP> c;
            const int deg = 1 + trial % 7;
            for (int i = 0; i < deg; ++i) c.emplace_back(rng() % p, p);
            c.emplace_back(1 + rng() % (p - 1), p);
            Poly<ModP> f(fld, c);
            if (trial % 4 == 0) f = f * f;  // force repeated factors
            auto fa = factorize(f);
            EXPECT_EQ(fa.product(), f);
            for (auto& x : fa.factors) {
                EXPECT_TRUE(x.poly.is_monic());
                if (p < 100) EXPECT_TRUE(brute_irreducible(x.poly)) << x.poly.to_string();
            }
        }
    }
}

TEST(Factor, FiniteFieldPthPowers)
{
    const PrimeField f3(3);
    auto f = parse_poly("x^6+2x^3+1", f3);  // (x^3+1)^2 = (x+1)^6
    auto fa = factorize(f);
    ASSERT_EQ(fa.factors.size(), 1U);
    EXPECT_EQ(fa.factors[0].multiplicity, 6U);
    EXPECT_EQ(fa.product(), f);
}

TEST(Factor, RationalKnownCases)
{
    EXPECT_TRUE(is_irreducible(qp("x^4+x+1")));
    EXPECT_TRUE(is_irreducible(qp("x^4-10x^2+1")));  // reducible modulo every prime
    EXPECT_EQ(factorize(qp("x^4-10x^2+1")).factors.size(), 1U);
    auto fa = factorize(qp("x^4-5x^2+6"));
    EXPECT_EQ(fa.degree_pattern(), (std::vector<int>{2, 2}));
    auto g = qp("2x^5-2x");
    auto fg = factorize(g);
    EXPECT_EQ(fg.product(), g);
    EXPECT_EQ(fg.degree_pattern(), (std::vector<int>{1, 1, 1, 2}));
    auto h = qp("1/3*x^3-1/12x");  // (1/3) x (x-1/2)(x+1/2)
    auto fh = factorize(h);
    EXPECT_EQ(fh.product(), h);
    EXPECT_EQ(fh.degree_pattern(), (std::vector<int>{1, 1, 1}));
    EXPECT_THROW(factorize(Poly<Rational>(QQ)), PreconditionError);
}

TEST(Factor, RationalRandomProducts)
{
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        auto a = random_qpoly(rng, 1 + trial % 3, 20);
        auto b = random_qpoly(rng, 2 + trial % 2, 20);
        auto c = random_qpoly(rng, 1 + trial % 4, 3);
        auto f = a * b * c;
        if (trial % 5 == 0) f = f * a;
        auto fa = factorize(f);
        EXPECT_EQ(fa.product(), f);
        int total = 0;
        for (auto& x : fa.factors) total += x.poly.degree() * static_cast<int>(x.multiplicity);
        EXPECT_EQ(total, f.degree());
        // each factor divides f and a factor of a (irreducible over 𝔽_p for
        // some p means irreducible over ℚ) is at least as fine as any modular split
        for (auto& x : fa.factors) EXPECT_TRUE((f % x.poly).is_zero());
    }
}

TEST(Factor, RecombinationCap)
{
    // Swinnerton-Dyer-like polynomial: many modular factors, one rational factor
    auto f = qp("x^8-40x^6+352x^4-960x^2+576");  // minpoly of √2+√3+√5
    FactorOptions tight;
    tight.recombination_cap = 3;
    tight.sieve_primes = 1;
    EXPECT_THROW(factorize(f, tight), FactorizationInconclusive);
    EXPECT_TRUE(is_irreducible(f));
}

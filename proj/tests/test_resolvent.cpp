#include <gtest/gtest.h>

#include "numeric_oracle.hpp"
#include "qres/resolvent.hpp"

using namespace qres;

namespace {

const RationalField QQ;
Poly<Rational> qp(const std::string& s) { return parse_poly(s, QQ); }

Poly<Rational> random_quartic(Rng& rng, long bound)
{
    for (;;) {
        std::vector<Rational> c;
        for (int i = 0; i < 4; ++i) c.emplace_back(draw_bounded(rng, bound));
        c.emplace_back(1);
        Poly<Rational> p(QQ, c);
        if (is_squarefree(p)) return p;
    }
}

std::vector<oracle::Cx> pair_sums(const std::vector<oracle::Cx>& r)
{
    std::vector<oracle::Cx> out;
    for (std::size_t i = 0; i < r.size(); ++i)
        for (std::size_t j = i + 1; j < r.size(); ++j) out.push_back(r[i] + r[j]);
    return out;
}

}  // namespace

TEST(Resolvent, FixedValuesForXFourPlusXPlusOne)
{
    auto r = Resolvent<Rational>::build(qp("x^4+x+1"));
    EXPECT_TRUE(r.substitution().identity);
    EXPECT_EQ(r.P6(), qp("Y^6-4Y^2-1"));
    EXPECT_EQ(r.rhoC(), qp("z^3-4z+1"));
    EXPECT_EQ(r.rho(), qp("X^3-4X-1"));
    EXPECT_EQ(r.rho().to_string("X"), "X^3-4X-1");
    EXPECT_EQ(r.e1(), Rational(0));
    EXPECT_EQ(r.a(), -r.c());
}

TEST(Resolvent, SexticInseparableCases)
{
    // roots ±√2±√3: pair sums ±2√2, ±2√3, 0, 0
    EXPECT_EQ(sextic_resolvent(qp("x^4-10x^2+1")), qp("Y^6-20Y^4+96Y^2"));
    // roots ±√2, ±√3: pair sums ±√2±√3, 0, 0
    EXPECT_EQ(sextic_resolvent(qp("x^4-5x^2+6")), qp("Y^6-10Y^4+Y^2"));
    // roots 0,1,2,3: pair sums 1,2,3,3,4,5
    EXPECT_EQ(sextic_resolvent(qp("x^4-6x^3+11x^2-6x")), qp("x-3") * qp("x-1") * qp("x-2") * qp("x-3") * qp("x-4") * qp("x-5"));
    EXPECT_TRUE(detail::genericity_defect(qp("x^4-10x^2+1")).has_value());
    EXPECT_FALSE(detail::genericity_defect(qp("x^4+x+1")).has_value());
    EXPECT_THROW(Resolvent<Rational>::build(qp("x^4")), NotEtale);
    EXPECT_THROW(Resolvent<Rational>::build(qp("x^4-10x^2+1"), {.genericize = false}), NotGeneric);
}

TEST(Resolvent, SexticMatchesNumericPairSums)
{
    Rng rng(101);
    for (int t = 0; t < 25; ++t) {
        auto p = random_quartic(rng, 10);
        auto p6 = sextic_resolvent(p);
        auto r = oracle::roots(p);
        std::vector<oracle::Cx> z;
        for (const auto& s : pair_sums(r)) z.push_back(oracle::eval(p6, s));
        for (const auto& v : z) EXPECT_TRUE(oracle::close(v, oracle::Cx(0), "1e-25")) << p.to_string();
    }
}

TEST(Resolvent, PairRingStructure)
{
    Rng rng(5);
    for (int t = 0; t < 10; ++t) {
        auto p = random_quartic(rng, 6);
        PairRing<Rational> pr(p);
        const auto x = Poly<Rational>::x(QQ);
        auto sum = pr.add(pr.from_u(x), pr.from_v(x));
        // charpoly of multiplication by u+v on the 12 ordered pairs is P₆²
        auto p6 = sextic_resolvent(p);
        EXPECT_EQ(pr.mult_matrix(sum).charpoly(), p6 * p6);
        // the swap is a ring involution
        auto g = pr.add(pr.from_u(qp("x^3-2x+1")), pr.mul(pr.from_v(qp("3x^2+1")), pr.from_u(qp("x+5"))));
        auto h = pr.add(pr.from_v(qp("x^3+x")), pr.from_u(qp("2x^2-7")));
        EXPECT_EQ(pr.coords(pr.swap(pr.mul(g, h))), pr.coords(pr.mul(pr.swap(g), pr.swap(h))));
        EXPECT_EQ(pr.coords(pr.swap(pr.swap(g))), pr.coords(g));
    }
}

TEST(Resolvent, RhoRootsNumeric)
{
    Rng rng(7);
    for (int t = 0; t < 10; ++t) {
        auto r = Resolvent<Rational>::build(random_quartic(rng, 10), {.seed = 7});
        auto l = oracle::roots(r.quartic());
        std::vector<oracle::Cx> expect, expect_c;
        const int parts[3][4] = {{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}};
        for (const auto& q : parts) {
            oracle::Cx d = (l[q[0]] + l[q[1]] - l[q[2]] - l[q[3]]) / 2;
            expect.push_back(d * d);
            expect_c.push_back((l[q[0]] + l[q[1]]) * (l[q[2]] + l[q[3]]));
        }
        EXPECT_TRUE(oracle::same_multiset(oracle::roots(r.rho()), expect));
        EXPECT_TRUE(oracle::same_multiset(oracle::roots(r.rhoC()), expect_c));
    }
}

TEST(Resolvent, MapsMatchNumericPointValues)
{
    Rng rng(11);
    for (int t = 0; t < 5; ++t) {
        auto r = Resolvent<Rational>::build(random_quartic(rng, 8), {.seed = 11});
        auto l = oracle::roots(r.quartic());
        auto x = random_unit(r.L(), rng, 4);
        auto g = r.L().to_monogenic(x);
        auto h = r.S().to_monogenic(r.sigma_star(x));
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = i + 1; j < 4; ++j)
                EXPECT_TRUE(oracle::close(oracle::eval(h, l[i] + l[j]), oracle::eval(g, l[i]) * oracle::eval(g, l[j]),
                                          "1e-25"));
        auto s = random_unit(r.S(), rng, 4);
        auto hs = r.S().to_monogenic(s);
        auto ts = r.L().to_monogenic(r.tau_star(s));
        for (std::size_t i = 0; i < 4; ++i) {
            oracle::Cx prod = 1;
            for (std::size_t j = 0; j < 4; ++j)
                if (j != i) prod *= oracle::eval(hs, l[i] + l[j]);
            EXPECT_TRUE(oracle::close(oracle::eval(ts, l[i]), prod, "1e-20"));
        }
    }
}

TEST(Resolvent, MapIdentitiesExact)
{
    Rng rng(13);
    for (int t = 0; t < 15; ++t) {
        auto r = Resolvent<Rational>::build(random_quartic(rng, 10), {.seed = 13});
        const auto& L = r.L();
        const auto& S = r.S();
        const auto& C = r.C();
        const Rational lam(draw_bounded(rng, 9) * 2 + 1);
        EXPECT_EQ(r.sigma_star(L.scalar(lam)), S.scalar(lam * lam));
        for (int k = 0; k < 3; ++k) {
            auto x = random_unit(L, rng, 3), x2 = random_unit(L, rng, 3);
            auto s = random_unit(S, rng, 3), s2 = random_unit(S, rng, 3);
            auto c0 = random_unit(C, rng, 3);
            EXPECT_EQ(r.norm_S_over_C(r.sigma_star(x)), C.scalar(x.norm()));
            EXPECT_EQ(r.tau_star(s).norm(), s.norm() * s.norm());
            EXPECT_EQ(r.tau_star(r.i_S_over_C(c0)), L.scalar(c0.norm()));
            EXPECT_EQ(r.tau_star(r.sigma_star(x)), x * x * L.scalar(x.norm()));
            EXPECT_EQ(r.sigma_star(x * x2), r.sigma_star(x) * r.sigma_star(x2));
            EXPECT_EQ(r.tau_star(s * s2), r.tau_star(s) * r.tau_star(s2));
            EXPECT_EQ(r.norm_S_over_C(s).norm(), s.norm());
            EXPECT_EQ(r.gamma(r.gamma(s)), s);
            EXPECT_EQ(r.gamma(s * s2), r.gamma(s) * r.gamma(s2));
        }
        EXPECT_EQ(r.tau_star(S.one()), L.one());
        EXPECT_EQ(r.gamma(r.y()), S.scalar(r.e1()) - r.y());
        EXPECT_EQ(r.gamma(r.c_in_S()), r.c_in_S());
        EXPECT_EQ(r.gamma_fixed_space().size(), 3U);
        EXPECT_EQ(r.trace_S_over_C(r.y()), C.scalar(r.e1()));
        EXPECT_EQ(r.trace_S_over_C(r.y()), C.scalar(L.generator().trace()));
        const Rational al(draw_bounded(rng, 5)), be(draw_bounded(rng, 5));
        EXPECT_EQ(r.norm_S_over_C(S.scalar(al) + be * r.y()), C.scalar(al * al + al * be * r.e1()) + be * be * r.c());
        EXPECT_EQ(r.y() * r.y() - r.e1() * r.y() + r.c_in_S(), S.zero());
        EXPECT_EQ(r.i_S_over_C(r.c()), r.c_in_S());
    }
}

TEST(Resolvent, GenericizeKeepsTheAlgebra)
{
    auto r = Resolvent<Rational>::build(qp("x^4-10x^2+1"), {.seed = 3});
    EXPECT_FALSE(r.substitution().identity);
    EXPECT_EQ(compare_fingerprints(r.L(), r.original_L()), FingerprintMatch::Agree);
    EXPECT_EQ(r.C().component_degrees(), (std::vector<int>{1, 1, 1}));
    EXPECT_EQ(r.S().component_degrees(), (std::vector<int>{2, 2, 2}));
    // to_generic is an algebra isomorphism onto L
    auto x = r.original_L().generator();
    EXPECT_EQ(r.to_generic(x).minpoly(), qp("x^4-10x^2+1"));
    EXPECT_EQ(r.to_generic(x * x + r.original_L().one()), r.to_generic(x) * r.to_generic(x) + r.L().one());
    // same seed gives the same substitution
    auto r2 = Resolvent<Rational>::build(qp("x^4-10x^2+1"), {.seed = 3});
    EXPECT_EQ(r2.quartic(), r.quartic());
}

TEST(Resolvent, ComponentShapes)
{
    auto cyc = Resolvent<Rational>::build(qp("x^4-4x^2+2"), {.seed = 1});
    EXPECT_EQ(cyc.C().component_degrees(), (std::vector<int>{1, 2}));
    auto prod = Resolvent<Rational>::build(qp("x^4-5x^2+6"), {.seed = 1});
    EXPECT_EQ(prod.C().component_degrees(), (std::vector<int>{1, 2}));
    EXPECT_EQ(prod.S().component_degrees(), (std::vector<int>{1, 1, 4}));
}

TEST(Resolvent, FinitePrimeField)
{
    const PrimeField f(101);
    auto r = Resolvent<ModP>::build(parse_poly("x^4+3x+7", f), {.seed = 2});
    Rng rng(2);
    for (int t = 0; t < 10; ++t) {
        auto x = random_unit(r.L(), rng, 50);
        auto s = random_unit(r.S(), rng, 50);
        EXPECT_EQ(r.norm_S_over_C(r.sigma_star(x)), r.C().scalar(x.norm()));
        EXPECT_EQ(r.tau_star(s).norm(), s.norm() * s.norm());
        EXPECT_EQ(r.tau_star(r.sigma_star(x)), x * x * r.L().scalar(x.norm()));
    }
    // a split quartic over 𝔽₅ has only five distinct values for six pair sums
    const PrimeField f5(5);
    EXPECT_THROW(Resolvent<ModP>::build(parse_poly("x^4-6x^3+11x^2-6x", f5)), GenericityExhausted);
}

#include "printers.hpp"
#include "tropvert/liealg.hpp"

#include "gtest/gtest.h"

#include <random>

using namespace tropvert;

namespace {

using QLie = LieElement<Rational>;
using PLie = LieElement<MultiPoly>;

QLie basis(Cap cap, int a, int r, std::optional<int> quo = {})
{
    QLie e(cap, quo);
    e.add_to(a, r, Rational(1));
    return e;
}

QLie random_lie(std::mt19937_64 &rng, Cap cap, std::optional<int> quo = {}, int min_r = 0)
{
    QLie e(cap, quo);
    std::uniform_int_distribution<int> a(0, cap.max_a()), r(min_r, cap.max_r());
    std::uniform_int_distribution<long> num(-3, 3), den(1, 2);
    for (int i = 0; i < 5; ++i) {
        int aa = a(rng), rr = r(rng);
        if (aa + rr >= 1)
            e.add_to(aa, rr, Rational(num(rng), den(rng)));
    }
    return e;
}

MultiPoly chi() { return MultiPoly::variable(VarName::chi()); }

} // namespace

TEST(Bracket, BasisExamples)
{
    Cap cap = Cap::box(4, 4);
    auto e10 = basis(cap, 1, 0), e01 = basis(cap, 0, 1);
    EXPECT_TRUE(bracket(e10, e10).is_zero());

    // <mu, gamma> = 1, so [e_mu, e_gamma] = (-1)^1 * 1 * e_{(1,1)} = -e_{(1,1)}
    auto b = bracket(e10, e01);
    EXPECT_EQ(b.coeff(1, 1), Rational(-1));
    EXPECT_EQ(b.terms().size(), 1u);

    // worked pairing: <(1,1),(2,1)> = -1, bracket = +e_{(3,2)}
    auto c = bracket(basis(cap, 1, 1), basis(cap, 2, 1));
    EXPECT_EQ(c.coeff(3, 2), Rational(1));
}

TEST(Bracket, AntisymmetryAndJacobiRandomized)
{
    std::mt19937_64 rng(1234);
    Cap cap = Cap::box(5, 5);
    for (int i = 0; i < 100; ++i) {
        auto x = random_lie(rng, cap), y = random_lie(rng, cap), z = random_lie(rng, cap);
        EXPECT_TRUE((bracket(x, y) + bracket(y, x)).is_zero());
        auto jac = bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) +
                   bracket(z, bracket(x, y));
        EXPECT_TRUE(jac.is_zero());
    }
}

TEST(AdPowerClosed, MatchesIteratedBrackets)
{
    Cap cap = Cap::box(6, 4);
    auto chi1 = Rational(1);

    // k = 1, class (1,1): coefficient chi
    auto ad1 = ad_power_closed(1, chi1, cap);
    EXPECT_EQ(ad1.coeff(1, 1), Rational(1));
    // class (0,j) never appears (n.i >= 1)
    for (int j = 1; j <= 4; ++j)
        EXPECT_EQ(ad1.coeff(0, j), Rational(0));

    auto A = operator_A(chi1, cap), B = operator_B<Rational>(cap);
    QLie iterated = B;
    for (int k = 1; k <= 4; ++k) {
        iterated = bracket(A, iterated);
        EXPECT_EQ(ad_power_closed(k, chi1, cap), iterated) << "k = " << k;
    }

    // symbolic chi as well
    Cap small = Cap::box(4, 3);
    auto As = operator_A(chi(), small);
    auto Bs = operator_B<MultiPoly>(small);
    EXPECT_EQ(ad_power_closed(2, chi(), small), bracket(As, bracket(As, Bs)));
}

TEST(LogLhsClosed, BoundaryValues)
{
    Cap cap = Cap::box(5, 3);
    auto L = log_lhs_closed(Rational(2), cap);
    EXPECT_EQ(L.coeff(0, 1), Rational(-1));
    EXPECT_EQ(L.coeff(0, 2), Rational(-1, 4));
    EXPECT_EQ(L.coeff(0, 3), Rational(-1, 9));
    for (int a = 1; a <= 5; ++a)
        EXPECT_EQ(L.coeff(a, 0), Rational(0));
}

TEST(BchConjugate, MatchesClosedForm)
{
    auto z = MultiPoly::zero();
    for (Cap cap : {Cap::box(4, 3), Cap::box(6, 3)}) {
        auto A = operator_A(chi(), cap), B = operator_B<MultiPoly>(cap);
        EXPECT_EQ(bch_conjugate(A, B, cap.max_a()), log_lhs_closed(chi(), cap));

        PLie zero(cap);
        EXPECT_EQ(bch_conjugate(zero, B, cap.max_a()), B);
        EXPECT_EQ(bch_conjugate(A, zero, cap.max_a()), zero);
    }
    (void)z;
}

TEST(BchMultiply, WorkedExampleAndInverses)
{
    Cap cap = Cap::box(4, 2);
    auto X = basis(cap, 1, 1, 2), Y = basis(cap, 2, 1, 2);
    auto prod = bch_multiply(X, Y);
    // X + Y + (1/2)[X,Y] with [e_{(1,1)}, e_{(2,1)}] = e_{(3,2)}
    EXPECT_EQ(prod.coeff(1, 1), Rational(1));
    EXPECT_EQ(prod.coeff(2, 1), Rational(1));
    EXPECT_EQ(prod.coeff(3, 2), Rational(1, 2));
    EXPECT_EQ(prod.terms().size(), 3u);

    std::mt19937_64 rng(8);
    for (int i = 0; i < 40; ++i) {
        auto u = random_lie(rng, Cap::box(4, 3), 3, 1);
        EXPECT_TRUE(bch_multiply(u, -u).is_zero());
        // same ray commutes: product is the sum
        QLie v(Cap::box(4, 3), 3), w(Cap::box(4, 3), 3);
        v.add_to(1, 1, Rational(i % 5 - 2));
        v.add_to(2, 2, Rational(1, 2));
        w.add_to(3, 3, Rational(2));
        EXPECT_EQ(bch_multiply(v, w), v + w);
    }
}

TEST(BchMultiply, MatchesOrder3FormulaAndAssociativity)
{
    std::mt19937_64 rng(99);
    Cap cap = Cap::box(5, 3);
    for (int i = 0; i < 30; ++i) {
        auto X = random_lie(rng, cap, 3, 1), Y = random_lie(rng, cap, 3, 1);
        // log(exp X exp Y) = X + Y + 1/2 [X,Y] + 1/12([X,[X,Y]] - [Y,[X,Y]])
        auto XY = bracket(X, Y);
        auto expect = X + Y + XY.scale(Rational(1, 2)) +
                      bracket(X, XY).scale(Rational(1, 12)) -
                      bracket(Y, XY).scale(Rational(1, 12));
        EXPECT_EQ(bch_multiply(X, Y), expect);

        auto Z = random_lie(rng, cap, 3, 1);
        EXPECT_EQ(bch_multiply(bch_multiply(X, Y), Z), bch_multiply(X, bch_multiply(Y, Z)));
    }
}

TEST(SolveOmegaLiepath, RankOneIsMacmahon)
{
    // chi = 1: Omega(a,1) = [t^a] M(-t) = (-1)^a * (plane partitions of a)
    auto sol = solve_omega_liepath(Rational(1), 1, 6);
    std::map<std::pair<int, int>, Rational> m(sol.begin(), sol.end());
    EXPECT_EQ((m[{0, 1}]), Rational(1));
    EXPECT_EQ((m[{1, 1}]), Rational(-1));
    EXPECT_EQ((m[{2, 1}]), Rational(3));
    EXPECT_EQ((m[{3, 1}]), Rational(-6));
    EXPECT_EQ((m[{4, 1}]), Rational(13));
    EXPECT_EQ((m[{5, 1}]), Rational(-24));
    EXPECT_EQ((m[{6, 1}]), Rational(48));
}

TEST(BchMultiply, RefusesUnboundedDepth)
{
    // no quotient and a deep cap: the Dynkin series has no usable cutoff
    Cap deep = Cap::box(8, 8);
    auto u = basis(deep, 1, 1), v = basis(deep, 2, 1);
    EXPECT_THROW(bch_multiply(u, v), NotNilpotent);
    EXPECT_THROW(solve_omega_liepath(Rational(1), 4, 4), NotNilpotent);
}

TEST(SolveOmegaLiepath, RankTwoAppendixФixtures)
{
    auto sol = solve_omega_liepath(Rational(1), 2, 4);
    std::map<std::pair<int, int>, Rational> m(sol.begin(), sol.end());
    EXPECT_EQ((m[{2, 2}]), Rational(-1));
    EXPECT_EQ((m[{0, 2}]), Rational(0));
    EXPECT_EQ((m[{1, 2}]), Rational(0));

    auto sym = solve_omega_liepath(chi(), 2, 4);
    std::map<std::pair<int, int>, MultiPoly> ms(sym.begin(), sym.end());
    EXPECT_EQ((ms[{1, 1}]), -chi());
    EXPECT_EQ((ms[{2, 2}]), -chi());
    EXPECT_EQ((ms[{0, 1}]), MultiPoly(1));
}

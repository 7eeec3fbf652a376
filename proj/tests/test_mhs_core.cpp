#include "support/f2_oracle.hpp"
#include "support/random_models.hpp"

#include <dmhs/mhs/splitting.hpp>

#include <gtest/gtest.h>

using namespace dmhs;
using namespace dmhs::testing;

TEST(MhsCore, ExampleThreeDelta) {
    Rational a(2), b(-3), y(5);
    auto o = gallery::example3_orbit(a, b);
    MhsPoint x{o.data, orbit_point_imag(o, {y})};
    ASSERT_TRUE(validate_point(x).in_d()) << validate_point(x).failure;
    auto d = decompose(x);
    QMatrix de(3, 3), se = QMatrix::identity(3);
    de(0, 2) = b;
    de(1, 2) = a * y;
    se(1, 2) = -b / (2 * y);
    EXPECT_EQ(d.delta, de);
    EXPECT_EQ(d.spl, se);
    EXPECT_EQ(delta_W(x), de);
    EXPECT_TRUE(in_L(o.data.frame(), d.f_gr, d.delta));
}

TEST(MhsCore, ExampleFourDelta) {
    auto o = gallery::example4_orbit(Rational(1, 2), Rational(3));
    MhsPoint x{o.data, orbit_point_imag(o, {Rational(4)})};
    auto d = decompose(x);
    EXPECT_EQ(d.delta(0, 3), Rational(5));
    EXPECT_EQ(d.spl, QMatrix::identity(4));
}

TEST(MhsCore, SplitPointHasZeroDelta) {
    auto o = gallery::example3_orbit(Rational(1), Rational(2));
    MhsPoint x{o.data, orbit_point_imag(o, {Rational(3)})};
    MhsPoint s{o.data, split_point(x)};
    EXPECT_TRUE(decompose(s).delta.is_zero());
    EXPECT_EQ(decompose(s).f_gr, decompose(x).f_gr);
}

TEST(MhsCore, PointOutsideDomainIsRejected) {
    auto o = gallery::example3_orbit(Rational(0), Rational(0));
    MhsPoint x{o.data, orbit_point_imag(o, {Rational(-1)})};
    auto c = validate_point(x);
    EXPECT_FALSE(c.in_d());
    EXPECT_FALSE(c.positive);
    EXPECT_THROW(require_in_d(x), ValidationError);
}

TEST(MhsCore, RecomposeRoundTrip) {
    Rng g(31);
    for (int k = 0; k < 30; ++k) {
        MhsPoint x = random_mhs_point(g, 5);
        EXPECT_EQ(recompose(x.data, decompose(x)).f, x.f);
    }
}

TEST(MhsCore, DeltaLiesInL) {
    // delta is returned in graded coordinates
    Rng g(32);
    for (int k = 0; k < 10; ++k) {
        RandomOrbit o = random_orbit(g, 5);
        MhsPoint x{o.orbit.data, orbit_point_imag(o.orbit, {Rational(2)})};
        if (!validate_point(x).in_d()) continue;
        auto d = decompose(x);
        EXPECT_TRUE(in_L(x.data.frame(), d.f_gr, d.delta));
    }
}

TEST(Monodromy, PureCaseIsMonodromyFiltration) {
    // W concentrated in weight 1, N a single Jordan block of length 3
    QFiltration w(3, {{1, QSubspace::full(3)}});
    QMatrix n = QMatrix::from_rows({{0, 1, 0}, {0, 0, 1}, {0, 0, 0}});
    auto m = relative_monodromy(w, n);
    ASSERT_TRUE(m.has_value());
    EXPECT_EQ((*m)[-2].dim(), 0u);
    EXPECT_EQ((*m)[-1], QSubspace::coordinate(3, {0}));
    EXPECT_EQ((*m)[1], QSubspace::coordinate(3, {0, 1}));
    EXPECT_EQ((*m)[3], QSubspace::full(3));
}

TEST(Monodromy, NonexistentCase) {
    // e1 weight -1, e2 weight 0, N e2 = e1: gr N = 0, but N W_0 is not in M_{-2}
    QFiltration w(2, {{-1, QSubspace::coordinate(2, {0})}, {0, QSubspace::full(2)}});
    QMatrix n(2, 2);
    n(0, 1) = 1;
    EXPECT_FALSE(relative_monodromy(w, n).has_value());
}

TEST(Monodromy, ExampleThreeIsTrivialOnTheSplitPart) {
    auto o = gallery::example3_orbit(Rational(0), Rational(1));
    auto m = relative_monodromy(o.data.W(), o.n[0]);
    ASSERT_TRUE(m.has_value());
    GradedFrame fr = o.data.frame();
    EXPECT_TRUE(is_relative_monodromy(fr, o.adapted_n()[0], transform(*m, o.data.basis_inverse())));
}

TEST(Monodromy, PlantedInstancesMatchOracle) {
    Rng g(33);
    for (int k = 0; k < 60; ++k) {
        auto p = f2::planted_instance(g, 5);
        auto m = relative_monodromy(p.w, p.n);
        ASSERT_TRUE(m.has_value());
        EXPECT_EQ(*m, p.m);
        auto sols = f2::search(f2::reduce(p.w, p.n));
        ASSERT_EQ(sols.size(), 1u);
        for (int q = sols[0].lo; q < sols[0].lo + static_cast<int>(sols[0].m.size()); ++q)
            EXPECT_EQ(sols[0].at(q, p.w.ambient()), f2::reduce((*m)[q]));
    }
}

TEST(Monodromy, WrongFiltrationFailsAxioms) {
    QFiltration w(3, {{1, QSubspace::full(3)}});
    QMatrix n = QMatrix::from_rows({{0, 1, 0}, {0, 0, 1}, {0, 0, 0}});
    QFiltration bad(3, {{0, QSubspace::coordinate(3, {0})}, {1, QSubspace::full(3)}});
    EXPECT_FALSE(is_relative_monodromy(GradedFrame{{1, 1, 1}}, n, bad));
}

TEST(Splitting, TateExtensionDoesNotSplit) {
    auto t = gallery::tate_orbit(Rational(1), Rational(0));
    EXPECT_FALSE(splits(t.data.frame(), t.adapted_n()[0]));
    auto t0 = gallery::tate_orbit(Rational(0), Rational(0));
    EXPECT_TRUE(splits(t0.data.frame(), t0.adapted_n()[0]));
}

TEST(Splitting, EllipticSplitsForEveryA) {
    for (Rational a : {Rational(0), Rational(1), Rational(-5, 2)}) {
        auto o = gallery::elliptic_orbit(a, Rational(1));
        auto s = compatible_splitting(o.data.frame(), o.adapted_n()[0]);
        ASSERT_TRUE(s.has_value());
        EXPECT_TRUE(is_splitting(o.data.frame(), *s));
    }
}

TEST(Splitting, ConeSplitsPointwiseButNotCommonly) {
    auto o = gallery::elliptic_cone_orbit();
    auto ns = o.adapted_n();
    GradedFrame fr = o.data.frame();
    EXPECT_FALSE(common_splitting(fr, ns).has_value());
    auto pr = splits_pencil(fr, ns[0], ns[1]);
    EXPECT_TRUE(pr.split);
    EXPECT_FALSE(pr.failing_t.has_value());
}

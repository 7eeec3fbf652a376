#include "support/random_models.hpp"

#include <dmhs/gallery/nocks.hpp>
#include <dmhs/sl2/mild.hpp>
#include <dmhs/sl2/triple.hpp>

#include <gtest/gtest.h>

using namespace dmhs;
using namespace dmhs::testing;

namespace {

QMatrix jordan(std::size_t n) {
    QMatrix m(n, n);
    for (std::size_t k = 0; k + 1 < n; ++k) m(k, k + 1) = 1;
    return m;
}

QMatrix diagonal(std::vector<int> d) {
    QMatrix m(d.size(), d.size());
    for (std::size_t k = 0; k < d.size(); ++k) m(k, k) = d[k];
    return m;
}

}  // namespace

TEST(Triple, JordanBlock) {
    auto t = sl2_triple(jordan(3), diagonal({-2, 0, 2}));
    EXPECT_TRUE(is_sl2_triple(t));
    EXPECT_EQ(commutator(t.n_plus, t.n), t.h);
}

TEST(Triple, RejectsInconsistentGrading) {
    EXPECT_THROW(sl2_triple(jordan(3), diagonal({2, 0, -2})), ValidationError);
}

TEST(Triple, PrimitiveDecompositionOfTwoBlocks) {
    // blocks of size 3 and 1
    QMatrix n(4, 4);
    n(0, 1) = 1;
    n(1, 2) = 1;
    auto t = sl2_triple(n, diagonal({-2, 0, 2, 0}));
    auto dec = primitive_decomposition(t);
    std::size_t total = 0;
    for (auto& [kr, s] : dec.pieces) total += s.dim();
    EXPECT_EQ(total, 4u);
    auto comps = dec.components({1, 2, 3, 4});
    std::vector<Rational> sum(4, Rational(0));
    for (auto& [kr, v] : comps)
        for (std::size_t i = 0; i < 4; ++i) sum[i] += v[i];
    EXPECT_EQ(sum, (std::vector<Rational>{1, 2, 3, 4}));
}

TEST(Orbit, ValidationCatchesBadInput) {
    auto o = gallery::example3_orbit(Rational(1), Rational(0));
    EXPECT_NO_THROW(validate_orbit(o));
    auto bad = o;
    bad.n[0] = QMatrix::identity(3);
    EXPECT_THROW(validate_orbit(bad), ValidationError);
    auto two = gallery::elliptic_cone_orbit();
    two.n[1](1, 2) = 1;
    EXPECT_THROW(validate_orbit(two), ValidationError);
}

TEST(Orbit, RelativeFiltrationsOfExampleThree) {
    auto o = gallery::example3_orbit(Rational(0), Rational(2));
    auto v = validate_orbit(o);
    ASSERT_EQ(v.relative.size(), 1u);
    EXPECT_EQ(v.relative[0], *relative_monodromy(o.data.W(), o.n[0]));
}

TEST(Mild, ModelsWithAZeroAreMild) {
    for (Rational b : {Rational(0), Rational(-3), Rational(1, 2)}) {
        EXPECT_TRUE(is_mild(gallery::example3_orbit(0, b)).mild);
        EXPECT_TRUE(is_mild(gallery::example4_orbit(0, b)).mild);
        EXPECT_TRUE(is_mild(gallery::tate_orbit(0, b)).mild);
        EXPECT_FALSE(is_mild(gallery::example3_orbit(1, b)).mild);
        EXPECT_FALSE(is_mild(gallery::example4_orbit(Rational(2, 3), b)).mild);
        EXPECT_FALSE(is_mild(gallery::tate_orbit(5, b)).mild);
        EXPECT_TRUE(is_mild(gallery::elliptic_orbit(7, b)).mild);
    }
}

TEST(Mild, PointwiseSplittingIsEnough) {
    // no common splitting, but every element of the cone splits
    EXPECT_TRUE(is_mild(gallery::elliptic_cone_orbit()).mild);
}

TEST(Mild, RankSevenConeIsNotMild) {
    auto r = is_mild(gallery::nocks_family(3).orbit);
    EXPECT_FALSE(r.mild);
    EXPECT_FALSE(r.failing.empty());
}

TEST(Mild, ConjugationByGKeepsMildness) {
    Rng g(41);
    for (int k = 0; k < 20; ++k) {
        RandomOrbit o = random_orbit(g, 5);
        EXPECT_EQ(is_mild(o.orbit).mild, o.expect_mild) << o.description;
    }
}

TEST(Diamond, MildOrbitHasDeltaInL) {
    auto d = diamond_point(gallery::example3_orbit(0, 3));
    EXPECT_TRUE(d.weights_nonpositive);
    EXPECT_TRUE(d.in_l);
    EXPECT_TRUE(d.zero_component_matches);
}

TEST(Probe, DivergenceSlopeIsA) {
    for (Rational a : {Rational(1, 3), Rational(4)}) {
        auto p = probe_delta_convergence(gallery::example3_orbit(a, 1));
        EXPECT_FALSE(p.converges);
        EXPECT_NEAR(p.linear_slope, to_double(a), 1e-6);
        EXPECT_NEAR(p.loglog_slope, 1.0, 1e-3);
    }
}

TEST(Probe, MildOrbitConvergesToB) {
    auto p = probe_delta_convergence(gallery::example4_orbit(0, Rational(-5, 2)));
    EXPECT_TRUE(p.converges);
    EXPECT_TRUE(p.cauchy_bound_holds);
    double best = 0;
    for (double x : p.limit) best = std::abs(x) > std::abs(best) ? x : best;
    EXPECT_NEAR(best, -2.5, 1e-8);
}

TEST(Battery, UnanimousOnModels) {
    for (Rational a : {Rational(0), Rational(2)}) {
        auto r = r1eq_battery(gallery::example3_orbit(a, 1));
        EXPECT_TRUE(r.unanimous());
        EXPECT_EQ(r.mild, sgn(a) == 0);
    }
}

TEST(Zeta, WeightSpanBeyondFourIsUnsupported) {
    // gr_-6 of type (-3,-3), gr_0 of type (0,0), delta of type (-3,-3)
    GradedFrame fr{{-6, 0}};
    HodgeFiltration fgr = gallery::hodge_filtration(2, {{0, {gallery::cvec(2, {{1, 1}})}},
                                                        {-3, {gallery::cvec(2, {{0, 1}}), gallery::cvec(2, {{1, 1}})}}});
    QMatrix delta(2, 2);
    delta(0, 1) = 1;
    EXPECT_THROW(zeta_of(fr, fgr, delta), UnsupportedDepthError);
    EXPECT_TRUE(zeta_of(fr, fgr, QMatrix(2, 2)).is_zero());
}

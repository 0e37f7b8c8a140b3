#include <gtest/gtest.h>

#include <cmath>

#include "memfuzzy/errors.hpp"
#include "memfuzzy/fuzzy.hpp"
#include "oracles.hpp"

using namespace memfuzzy;

TEST(Universe, ResolutionAndGrid) {
    const Universe u(1.0, 10.0, 90);
    EXPECT_NEAR(u.resolution(), 0.1, 1e-15);
    EXPECT_NEAR(u.value(0), 1.05, 1e-12);
    EXPECT_NEAR(u.value(89), 9.95, 1e-12);
    EXPECT_NEAR(Universe(0.0, 1.12, 100).resolution(), 0.0112, 1e-15);
    EXPECT_EQ(u.nearest(1.0), 0u);
    EXPECT_EQ(u.nearest(-5.0), 0u);
    EXPECT_EQ(u.nearest(50.0), 89u);
    EXPECT_EQ(u.nearest(5.04), 40u);
}

TEST(Universe, InvalidRejected) {
    EXPECT_THROW(Universe(0.0, 1.0, 1), ParameterError);
    EXPECT_THROW(Universe(1.0, 1.0, 10), ParameterError);
    EXPECT_THROW(Universe(2.0, 1.0, 10), ParameterError);
}

TEST(FuzzyNumber, RejectsBadGrades) {
    const Universe u(0.0, 1.0, 3);
    EXPECT_THROW(FuzzyNumber(u, {0.1, 0.2}), DimensionError);
    EXPECT_THROW(FuzzyNumber(u, {0.1, -0.2, 0.0}), ParameterError);
    EXPECT_NO_THROW(FuzzyNumber(u, {0.1, 2.5, 0.0}));  // heights above 1 are fine
}

TEST(Fuzzify, PeakOnGridPoint) {
    const Universe u(0.0, 1.0, 10);
    const auto f = fuzzify_gaussian(u.value(4), 0.1, u);
    EXPECT_EQ(f.grade(4), 1.0);
    EXPECT_LE(f.height(), 1.0);
}

TEST(Fuzzify, SymmetricAboutMidpoint) {
    const Universe u(0.0, 1.0, 11);
    const auto f = fuzzify_gaussian(0.5, 0.2, u);
    for (std::size_t j = 0; j < 11; ++j) EXPECT_NEAR(f.grade(j), f.grade(10 - j), 1e-14);
}

TEST(Fuzzify, NarrowSigmaIsOneHot) {
    const Universe u(0.0, 1.0, 10);
    const auto f = fuzzify_gaussian(0.33, 0.001, u);
    for (std::size_t j = 0; j < 10; ++j) EXPECT_EQ(f.grade(j), j == 3 ? 1.0 : 0.0);
}

TEST(Fuzzify, Errors) {
    const Universe u(0.0, 1.0, 10);
    EXPECT_THROW((void)fuzzify_gaussian(0.5, 0.0, u), ParameterError);
    EXPECT_THROW((void)fuzzify_gaussian(0.5, -1.0, u), ParameterError);
    EXPECT_NO_THROW((void)fuzzify_gaussian(1.5, 0.1, u));  // warned, not rejected
}

TEST(Centroid, Examples) {
    // grid {1,2,3}
    const Universe u(0.5, 3.5, 3);
    EXPECT_DOUBLE_EQ(defuzzify_centroid(FuzzyNumber(u, {0.5, 1.0, 0.5})), 2.0);
    EXPECT_DOUBLE_EQ(defuzzify_centroid(FuzzyNumber(u, {5.0, 10.0, 5.0})), 2.0);

    // grid {2, 2.5, ..., 5}
    const Universe w(1.75, 5.25, 7);
    const FuzzyNumber out(w, {0.0, 1.0, 2.0, 1.0, 0.5, 0.0, 0.0});
    EXPECT_NEAR(defuzzify_centroid(out), 28.0 / 9.0, 1e-12);
}

TEST(Centroid, EmptyNumberIsAnError) {
    EXPECT_THROW((void)defuzzify_centroid(FuzzyNumber::zero(Universe(0.0, 1.0, 5))), EmptyOutputError);
}

TEST(NormalizePeak, Examples) {
    const Universe u(0.0, 3.0, 3);
    const auto n = normalize_peak(FuzzyNumber(u, {0.0, 2.0, 4.0}));
    EXPECT_EQ(std::vector<double>(n.grades().begin(), n.grades().end()), (std::vector<double>{0.0, 0.5, 1.0}));
    const FuzzyNumber hot(u, {0.0, 1.0, 0.0});
    EXPECT_EQ(normalize_peak(hot), hot);
    EXPECT_EQ(normalize_peak(hot.scaled(7.0)), hot);
    EXPECT_THROW((void)normalize_peak(FuzzyNumber::zero(u)), EmptyOutputError);
}

TEST(Regrid, IdentityAndRefinement) {
    const Universe a(0.0, 1.0, 3);  // 1/6, 1/2, 5/6
    const FuzzyNumber ramp(a, {1.0 / 6.0, 0.5, 5.0 / 6.0});
    EXPECT_EQ(regrid(ramp, a), ramp);

    const Universe b(0.0, 1.0, 5);  // 0.1 ... 0.9, shares 0.5
    const auto r = regrid(ramp, b);
    EXPECT_NEAR(r.grade(2), 0.5, 1e-15);
    // interior points lie on the ramp; the edges hold the end grades
    EXPECT_NEAR(r.grade(1), 0.3, 1e-15);
    EXPECT_NEAR(r.grade(3), 0.7, 1e-15);
    EXPECT_NEAR(r.grade(0), 1.0 / 6.0, 1e-15);
}

TEST(Regrid, OutsideSourceIsZeroAndDisjointRejected) {
    const Universe a(0.0, 1.0, 10);
    const auto f = fuzzify_gaussian(0.5, 0.2, a);
    const auto r = regrid(f, Universe(0.5, 1.5, 10));
    for (std::size_t k = 0; k < 10; ++k) {
        if (r.universe().value(k) > 1.0) EXPECT_EQ(r.grade(k), 0.0);
    }
    EXPECT_THROW((void)regrid(f, Universe(2.0, 3.0, 10)), DimensionError);
}

TEST(Regrid, CoarseTriangleCentroidShiftBounded) {
    // reference: the same triangle sampled on a dense grid
    auto triangle = [](double x) { return std::max(0.0, 1.0 - std::fabs(x - 0.42) / 0.2); };
    const Universe coarse(0.0, 1.0, 12), target(0.0, 1.0, 37), dense(0.0, 1.0, 20000);
    std::vector<double> g;
    for (double v : coarse.values()) g.push_back(triangle(v));
    const auto moved = regrid(FuzzyNumber(coarse, g), target);

    std::vector<double> dg;
    for (double v : dense.values()) dg.push_back(triangle(v));
    const double reference = oracle::centroid(dense.values(), dg);
    EXPECT_LE(std::fabs(defuzzify_centroid(moved) - reference), target.resolution());
}

TEST(FuzzyProperty, CentroidIsScaleInvariant) {
    oracle::Gen gen(41);
    for (int k = 0; k < 300; ++k) {
        const Universe u(gen.uniform(-5.0, 0.0), gen.uniform(0.5, 5.0), gen.index(2, 200));
        auto g = gen.grades(u.count());
        g[gen.index(0, g.size() - 1)] += 0.1;
        const FuzzyNumber f(u, g);
        const double scale = std::exp(gen.uniform(-20.0, 20.0));
        const double c = defuzzify_centroid(f);
        EXPECT_NEAR(defuzzify_centroid(f.scaled(scale)), c, 1e-12 * std::max(1.0, std::fabs(c)));
        EXPECT_NEAR(defuzzify_centroid(normalize_peak(f)), c, 1e-12 * std::max(1.0, std::fabs(c)));
        EXPECT_NEAR(c, oracle::centroid(u.values(), g), 1e-12 * std::max(1.0, std::fabs(c)));
    }
}

TEST(FuzzyProperty, FuzzifyDefuzzifyRoundTrip) {
    oracle::Gen gen(42);
    for (int k = 0; k < 300; ++k) {
        const Universe u(0.0, 1.0, gen.index(20, 200));
        const double sigma = gen.uniform(u.resolution(), 0.08);
        const double x0 = gen.uniform(3.0 * sigma, 1.0 - 3.0 * sigma);
        const auto f = fuzzify_gaussian(x0, sigma, u);
        EXPECT_LE(std::fabs(defuzzify_centroid(f) - x0), u.resolution());
        for (double v : f.grades()) {
            EXPECT_TRUE(std::isfinite(v));
            EXPECT_GE(v, 0.0);
        }
    }
}

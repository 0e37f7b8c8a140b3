#include <gtest/gtest.h>

#include <cmath>

#include "memfuzzy/errors.hpp"
#include "memfuzzy/system.hpp"
#include "oracles.hpp"

using namespace memfuzzy;

namespace {

const device::MemristorParams kDev{};

Variable var(const std::string& name, std::size_t count, double lo = 0.0, double hi = 1.0) {
    return {name, Universe(lo, hi, count), 0.05 * (hi - lo)};
}

FuzzyNumber random_number(oracle::Gen& gen, const Universe& u) { return {u, gen.grades(u.count())}; }

/// Block whose surface is a diagonal of height delta (square universes).
Block diagonal_block(const Variable& in, const Variable& out, double delta) {
    Block b({in}, out, kDev);
    const std::size_t n = out.universe.count();
    Matrix m(n, in.universe.count(), kDev.r_off);
    for (std::size_t i = 0; i < std::min(n, in.universe.count()); ++i) m(i, i) = kDev.r_off - delta;
    b.crossbar().restore(std::move(m), std::vector<std::uint8_t>(n * in.universe.count(), 0), 0);
    return b;
}

}  // namespace

TEST(Block, SectionsAreLaidOutInOrder) {
    const Block b({var("x", 90, 1, 10), var("y", 90, 1, 10)}, var("z", 100, 0, 1.12), kDev);
    ASSERT_EQ(b.inputs().size(), 2u);
    EXPECT_EQ(b.inputs()[0].first_column, 0u);
    EXPECT_EQ(b.inputs()[1].first_column, 90u);
    EXPECT_EQ(b.crossbar().rows(), 100u);
    EXPECT_EQ(b.crossbar().cols(), 180u);
}

TEST(Block, InvalidLayoutsRejected) {
    EXPECT_THROW(Block({}, var("z", 4), kDev), DimensionError);
    EXPECT_THROW(Block({var("x", 4), var("x", 5)}, var("z", 4), kDev), ConfigError);
    Variable bad = var("x", 4);
    bad.sigma = 0.0;
    EXPECT_THROW(Block({bad}, var("z", 4), kDev), ParameterError);
    EXPECT_THROW(Block({var("x", 4)}, bad, kDev), ParameterError);
}

TEST(Block, WrongInputsRejected) {
    Block b({var("x", 4), var("y", 3)}, var("z", 5), kDev);
    const FuzzyNumber x = FuzzyNumber::zero(Universe(0, 1, 4));
    const FuzzyNumber y = FuzzyNumber::zero(Universe(0, 1, 3));
    const FuzzyNumber z = FuzzyNumber::zero(Universe(0, 1, 5));
    EXPECT_THROW((void)b.infer(std::vector<FuzzyNumber>{x}), DimensionError);
    EXPECT_THROW((void)b.infer(std::vector<FuzzyNumber>{y, x}), DimensionError);
    EXPECT_THROW(b.train(std::vector<FuzzyNumber>{x, y}, x, 1e-4), DimensionError);
    EXPECT_NO_THROW(b.train(std::vector<FuzzyNumber>{x, y}, z, 1e-4));
    EXPECT_THROW((void)b.infer_crisp(std::vector<double>{0.5}), DimensionError);
    EXPECT_THROW((void)b.section_surface(2), DimensionError);
}

TEST(Block, ZeroInputGivesZeroOutput) {
    oracle::Gen gen(61);
    Block b({var("x", 8)}, var("z", 6), kDev);
    b.train(std::vector<FuzzyNumber>{random_number(gen, Universe(0, 1, 8))},
            random_number(gen, Universe(0, 1, 6)), 1e-4);
    const auto y = b.infer(std::vector<FuzzyNumber>{FuzzyNumber::zero(Universe(0, 1, 8))});
    for (double v : y.grades()) EXPECT_EQ(v, 0.0);
}

TEST(Block, InferIsTheInvertedRead) {
    oracle::Gen gen(62);
    for (auto mode : {ReadMode::ideal, ReadMode::exact}) {
        Block b({var("x", 12)}, var("z", 9), kDev, mode);
        b.train(std::vector<FuzzyNumber>{random_number(gen, Universe(0, 1, 12))},
                random_number(gen, Universe(0, 1, 9)), 1e-4);
        const std::vector<FuzzyNumber> in{random_number(gen, Universe(0, 1, 12))};
        const auto raw = b.read(in);
        const auto y = b.infer(in);
        for (std::size_t i = 0; i < raw.size(); ++i) {
            EXPECT_LE(raw[i], 0.0);
            EXPECT_EQ(y.grade(i), -raw[i]);
        }
    }
}

TEST(SystemProperty, SingleBlockTrainingIsTheCrossbarWrite) {
    oracle::Gen gen(63);
    for (int k = 0; k < 200; ++k) {
        const auto in = var("x", gen.index(2, 40)), out = var("z", gen.index(2, 40));
        Block b({in}, out, kDev);
        Crossbar ref(out.universe.count(), in.universe.count(), kDev);
        for (int s = 0; s < 3; ++s) {
            const auto a = random_number(gen, in.universe), o = random_number(gen, out.universe);
            const double t0 = gen.uniform(1e-6, 1e-4);
            b.train(std::vector<FuzzyNumber>{a}, o, t0);
            ref.write_pulse(a.grades(), o.grades(), t0);
        }
        EXPECT_EQ(b.crossbar().snapshot_delta(), ref.snapshot_delta());
        EXPECT_EQ(b.section_surface(0), ref.snapshot_delta());
    }
}

TEST(SystemProperty, TwoInputReadIsTheSumOfSections) {
    oracle::Gen gen(64);
    for (int k = 0; k < 200; ++k) {
        const auto x = var("x", gen.index(2, 30)), y = var("y", gen.index(2, 30));
        const auto z = var("z", gen.index(2, 30));
        Block b({x, y}, z, kDev);
        for (int s = 0; s < 3; ++s) {
            b.train(std::vector<FuzzyNumber>{random_number(gen, x.universe), random_number(gen, y.universe)},
                    random_number(gen, z.universe), 1e-5);
        }
        const auto a = random_number(gen, x.universe), c = random_number(gen, y.universe);
        const auto both = b.read(std::vector<FuzzyNumber>{a, c});
        const auto only_x = b.read(std::vector<FuzzyNumber>{a, FuzzyNumber::zero(y.universe)});
        const auto only_y = b.read(std::vector<FuzzyNumber>{FuzzyNumber::zero(x.universe), c});

        // each section's contribution is the section surface times its input
        const Matrix sx = b.section_surface(0);
        const std::vector<double> fx(sx.flat().begin(), sx.flat().end());
        const auto px = oracle::matvec(fx, sx.rows(), sx.cols(), {a.grades().begin(), a.grades().end()});
        for (std::size_t i = 0; i < both.size(); ++i) {
            const double sum = only_x[i] + only_y[i];
            EXPECT_NEAR(both[i], sum, 1e-12 * std::max(1e-6, std::fabs(sum)));
            EXPECT_NEAR(only_x[i], -px[i] / kDev.r_off, 1e-12 * std::max(1e-6, std::fabs(only_x[i])));
        }
    }
}

TEST(SystemProperty, BlockInferenceIsLinear) {
    oracle::Gen gen(65);
    for (int k = 0; k < 200; ++k) {
        const auto x = var("x", gen.index(2, 30)), z = var("z", gen.index(2, 30));
        Block b({x}, z, kDev);
        b.train(std::vector<FuzzyNumber>{random_number(gen, x.universe)}, random_number(gen, z.universe), 1e-4);
        const auto u = random_number(gen, x.universe);
        const double s = gen.uniform(0.0, 4.0);
        const auto yu = b.infer(std::vector<FuzzyNumber>{u});
        const auto ys = b.infer(std::vector<FuzzyNumber>{u.scaled(s)});
        for (std::size_t i = 0; i < yu.grades().size(); ++i) {
            EXPECT_NEAR(ys.grade(i), s * yu.grade(i), 1e-12 * std::max(1e-9, s * yu.grade(i)));
        }
    }
}

TEST(Pipeline, InvalidChainsRejected) {
    EXPECT_THROW(Pipeline({}), DimensionError);
    EXPECT_THROW(Pipeline({Block({var("x", 4), var("y", 4)}, var("z", 4), kDev)}), DimensionError);
    EXPECT_THROW(Pipeline({Block({var("x", 4)}, var("y", 4), kDev),
                           Block({var("y", 4, 2.0, 3.0)}, var("z", 4), kDev)}),
                 DimensionError);
    EXPECT_THROW(Pipeline({Block({var("x", 4)}, var("y", 4), kDev), Block({var("y", 5)}, var("z", 4), kDev)},
                          Conditioning{true, false}),
                 DimensionError);
    EXPECT_NO_THROW(Pipeline({Block({var("x", 4)}, var("y", 4), kDev), Block({var("y", 5)}, var("z", 4), kDev)}));
}

TEST(Pipeline, UntrainedStageIsEmpty) {
    const Pipeline p({Block({var("x", 6)}, var("y", 6), kDev), Block({var("y", 6)}, var("z", 6), kDev)});
    EXPECT_THROW((void)p.infer_crisp(0.5), EmptyOutputError);
}

TEST(Pipeline, IdentityChainKeepsOneHot) {
    const auto x = var("x", 10), y = var("y", 10), z = var("z", 10);
    const Pipeline p({diagonal_block(x, y, 5.0), diagonal_block(y, z, 7.0)});
    for (std::size_t k = 0; k < 10; ++k) {
        std::vector<double> g(10, 0.0);
        g[k] = 1.0;
        const auto out = p.infer(FuzzyNumber(x.universe, g));
        EXPECT_EQ(std::vector<double>(out.grades().begin(), out.grades().end()), g);
    }
}

TEST(Pipeline, RegridsBetweenDifferentGrids) {
    const auto x = var("x", 10), y = var("y", 10), y2 = var("y", 20), z = var("z", 20);
    const Pipeline p({diagonal_block(x, y, 5.0), diagonal_block(y2, z, 5.0)});
    const auto out = p.infer_crisp(0.55);
    EXPECT_NEAR(out.height(), 1.0, 1e-15);
    // the first stage peaks at 0.55; its regridded profile is centred there
    EXPECT_NEAR(defuzzify_centroid(out), 0.55, 0.05);
}

TEST(SystemProperty, PipelineIsDeterministic) {
    oracle::Gen gen(66);
    for (int k = 0; k < 200; ++k) {
        const auto x = var("x", gen.index(2, 20)), y = var("y", gen.index(2, 20)), z = var("z", gen.index(2, 20));
        Block b1({x}, y, kDev), b2({y}, z, kDev);
        b1.train(std::vector<FuzzyNumber>{random_number(gen, x.universe)}, random_number(gen, y.universe), 1e-4);
        b2.train(std::vector<FuzzyNumber>{random_number(gen, y.universe)}, random_number(gen, z.universe), 1e-4);
        const Pipeline p({b1, b2});
        const double in = gen.uniform(0.0, 1.0);
        EXPECT_EQ(p.infer_crisp(in), p.infer_crisp(in));
        const auto out = p.infer_crisp(in);
        EXPECT_NEAR(out.height(), 1.0, 1e-15);
    }
}

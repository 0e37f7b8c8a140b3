#include <gtest/gtest.h>

#include <cmath>

#include "memfuzzy/device.hpp"
#include "memfuzzy/errors.hpp"
#include "oracles.hpp"

using namespace memfuzzy;
using device::MemristorParams;
using device::MemristorState;

namespace {

const MemristorParams kDev{1e-14, 1e-8, 1e3, 1e5};

}  // namespace

TEST(Device, BetaFromReferenceConstants) {
    EXPECT_NEAR(device::beta(kDev), 1.98e10, 1.98e10 * 1e-12);
}

TEST(Device, BetaIsLinearInMobility) {
    MemristorParams p = kDev;
    p.mu_v *= 2.0;
    EXPECT_DOUBLE_EQ(device::beta(p), 2.0 * device::beta(kDev));
}

TEST(Device, DegenerateBoundsRejected) {
    MemristorParams p = kDev;
    p.r_off = p.r_on;
    EXPECT_THROW(device::validate(p), ParameterError);
    EXPECT_THROW((void)device::beta(p), ParameterError);
    p = kDev;
    p.D = 0.0;
    EXPECT_THROW(device::validate(p), ParameterError);
    p = kDev;
    p.mu_v = -1.0;
    EXPECT_THROW(device::validate(p), ParameterError);
}

TEST(Device, ApplyFluxFromPristine) {
    const auto s = device::apply_flux(device::pristine(kDev), kDev, 1e-4);
    // sqrt(1e10 - 1.98e6)
    EXPECT_NEAR(s.memristance, 99990.09950, 1e-4);
    EXPECT_FALSE(s.saturated);
    EXPECT_NEAR(device::delta_m(s, kDev), 9.9005, 1e-4);
}

TEST(Device, ZeroFluxIsIdentity) {
    const MemristorState s{54321.0, false};
    EXPECT_EQ(device::apply_flux(s, kDev, 0.0).memristance, 54321.0);
}

TEST(Device, HugeFluxClampsAtRon) {
    const auto s = device::apply_flux(device::pristine(kDev), kDev, 1.0);
    EXPECT_EQ(s.memristance, kDev.r_on);
    EXPECT_TRUE(s.saturated);
    EXPECT_DOUBLE_EQ(device::delta_m(s, kDev), 99000.0);
}

TEST(Device, NegativeFluxRejected) {
    EXPECT_THROW((void)device::apply_flux(device::pristine(kDev), kDev, -1e-9), ParameterError);
}

TEST(Device, DeltaMOfPristineIsZero) {
    EXPECT_EQ(device::delta_m(device::pristine(kDev), kDev), 0.0);
    EXPECT_EQ(device::state_fraction(device::pristine(kDev), kDev), 0.0);
}

TEST(DeviceProperty, FluxIsAdditive) {
    oracle::Gen gen(11);
    const double b = device::beta(kDev);
    for (int k = 0; k < 300; ++k) {
        const MemristorState s{gen.uniform(2e4, 1e5), false};
        // keep the total below saturation
        const double room = (s.memristance * s.memristance - kDev.r_on * kDev.r_on) / b;
        const double f1 = gen.uniform(0.0, 0.45 * room);
        const double f2 = gen.uniform(0.0, 0.45 * room);
        const auto two_step = device::apply_flux(device::apply_flux(s, kDev, f1), kDev, f2);
        const auto one_step = device::apply_flux(s, kDev, f1 + f2);
        EXPECT_NEAR(two_step.memristance, one_step.memristance, 1e-10 * one_step.memristance);
    }
}

TEST(DeviceProperty, MonotoneAndBounded) {
    oracle::Gen gen(12);
    for (int k = 0; k < 300; ++k) {
        const MemristorState s{gen.uniform(kDev.r_on, kDev.r_off), false};
        const double a = gen.uniform(0.0, 0.2);
        const double c = a + gen.uniform(1e-9, 0.2);
        const auto ma = device::apply_flux(s, kDev, a);
        const auto mc = device::apply_flux(s, kDev, c);
        EXPECT_GE(ma.memristance, kDev.r_on);
        EXPECT_LE(ma.memristance, kDev.r_off);
        EXPECT_GE(mc.memristance, kDev.r_on);
        if (!mc.saturated) EXPECT_GT(ma.memristance, mc.memristance);
    }
}

TEST(DeviceOracle, ClosedFormMatchesOdeIntegration) {
    oracle::Gen gen(13);
    const oracle::Device od{kDev.mu_v, kDev.D, kDev.r_on, kDev.r_off};
    const double b = device::beta(kDev);
    for (int k = 0; k < 100; ++k) {
        const double m0 = gen.uniform(1.5 * kDev.r_on, kDev.r_off);
        const double v = gen.uniform(0.01, 2.0);
        const double t_max = 0.9 * (m0 * m0 - kDev.r_on * kDev.r_on) / (b * v);
        const double t = gen.uniform(1e-3 * t_max, t_max);
        const double expected = oracle::hp_memristance(od, m0, v, t);
        const auto got = device::apply_flux({m0, false}, kDev, v * t);
        EXPECT_NEAR(got.memristance, expected, 1e-9 * expected) << "m0=" << m0 << " v=" << v << " t=" << t;
    }
}

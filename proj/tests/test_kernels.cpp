#include <gtest/gtest.h>
#include <omp.h>

#include <vector>

#include "memfuzzy/device.hpp"
#include "memfuzzy/kernels.hpp"
#include "oracles.hpp"

using namespace memfuzzy;

namespace {

struct Cells {
    Matrix m;
    std::vector<std::uint8_t> sat;
    std::vector<std::uint8_t> fault;
};

Cells random_cells(oracle::Gen& gen, std::size_t rows, std::size_t cols) {
    Cells c{Matrix(rows, cols), std::vector<std::uint8_t>(rows * cols, 0),
            std::vector<std::uint8_t>(rows * cols, 0)};
    for (auto& v : c.m.flat()) v = gen.uniform(9.9e4, 1e5);
    for (auto& f : c.fault) f = gen.uniform(0.0, 1.0) < 0.2 ? 1 : 0;
    return c;
}

}  // namespace

class KernelsParallel : public ::testing::Test {
protected:
    void SetUp() override {
        saved_ = omp_get_max_threads();
        omp_set_num_threads(4);
    }
    void TearDown() override { omp_set_num_threads(saved_); }
    int saved_ = 1;
};

TEST_F(KernelsParallel, WritePulseMatchesSerialBitwise) {
    oracle::Gen gen(21);
    const device::MemristorParams p;
    const kernels::WriteParams wp{1e-3, device::beta(p), p.r_on};
    for (int k = 0; k < 20; ++k) {
        const std::size_t rows = gen.index(64, 160), cols = gen.index(64, 200);
        Cells a = random_cells(gen, rows, cols);
        Cells b = a;
        const auto col = gen.grades(cols);
        const auto row = gen.grades(rows);
        const auto ca = kernels::write_pulse_serial({a.m, a.sat, a.fault}, col, row, wp);
        const auto cb = kernels::write_pulse_parallel({b.m, b.sat, b.fault}, col, row, wp);
        EXPECT_EQ(ca, cb);
        EXPECT_EQ(a.m, b.m);
        EXPECT_EQ(a.sat, b.sat);
    }
}

TEST_F(KernelsParallel, ReadsMatchSerialBitwise) {
    oracle::Gen gen(22);
    for (int k = 0; k < 20; ++k) {
        const std::size_t rows = gen.index(64, 160), cols = gen.index(64, 200);
        const Cells c = random_cells(gen, rows, cols);
        const auto x = gen.grades(cols);
        std::vector<double> s(rows), q(rows);
        kernels::read_ideal_serial(c.m, 1e5, x, s);
        kernels::read_ideal_parallel(c.m, 1e5, x, q);
        EXPECT_EQ(s, q);
        kernels::read_exact_serial(c.m, 1e5, x, s);
        kernels::read_exact_parallel(c.m, 1e5, x, q);
        EXPECT_EQ(s, q);
    }
}

TEST(Kernels, FaultedCellsSkippedByWrite) {
    device::MemristorParams p;
    Matrix m(2, 2, p.r_off);
    std::vector<std::uint8_t> sat(4, 0), fault{1, 0, 0, 1};
    const std::vector<double> ones{1.0, 1.0};
    (void)kernels::write_pulse_serial({m, sat, fault}, ones, ones, {1e-4, device::beta(p), p.r_on});
    EXPECT_EQ(m(0, 0), p.r_off);
    EXPECT_EQ(m(1, 1), p.r_off);
    EXPECT_LT(m(0, 1), p.r_off);
    EXPECT_LT(m(1, 0), p.r_off);
}

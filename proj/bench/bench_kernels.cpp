// Serial reference vs OpenMP kernels on square crossbars.
#include <benchmark/benchmark.h>

#include <vector>

#include "memfuzzy/device.hpp"
#include "memfuzzy/kernels.hpp"
#include "memfuzzy/rng.hpp"

using namespace memfuzzy;

namespace {

struct Fixture {
    explicit Fixture(std::size_t n)
        : m(n, n, 1e5), saturated(n * n, 0), faulted(n * n, 0), col(n), row(n), out(n) {
        Rng rng(7);
        for (auto& v : col) v = rng.uniform01();
        for (auto& v : row) v = rng.uniform01();
        for (auto& v : m.flat()) v = 1e5 - 100.0 * rng.uniform01();
    }
    Matrix m;
    std::vector<std::uint8_t> saturated;
    std::vector<std::uint8_t> faulted;
    std::vector<double> col, row, out;
    kernels::WriteParams wp{1e-9, device::beta({}), 1e3};
};

template <auto Kernel>
void write(benchmark::State& state) {
    Fixture f(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(Kernel({f.m, f.saturated, f.faulted}, f.col, f.row, f.wp));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}

template <auto Kernel>
void read(benchmark::State& state) {
    Fixture f(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        Kernel(f.m, 1e5, f.col, f.out);
        benchmark::DoNotOptimize(f.out.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}

}  // namespace

BENCHMARK(write<kernels::write_pulse_serial>)->Name("write/serial")->RangeMultiplier(4)->Range(64, 1024);
BENCHMARK(write<kernels::write_pulse_parallel>)->Name("write/parallel")->RangeMultiplier(4)->Range(64, 1024);
BENCHMARK(read<kernels::read_ideal_serial>)->Name("read_ideal/serial")->RangeMultiplier(4)->Range(64, 1024);
BENCHMARK(read<kernels::read_ideal_parallel>)->Name("read_ideal/parallel")->RangeMultiplier(4)->Range(64, 1024);
BENCHMARK(read<kernels::read_exact_serial>)->Name("read_exact/serial")->RangeMultiplier(4)->Range(64, 1024);
BENCHMARK(read<kernels::read_exact_parallel>)->Name("read_exact/parallel")->RangeMultiplier(4)->Range(64, 1024);

BENCHMARK_MAIN();

// Serial reference versus OpenMP for each hot loop.
#include <benchmark/benchmark.h>

#include <complex>
#include <random>
#include <vector>

#include "prg/finite_group.hpp"
#include "prg/group.hpp"
#include "prg/kernels.hpp"

using namespace prg;

namespace {

const GroupParams kInvolGroup = make_group(6, 2, 3, 5);  // order 155520
const GroupParams kPowerGroup = make_group(6, 1, 1, 4);  // order 31104

struct ClassSetup {
    EnumeratedGroup E;
    FiniteGroup G;
    ClassStructure cs;
    std::vector<std::vector<std::complex<double>>> w;
};

const ClassSetup& class_setup()
{
    static const ClassSetup s = [] {
        ClassSetup s{enumerate_group(make_group(4, 2, 1, 4)), {}, {}, {}};  // order 3072
        s.G = s.E.as_finite_group();
        s.cs = compute_classes(s.G);
        std::mt19937_64 rng(1);
        std::uniform_real_distribution<double> u(-1, 1);
        s.w.assign(4, std::vector<std::complex<double>>(s.cs.count()));
        for (auto& row : s.w)
            for (auto& x : row)
                x = {u(rng), u(rng)};
        return s;
    }();
    return s;
}

void BM_TauInvolutionsSerial(benchmark::State& st)
{
    for (auto _ : st)
        benchmark::DoNotOptimize(count_tau_involutions_serial(kInvolGroup));
}
void BM_TauInvolutionsOmp(benchmark::State& st)
{
    for (auto _ : st)
        benchmark::DoNotOptimize(count_tau_involutions_omp(kInvolGroup));
}

void BM_PowerImageSerial(benchmark::State& st)
{
    for (auto _ : st)
        benchmark::DoNotOptimize(power_image_count_serial(kPowerGroup, 6));
}
void BM_PowerImageOmp(benchmark::State& st)
{
    for (auto _ : st)
        benchmark::DoNotOptimize(power_image_count_omp(kPowerGroup, 6));
}

void BM_ClassMatricesSerial(benchmark::State& st)
{
    const auto& s = class_setup();
    for (auto _ : st)
        benchmark::DoNotOptimize(class_matrix_combinations_serial(s.G, s.cs, s.w));
}
void BM_ClassMatricesOmp(benchmark::State& st)
{
    const auto& s = class_setup();
    for (auto _ : st)
        benchmark::DoNotOptimize(class_matrix_combinations_omp(s.G, s.cs, s.w));
}

} // namespace

BENCHMARK(BM_TauInvolutionsSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_TauInvolutionsOmp)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_PowerImageSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_PowerImageOmp)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ClassMatricesSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ClassMatricesOmp)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();

// Serial reference vs OpenMP kernels. Argument is the genus.
#include "gr2/birman_craggs.hpp"
#include "gr2/bracket.hpp"
#include "gr2/lattice.hpp"
#include "gr2/relations.hpp"

#include <benchmark/benchmark.h>

using namespace gr2;

namespace {

void assemble(benchmark::State& st, Execution exec) {
  const int g = int(st.range(0));
  build_D2prime(g);
  for (auto _ : st) benchmark::DoNotOptimize(build_B_matrix(g, exec));
}

void kernel(benchmark::State& st, Execution exec) {
  const SparseMatrix b = assemble_B_matrix_serial(int(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(integer_kernel(b, exec).rank());
}

void closure(benchmark::State& st, Execution exec) {
  const int g = int(st.range(0));
  compute_K(g);
  for (auto _ : st) benchmark::DoNotOptimize(theorem_K_certificate(g, exec).closure_rank);
}

void sweep(benchmark::State& st, Execution exec) {
  const int g = int(st.range(0));
  compute_K(g);
  for (auto _ : st) benchmark::DoNotOptimize(verify_relation_sweep(g, exec).total());
}

void boolean_rank(benchmark::State& st, Execution exec) {
  for (auto _ : st) benchmark::DoNotOptimize(dim_B(int(st.range(0)), 3, exec));
}

}  // namespace

BENCHMARK_CAPTURE(assemble, serial, Execution::Serial)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(assemble, parallel, Execution::Parallel)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(kernel, serial, Execution::Serial)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(kernel, parallel, Execution::Parallel)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(closure, serial, Execution::Serial)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(closure, parallel, Execution::Parallel)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(sweep, serial, Execution::Serial)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(sweep, parallel, Execution::Parallel)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(boolean_rank, serial, Execution::Serial)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(boolean_rank, parallel, Execution::Parallel)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

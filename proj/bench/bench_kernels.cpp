#include <benchmark/benchmark.h>

#include "qft/coupled.hpp"
#include "qft/graph.hpp"
#include "qft/kernels.hpp"

using namespace qft;

namespace {

// Dense-ish deterministic digraph on n vertices.
GraphTruncation bench_graph(int n) {
  std::vector<std::vector<int>> A(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A[i][j] = ((i * 7 + j * 3) % 5) < 2;
  return sft_graph(A);
}

template <auto Fn>
void BM_closed_walks(benchmark::State& st) {
  GraphTruncation g = bench_graph(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(Fn(g, 40));
}

template <auto Fn>
void BM_closed_walks_meeting(benchmark::State& st) {
  GraphTruncation g = bench_graph(static_cast<int>(st.range(0)));
  std::vector<char> in_F(g.size(), 0);
  for (std::size_t v = 0; v < g.size(); v += 3) in_F[v] = 1;
  for (auto _ : st) benchmark::DoNotOptimize(Fn(g, in_F, 40));
}

const coupled::CouplingParams kParams{Rational(3, 4), Rational(5, 8), Rational(1, 4)};

template <auto Fn>
void BM_image_rects(benchmark::State& st) {
  coupled::Grid g{static_cast<int>(st.range(0)), 2};
  for (auto _ : st) benchmark::DoNotOptimize(Fn(kParams, g));
}

template <auto Fn>
void BM_refine(benchmark::State& st) {
  coupled::Grid g{static_cast<int>(st.range(0)), 2};
  auto rects = coupled::serial::image_rects(kParams, g);
  coupled::Bitmap sym(static_cast<std::size_t>(g.cells())), tail(sym.size());
  for (long c = 0; c < g.cells(); ++c) {
    sym[static_cast<std::size_t>(c)] = g.symbol(c) == 0;
    tail[static_cast<std::size_t>(c)] = (c * 2654435761u) % 3 == 0;
  }
  for (auto _ : st) benchmark::DoNotOptimize(Fn(g, rects, sym, tail));
}

}  // namespace

BENCHMARK(BM_closed_walks<kernels::serial::closed_walks>)->Name("closed_walks/serial")->Arg(32)->Arg(128);
BENCHMARK(BM_closed_walks<kernels::omp::closed_walks>)->Name("closed_walks/omp")->Arg(32)->Arg(128);
BENCHMARK(BM_closed_walks_meeting<kernels::serial::closed_walks_meeting>)->Name("closed_walks_meeting/serial")->Arg(32)->Arg(128);
BENCHMARK(BM_closed_walks_meeting<kernels::omp::closed_walks_meeting>)->Name("closed_walks_meeting/omp")->Arg(32)->Arg(128);
BENCHMARK(BM_image_rects<coupled::serial::image_rects>)->Name("image_rects/serial")->Arg(6)->Arg(8);
BENCHMARK(BM_image_rects<coupled::omp::image_rects>)->Name("image_rects/omp")->Arg(6)->Arg(8);
BENCHMARK(BM_refine<coupled::serial::refine>)->Name("refine/serial")->Arg(6)->Arg(8);
BENCHMARK(BM_refine<coupled::omp::refine>)->Name("refine/omp")->Arg(6)->Arg(8);

BENCHMARK_MAIN();

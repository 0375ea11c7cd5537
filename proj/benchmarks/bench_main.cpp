#include <benchmark/benchmark.h>

#include <map>
#include <random>
#include <vector>

#include "qcube/lattice.hpp"
#include "qcube/maxconv.hpp"
#include "qcube/quasicube.hpp"
#include "qcube/verifier.hpp"

using namespace qcube;

namespace {

PointSet box_cells(int dim, Coord lo, Coord hi) {
  return PointSet(dim, Box::cube(dim, lo, hi).cells());
}

WeightFn random_fn(std::mt19937_64& rng, int support) {
  std::map<Coord, double> m;
  for (int i = 0; i < support; ++i)
    m[static_cast<Coord>(rng() % 256)] = 1.0 + static_cast<double>(rng() % 16);
  return WeightFn(m);
}

void BM_sumset(benchmark::State& state) {
  const auto side = static_cast<Coord>(state.range(0));
  const PointSet a = box_cells(2, 0, side - 1);
  const PointSet b = box_cells(2, 0, side - 1);
  for (auto _ : state) benchmark::DoNotOptimize(sumset(a, b));
}
BENCHMARK(BM_sumset)->Arg(4)->Arg(8)->Arg(16);

void BM_max_convolve(benchmark::State& state) {
  std::mt19937_64 rng(7);
  const WeightFn a = random_fn(rng, static_cast<int>(state.range(0)));
  const WeightFn b = random_fn(rng, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(max_convolve(a, b));
}
BENCHMARK(BM_max_convolve)->Arg(16)->Arg(64)->Arg(128);

void BM_check_theorem(benchmark::State& state) {
  const auto n = static_cast<Coord>(state.range(0));
  const PointSet a = box_cells(2, 0, n - 1);
  const PointSet u = box_cells(2, 0, 1);
  for (auto _ : state) benchmark::DoNotOptimize(check_theorem(a, a, u));
}
BENCHMARK(BM_check_theorem)->Arg(2)->Arg(4)->Arg(8);

void BM_proof_trace(benchmark::State& state) {
  const auto n = static_cast<Coord>(state.range(0));
  const PointSet a = box_cells(2, 0, n - 1);
  const PointSet u = box_cells(2, 0, 1);
  for (auto _ : state) benchmark::DoNotOptimize(proof_trace(a, a, u));
}
BENCHMARK(BM_proof_trace)->Arg(2)->Arg(4);

void BM_contained_in_quasicube(benchmark::State& state) {
  std::mt19937_64 rng(11);
  const std::vector<Point> cells = Box::cube(3, 0, 2).cells();
  std::vector<PointSet> subsets;
  for (int i = 0; i < 64; ++i) {
    std::vector<Point> pts;
    for (const Point& p : cells)
      if (rng() % 4 == 0) pts.push_back(p);
    if (pts.empty()) pts.push_back(cells[0]);
    subsets.emplace_back(3, pts);
  }
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(contained_in_quasicube(subsets[i]));
    i = (i + 1) % subsets.size();
  }
}
BENCHMARK(BM_contained_in_quasicube);

}  // namespace

BENCHMARK_MAIN();

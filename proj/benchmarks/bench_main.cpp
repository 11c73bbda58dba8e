#include <benchmark/benchmark.h>

#include <random>

#include "abplab/closed_form.hpp"
#include "abplab/contact.hpp"
#include "abplab/solver.hpp"
#include "abplab/sym_matrix.hpp"

using namespace abplab;

static void BM_SymEigen3(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  std::vector<SymMatrix> ms;
  for (int k = 0; k < 1024; ++k) {
    SymMatrix m(3);
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j) m.set(i, j, d(rng));
    ms.push_back(m);
  }
  std::size_t k = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sym_eigenvalues(ms[k++ & 1023]));
}
BENCHMARK(BM_SymEigen3);

static void BM_ContactSet2D(benchmark::State& state) {
  const auto g = Grid::build(GridSpec::box(2, 2.0 / static_cast<double>(state.range(0))));
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  std::vector<double> v(g->size());
  for (auto& x : v) x = d(rng);
  const ScalarField u(g, v);
  for (auto _ : state) benchmark::DoNotOptimize(upper_contact_set(u).count());
}
BENCHMARK(BM_ContactSet2D)->Arg(16)->Arg(32)->Arg(64);

static void BM_ContactSet3D(benchmark::State& state) {
  const auto g = Grid::build(GridSpec::ball(3, 1.0 / static_cast<double>(state.range(0))));
  const ScalarField u = closed_form("neg_bump").sample(g);
  for (auto _ : state) benchmark::DoNotOptimize(upper_contact_set(u).count());
}
BENCHMARK(BM_ContactSet3D)->Arg(4)->Arg(8);

static void BM_SolveY2cosx(benchmark::State& state) {
  const auto g = Grid::build(GridSpec::ball(2, 1.0 / static_cast<double>(state.range(0))));
  const ClosedForm u = closed_form("y2cosx");
  const DiagonalOperator op = linear_operator("y2cosx");
  const LinearProblem prob{g, op.sample(g), manufactured_rhs(u, op, g).f, u.sample(g)};
  for (auto _ : state) benchmark::DoNotOptimize(solve_linear_dirichlet(prob).sweeps);
}
BENCHMARK(BM_SolveY2cosx)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();

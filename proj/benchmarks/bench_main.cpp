#include <benchmark/benchmark.h>

#include <numeric>

#include "ndl/core_eval.hpp"
#include "ndl/core_parser.hpp"
#include "ndl/corpus.hpp"
#include "ndl/programs.hpp"

namespace {

std::vector<int> iota_list(std::size_t n) {
  std::vector<int> xs(n);
  std::iota(xs.begin(), xs.end(), 1);
  return xs;
}

void BM_PermTreeValues(benchmark::State& state) {
  const auto xs = iota_list(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ndl::values(ndl::programs::perm_nd(xs)));
}
BENCHMARK(BM_PermTreeValues)->DenseRange(3, 7);

void BM_PermExplorePlans(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto xs = iota_list(n);
  for (auto _ : state) {
    auto ex = ndl::explore_plans(
        [&](const ndl::ChoicePlan& p) { benchmark::DoNotOptimize(ndl::programs::perm_plan(p, xs)); },
        ndl::PlanBudget{n + 1});
    benchmark::DoNotOptimize(ex.plans.size());
  }
}
BENCHMARK(BM_PermExplorePlans)->DenseRange(3, 6);

void BM_EvalPerm(benchmark::State& state) {
  const auto& prog = ndl::core::lists_program();
  const auto e = ndl::core::parse_expression(
      prog, "perm (" + ndl::core::list_literal(iota_list(static_cast<std::size_t>(state.range(0)))) + ")");
  const ndl::core::EvalConfig cfg{static_cast<ndl::core::Semantics>(state.range(1)),
                                  ndl::core::Strategy::Lazy};
  for (auto _ : state) benchmark::DoNotOptimize(ndl::core::eval(prog, e, cfg).values.size());
}
BENCHMARK(BM_EvalPerm)->ArgsProduct({{2, 3, 4}, {0, 1}});

void BM_EvalDoubleChoice(benchmark::State& state) {
  const auto& prog = ndl::core::peano_program();
  const auto e = ndl::core::parse_expression(prog, "double (0 ? 1)");
  for (auto _ : state) benchmark::DoNotOptimize(ndl::core::compare_semantics(prog, e));
}
BENCHMARK(BM_EvalDoubleChoice);

}  // namespace
BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include "vahlen/builtin_examples.hpp"
#include "vahlen/limitset.hpp"
#include "vahlen/verify.hpp"

using namespace vahlen;

static void BM_CliffordProduct(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  Clifford a(n), b(n);
  for (int m = 0; m < a.blade_count(); ++m) {
    a.set_coeff(static_cast<unsigned>(m), 0.25 * (m + 1));
    b.set_coeff(static_cast<unsigned>(m), 1.0 / (m + 2));
  }
  for (auto _ : state) {
    Clifford c = a * b;
    benchmark::DoNotOptimize(c);
  }
}
BENCHMARK(BM_CliffordProduct)->Arg(3)->Arg(4)->Arg(6);

static void BM_EnumerateNormalForms(benchmark::State& state) {
  GroupSpec s = builtin_example(ExampleId::Example2);
  EnumConfig cfg;
  for (auto _ : state) {
    Enumeration en = enumerate_normal_forms(s, static_cast<int>(state.range(0)), cfg);
    benchmark::DoNotOptimize(en.forms.size());
  }
}
BENCHMARK(BM_EnumerateNormalForms)->Arg(3)->Arg(5);

static void BM_ImageSphereChain(benchmark::State& state) {
  GroupSpec s = builtin_example(ExampleId::Example2);
  Moebius w = s.gens1.front().second.compose(s.gens2.front().second);
  for (auto _ : state) {
    Sphere sp = s.sphere.sphere;
    for (int k = 0; k < 8; ++k) sp = image_sphere(w, sp);
    benchmark::DoNotOptimize(sp.radius);
  }
}
BENCHMARK(BM_ImageSphereChain);

static void BM_SuiteExample1(benchmark::State& state) {
  GroupSpec s = builtin_example(ExampleId::Example1);
  CheckConfig cfg = default_check_config(ExampleId::Example1);
  cfg.max_length = 4;
  for (auto _ : state) {
    SuiteReport rep = run_suite(s, cfg, "example1");
    benchmark::DoNotOptimize(rep.checks.size());
  }
}
BENCHMARK(BM_SuiteExample1);

BENCHMARK_MAIN();

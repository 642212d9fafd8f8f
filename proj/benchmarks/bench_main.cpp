#include <benchmark/benchmark.h>

#include <random>

#include "friedlab/detect.hpp"
#include "friedlab/scan.hpp"

using namespace friedlab;

namespace {

RatFun draw(std::mt19937_64& rng, int n, int half) {
  std::uniform_real_distribution<double> re(-2, 2), im(0.2, 2), co(-1, 1);
  RatFun f;
  for (int k = 0; k < n; ++k) f = f + RatFun::pole_term(cplx(re(rng), half * im(rng)), cplx(co(rng), co(rng)));
  return f;
}

FriedrichsModel model(int n) {
  std::mt19937_64 rng(7);
  return FriedrichsModel(draw(rng, n, -1), draw(rng, n, -1), 0.0);
}

}  // namespace

static void BM_poly_roots(benchmark::State& st) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<cplx> c;
  for (int k = 0; k <= st.range(0); ++k) c.emplace_back(u(rng), u(rng));
  Poly p(c);
  for (auto _ : st) benchmark::DoNotOptimize(poly_roots(p));
}
BENCHMARK(BM_poly_roots)->Arg(4)->Arg(8)->Arg(16);

static void BM_m_function(benchmark::State& st) {
  auto m = model(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(m_function(m, cplx(0.3, 0.7)));
}
BENCHMARK(BM_m_function)->Arg(2)->Arg(6);

static void BM_defect_hardy_plus(benchmark::State& st) {
  auto m = model(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(defect_hardy_plus(m));
}
BENCHMARK(BM_defect_hardy_plus)->Arg(2)->Arg(6);

static void BM_scan_mu_hat(benchmark::State& st) {
  FriedrichsModel base(RatFun::pole_term(-I), RatFun::pole_term(-I, -2.0) + RatFun::pole_term(-2.0 * I, 3.0), 0.0);
  GridSpec g{-3, 4, -3.5, 3.5, static_cast<int>(st.range(0)), static_cast<int>(st.range(0))};
  for (auto _ : st) benchmark::DoNotOptimize(scan_defect_grid(base, Plane::mu_hat, g, 1));
  st.SetItemsProcessed(st.iterations() * g.nx * g.ny);
}
BENCHMARK(BM_scan_mu_hat)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

static void BM_verify(benchmark::State& st) {
  VerifySettings s;
  s.models = static_cast<int>(st.range(0));
  s.threads = 1;
  for (auto _ : st) benchmark::DoNotOptimize(run_verify_suite(s));
}
BENCHMARK(BM_verify)->Arg(100)->Unit(benchmark::kMillisecond);

static void BM_figure2(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(figure2_pipeline({}, 100, 300));
}
BENCHMARK(BM_figure2)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();

#include <kpspin/classical.hpp>
#include <kpspin/floquet.hpp>
#include <kpspin/otoc.hpp>
#include <kpspin/spectral.hpp>

#include <benchmark/benchmark.h>

using namespace kpspin;

namespace {

ModelParams drive(int p)
{
	ModelParams m;
	m.p = p;
	m.lambda = 0.7;
	m.h = 0.1;
	m.alpha_base = pi;
	return m;
}

void BM_BuildFloquet(benchmark::State& state)
{
	const SpinAlgebra a(state.range(0));
	(void)a.sx_eigenvectors();
	for (auto _ : state)
		benchmark::DoNotOptimize(build_floquet(drive(2), a).matrix().data());
}
BENCHMARK(BM_BuildFloquet)->Arg(64)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_EvolveStep(benchmark::State& state)
{
	const SpinAlgebra a(state.range(0));
	const auto u = build_floquet(drive(2), a);
	const auto psi = coherent_state(pi / 5, 0.0, a);
	const Matrix obs = a.sz() / a.spin();
	for (auto _ : state)
		benchmark::DoNotOptimize(evolve(psi, u, 100, obs).series.values.back());
	state.SetItemsProcessed(state.iterations() * 100);
}
BENCHMARK(BM_EvolveStep)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_OtocStep(benchmark::State& state)
{
	const SpinAlgebra a(state.range(0));
	const auto u = build_floquet(drive(2), a);
	for (auto _ : state)
		benchmark::DoNotOptimize(otoc_series(u, a, 10).values.back());
	state.SetItemsProcessed(state.iterations() * 10);
}
BENCHMARK(BM_OtocStep)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_ClassicalMap(benchmark::State& state)
{
	const KickedMap map(pi + 0.1, 0.7, static_cast<int>(state.range(0)));
	ClassicalState s = ClassicalState::from_angles(0.6, 0.2);
	for (auto _ : state) {
		s = map(s);
		benchmark::DoNotOptimize(s);
	}
	state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_ClassicalMap)->Arg(2)->Arg(4);

void BM_Eigenphases(benchmark::State& state)
{
	const SpinAlgebra a(state.range(0));
	for (auto _ : state) {
		const auto u = build_floquet(drive(3), a);
		benchmark::DoNotOptimize(eigenphases(u, 3).phases.data());
	}
}
BENCHMARK(BM_Eigenphases)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();

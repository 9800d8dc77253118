#include <benchmark/benchmark.h>

#include "bimodal/dark_state.hpp"
#include "bimodal/dynamics.hpp"
#include "bimodal/measurement.hpp"
#include "bimodal/scenario.hpp"

using namespace bimodal;

namespace {

BasisState all_ground(int atoms, int n_a, int n_b) {
    BasisState s;
    s.atoms.assign(atoms, AtomLevel::G);
    s.n_a = n_a;
    s.n_b = n_b;
    return s;
}

ModelConfig pulsed_model(int atoms, int n_a) {
    ModelConfig m;
    m.schedule.g10 = 15.0;
    m.schedule.g20 = 15.0;
    m.schedule.separation = 4.0 / 3.0;
    m.sector = build_sector(all_ground(atoms, n_a, 0));
    return m;
}

void BM_BuildSector(benchmark::State& state) {
    const int atoms = static_cast<int>(state.range(0));
    const int photons = static_cast<int>(state.range(1));
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_sector(all_ground(atoms, photons, 0)));
    }
}
BENCHMARK(BM_BuildSector)->Args({2, 2})->Args({4, 2})->Args({6, 3})->Args({8, 2});

void BM_HamiltonianAt(benchmark::State& state) {
    const ModelConfig m = pulsed_model(static_cast<int>(state.range(0)), 2);
    Eigen::MatrixXcd H;
    double t = 0.0;
    for (auto _ : state) {
        hamiltonian_at_into(m, t, H);
        benchmark::DoNotOptimize(H.data());
        t += 1e-4;
    }
    state.counters["dim"] = static_cast<double>(m.sector.size());
}
BENCHMARK(BM_HamiltonianAt)->Arg(2)->Arg(4)->Arg(6);

void BM_PropagateSinglePhoton(benchmark::State& state) {
    const int atoms = static_cast<int>(state.range(0));
    const ModelConfig m = pulsed_model(atoms, 1);
    StateVector psi0;
    psi0.amplitudes = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(m.sector.size()));
    psi0.amplitudes(m.sector.index_of(all_ground(atoms, 1, 0))) = 1.0;
    const TimeGrid grid{-5.0, 4.0 / 3.0 + 5.0, 8000};
    for (auto _ : state) {
        benchmark::DoNotOptimize(propagate(m, psi0, grid, 8000));
    }
}
BENCHMARK(BM_PropagateSinglePhoton)->Arg(2)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_DarkStateNumeric(benchmark::State& state) {
    const ModelConfig m = pulsed_model(static_cast<int>(state.range(0)), 3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(dark_states_numeric(m, 0.5));
    }
}
BENCHMARK(BM_DarkStateNumeric)->Arg(2)->Arg(3)->Arg(4);

void BM_FreezeState(benchmark::State& state) {
    const ModelConfig m = pulsed_model(static_cast<int>(state.range(0)), 3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(freeze_state(m, 1.0));
    }
}
BENCHMARK(BM_FreezeState)->Arg(2)->Arg(3)->Arg(4);

void BM_ProjectQutrit(benchmark::State& state) {
    ModelConfig m = pulsed_model(2, 2);
    const StateVector frozen = freeze_state(m, 1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(project_qutrit(frozen, m.sector, Sign::Plus, Sign::Plus));
    }
}
BENCHMARK(BM_ProjectQutrit);

void BM_ScenarioEpr2(benchmark::State& state) {
    const ScenarioConfig config = ScenarioConfig::from_name("epr2");
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_scenario(config));
    }
}
BENCHMARK(BM_ScenarioEpr2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

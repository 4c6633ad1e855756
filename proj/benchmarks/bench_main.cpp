#include <benchmark/benchmark.h>

#include <random>

#include "gqft/algebra.hpp"
#include "gqft/fields.hpp"
#include "gqft/invariance.hpp"
#include "gqft/scattering.hpp"
#include "gqft/spin.hpp"

using namespace gqft;

namespace {

Species scalar(const std::string& name, double m, int two_s = 0) {
  Species s;
  s.name = name;
  s.mass = m;
  s.spin = SpinLabel{two_s};
  return s;
}

ModeLattice lattice(int n, int n_max, int two_s = 0) { return ModeLattice(2 * kPi, n, {scalar("a", 1.0, two_s)}, n_max); }

void BM_Compose(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> n(0.0, 1.0);
  GalileiElement g1, g2;
  g1.v = Vec3(n(rng), n(rng), n(rng));
  g2.a = Vec3(n(rng), n(rng), n(rng));
  g2.R = Rotation(Eigen::Quaterniond(n(rng), n(rng), n(rng), n(rng)).normalized());
  for (auto _ : state) benchmark::DoNotOptimize(compose(g2, g1));
}
BENCHMARK(BM_Compose);

void BM_WignerD(benchmark::State& state) {
  const SpinLabel s{static_cast<int>(state.range(0))};
  const Rotation r = Rotation::axis_angle(Vec3(1, 2, 3).normalized(), 0.7);
  for (auto _ : state) benchmark::DoNotOptimize(wigner_d(s, r));
}
BENCHMARK(BM_WignerD)->DenseRange(1, 8, 7);

void BM_BuildGenerators(benchmark::State& state) {
  AlgebraConfig a;
  a.n_levels = static_cast<int>(state.range(0));
  a.s = SpinLabel{1};
  for (auto _ : state) benchmark::DoNotOptimize(build_generators(a));
}
BENCHMARK(BM_BuildGenerators)->Arg(8)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_FockSpace(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(FockSpace(lattice(3, static_cast<int>(state.range(0)))));
  state.counters["dim"] = static_cast<double>(FockSpace(lattice(3, static_cast<int>(state.range(0)))).dim());
}
BENCHMARK(BM_FockSpace)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_RealizeField(benchmark::State& state) {
  const FockSpace space(lattice(3, 2, 1));
  for (auto _ : state)
    benchmark::DoNotOptimize(realize_field(space, {0, 1, FieldVariant::Annihilation, {{1, 0, -1}, 0.3}}));
}
BENCHMARK(BM_RealizeField)->Unit(benchmark::kMillisecond);

void BM_GalileiUnitary(benchmark::State& state) {
  const FockSpace space(lattice(3, 2, 1));
  GalileiElement g;
  g.R = Rotation::axis_angle(Vec3::UnitZ(), kPi / 2);
  g.v = Vec3(1.0, 0.0, 0.0);
  const auto gc = make_grid_compatible(g, space.lattice());
  for (auto _ : state) benchmark::DoNotOptimize(galilei_unitary(gc, space));
}
BENCHMARK(BM_GalileiUnitary)->Unit(benchmark::kMillisecond);

void BM_FieldLaw(benchmark::State& state) {
  const FockSpace space(lattice(3, 2, 1));
  GalileiElement g;
  g.v = Vec3(1.0, 0.0, 0.0);
  const auto gc = make_grid_compatible(g, space.lattice());
  const SparseOp u = galilei_unitary(gc, space);
  const FieldSpec f{0, 1, FieldVariant::Annihilation, {{1, 0, -1}, 0.0}};
  for (auto _ : state) benchmark::DoNotOptimize(verify_field_transformation(gc, u, space, f, 1e-10));
}
BENCHMARK(BM_FieldLaw)->Unit(benchmark::kMillisecond);

void BM_TwoBodyRealize(benchmark::State& state) {
  const FockSpace space(lattice(3, 2));
  const auto p = two_body_polynomial(space.lattice(), 0, 0.5, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(realize(p, space));
}
BENCHMARK(BM_TwoBodyRealize)->Unit(benchmark::kMillisecond);

void BM_SMatrix(benchmark::State& state) {
  const ModelSpec spec = gali_lee_model(0.1, static_cast<int>(state.range(0)), 2);
  const Model model = build_model(spec);
  for (auto _ : state) benchmark::DoNotOptimize(s_matrix(model, spec));
  state.counters["dim"] = static_cast<double>(model.space.dim());
}
BENCHMARK(BM_SMatrix)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include <random>

#include "btsurf/building.hpp"
#include "btsurf/detect.hpp"
#include "btsurf/text.hpp"

using namespace btsurf;

namespace {

std::string fixture(const std::string& name) { return text::read_file(std::string(BTSURF_FIXTURE_DIR) + "/" + name); }

det::DetectInput handlebody_input() {
  det::DetectInput in;
  in.tri = mfd::Triangulation::parse(fixture("handlebody.tri"));
  in.surface = mfd::NormalSurface::parse(fixture("handlebody.surf"), in.tri.size());
  in.coorientation = mfd::Coorientation::parse(fixture("handlebody.coor"), in.surface);
  auto dual = mfd::fundamental_group(in.tri);
  in.rep = grp::PermRep::parse(fixture("handlebody_d2.perm"), dual.pres);
  return in;
}

void RatFuncArithmetic(benchmark::State& state) {
  auto a = ff::RatFunc::parse("(t^2 + 3*t^3 - t^5)/(2 - t + t^4)");
  auto b = ff::RatFunc::parse("(1 + t)/(1 - 2*t^2)");
  for (auto _ : state) benchmark::DoNotOptimize((a * b + a / b).valuation());
}
BENCHMARK(RatFuncArithmetic);

void GraphDistance(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<long> e(-3, 3);
  std::vector<long> x(n), y(n);
  for (auto& v : x) v = e(rng);
  for (auto& v : y) v = e(rng);
  Matrix m = bt::DiagonalClass(y).basis().matrix();
  for (std::size_t i = 1; i < n; ++i) m(0, i) = ff::RatFunc::parse("1 + t");
  auto a = bt::DiagonalClass(x).basis();
  bt::LatticeBasis b(m);
  for (auto _ : state) benchmark::DoNotOptimize(bt::graph_distance(a, b));
}
BENCHMARK(GraphDistance)->Arg(2)->Arg(4)->Arg(8);

void LatticeClassKey(benchmark::State& state) {
  Matrix m = Matrix::parse("t, 1 + t, 0; 0, t^-1, t^2; 1, 0, t^3");
  bt::LatticeBasis a(m);
  for (auto _ : state) benchmark::DoNotOptimize(bt::LatticeClass::of(a));
}
BENCHMARK(LatticeClassKey);

void InducedTrace(benchmark::State& state) {
  auto pres = grp::Presentation::parse("gens: a b\n");
  grp::PermRep rep(4, {{1, 2, 3, 0}, {1, 0, 2, 3}});
  auto cs = grp::CosetStructure::build(pres, rep);
  grp::PsiMap psi;
  for (std::size_t i = 0; i < cs.schreier_generators().size(); ++i) psi.values.push_back(static_cast<long>(i % 3) - 1);
  std::mt19937_64 rng(2);
  std::vector<int> letters;
  for (int i = 0; i < state.range(0); ++i) letters.push_back((rng() % 2 ? 1 : -1) * static_cast<int>(1 + rng() % 2));
  grp::Word w(letters);
  for (auto _ : state) benchmark::DoNotOptimize(grp::trace_poly(grp::induced_rep(w, cs, psi)));
}
BENCHMARK(InducedTrace)->Arg(8)->Arg(64)->Arg(512);

void BuildPipeline(benchmark::State& state) {
  auto in = handlebody_input();
  for (auto _ : state) benchmark::DoNotOptimize(det::Pipeline::build(in).psi.values);
}
BENCHMARK(BuildPipeline);

void FullDetect(benchmark::State& state) {
  auto in = handlebody_input();
  in.cross_check = state.range(0) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(det::detect(in).passed());
}
BENCHMARK(FullDetect)->Arg(0)->Arg(1);

}  // namespace

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include <random>

#include "omega/familycheck.hpp"
#include "omega/positivity.hpp"

namespace {

using namespace omega;

Polynomial random_local(std::mt19937_64& rng, unsigned degree) {
  std::uniform_int_distribution<long> coef(-3, 3);
  Polynomial p(std::vector<unsigned>{1});
  for (unsigned e = 0; e <= degree; ++e) p.add_term({e}, Rational(coef(rng)));
  return p;
}

// Invariant elementary terms on the rotated circle: each term with its rotations.
std::vector<ElementaryTerm> rotated_terms(std::size_t sites, std::size_t base, unsigned degree) {
  std::mt19937_64 rng(1);
  std::vector<ElementaryTerm> out;
  for (std::size_t b = 0; b < base; ++b) {
    ElementaryTerm t;
    for (std::size_t i = 0; i < sites; ++i) t.emplace_back(random_local(rng, degree));
    for (std::size_t r = 0; r < sites; ++r) {
      ElementaryTerm moved(sites);
      for (std::size_t i = 0; i < sites; ++i) moved[(i + r) % sites] = t[i];
      out.push_back(moved);
    }
  }
  return out;
}

void BM_Contract(benchmark::State& state) {
  const auto sites = static_cast<std::size_t>(state.range(0));
  auto a = cyclic_rotation(static_cast<int>(sites));
  std::vector<unsigned> vars(sites, 1);
  auto d = symmetrize_free(rotated_terms(sites, 1, 2), a, vars);
  for (auto _ : state) benchmark::DoNotOptimize(contract(d));
  state.counters["index"] = static_cast<double>(d.index_size());
}
BENCHMARK(BM_Contract)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_SymmetrizeFree(benchmark::State& state) {
  const auto sites = static_cast<std::size_t>(state.range(0));
  auto a = cyclic_rotation(static_cast<int>(sites));
  std::vector<unsigned> vars(sites, 1);
  auto terms = rotated_terms(sites, 2, 3);
  for (auto _ : state) benchmark::DoNotOptimize(symmetrize_free(terms, a, vars));
}
BENCHMARK(BM_SymmetrizeFree)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_TransferTensor(benchmark::State& state) {
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<long> coef(-5, 5);
  LocalFamily f;
  f.D = 3;
  f.m = 3;
  f.coeffs.assign(3, std::vector<std::vector<Integer>>(3, std::vector<Integer>(3)));
  for (auto& row : f.coeffs)
    for (auto& v : row)
      for (auto& x : v) x = coef(rng);
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(transfer_tensor(f, n));
}
BENCHMARK(BM_TransferTensor)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);

void BM_PsdSqrt(benchmark::State& state) {
  const auto n = static_cast<long>(state.range(0));
  Matrix b = Matrix::Random(n, n);
  Matrix m = b * b.transpose();
  for (auto _ : state) benchmark::DoNotOptimize(psd_sqrt(m));
}
BENCHMARK(BM_PsdSqrt)->Arg(16)->Arg(64)->Arg(256);

}  // namespace

BENCHMARK_MAIN();

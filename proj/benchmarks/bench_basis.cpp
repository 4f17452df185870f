#include <benchmark/benchmark.h>

#include "crnv/enumerate.hpp"
#include "crnv/parse.hpp"
#include "crnv/signature.hpp"

namespace {

crnv::Crn load(const char* text) { return crnv::compile(crnv::parse_crn(text)); }

const char* kBimolecular =
    "A <=> i\n"
    "i + B <=> j\n"
    "j -> C + k\n"
    "k <=> D\n"
    "C + A <=> m + n\n"
    "m + n -> C + C\n";

const char* kReversibleScheme =
    "A <=> i\n"
    "i + B <=> j\n"
    "j <=> k + C\n"
    "k <=> D\n";

void bm_find_basis_bimolecular(benchmark::State& state) {
  crnv::Crn crn = load(kBimolecular);
  for (auto _ : state) {
    auto res = crnv::find_basis(crn);
    benchmark::DoNotOptimize(res.formal_basis.size());
  }
}
BENCHMARK(bm_find_basis_bimolecular)->Unit(benchmark::kMillisecond);

void bm_find_basis_reversible(benchmark::State& state) {
  crnv::Crn crn = load(kReversibleScheme);
  for (auto _ : state) {
    auto res = crnv::find_basis(crn);
    benchmark::DoNotOptimize(res.formal_basis.size());
  }
}
BENCHMARK(bm_find_basis_reversible)->Unit(benchmark::kMillisecond);

void bm_enumerate_width(benchmark::State& state) {
  crnv::Crn crn = load(kBimolecular);
  auto w = static_cast<std::uint32_t>(state.range(0));
  for (auto _ : state) {
    auto res = crnv::enumerate_signatures(crn, w);
    benchmark::DoNotOptimize(res.signatures.size());
  }
}
BENCHMARK(bm_enumerate_width)->Arg(2)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

void bm_extend_signature(benchmark::State& state) {
  crnv::Crn crn = load(kBimolecular);
  // A -> i, i + B -> j, j -> C + k: semiformal with minimal initial {A, B}.
  auto base = crnv::signature_of(crn, crnv::Pathway{{0, 2, 4}});
  for (auto _ : state) {
    auto ext = crnv::extend_signature(crn, base, crn.reactions()[5]);
    benchmark::DoNotOptimize(ext);
  }
}
BENCHMARK(bm_extend_signature);

}  // namespace

BENCHMARK_MAIN();

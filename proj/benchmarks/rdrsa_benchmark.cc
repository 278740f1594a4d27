// Copyright 2026 The rdrsa Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <vector>

#include "benchmark/benchmark.h"
#include "rdrsa/analysis.h"
#include "rdrsa/builtin_games.h"
#include "rdrsa/dynamics.h"
#include "rdrsa/empirical.h"
#include "rdrsa/game.h"

namespace rdrsa {
namespace {

ReferenceGame SoftMustacheGame() {
  return SoftenLexicon(MustacheGlassesHatGame(), kDefaultSofteningEpsilon);
}

// Larger uniform-prior game with a banded graded lexicon.
ReferenceGame BandedGame(Index k) {
  Matrix lex = Matrix::Constant(k, k, 0.05);
  for (Index i = 0; i < k; ++i) {
    lex(i, i) = 1.0;
    if (i + 1 < k) lex(i, i + 1) = 0.5;
  }
  std::vector<std::string> meanings, utterances;
  for (Index i = 0; i < k; ++i) {
    meanings.push_back("m" + std::to_string(i));
    utterances.push_back("u" + std::to_string(i));
  }
  return ValidateGame(GameDefinition::WithDefaults(meanings, utterances, lex));
}

void BM_IterateMustache(benchmark::State& state) {
  const ReferenceGame game = SoftMustacheGame();
  const Mode mode = state.range(0) == 0 ? Mode::kRsa : Mode::kRdRsa;
  for (auto _ : state) {
    benchmark::DoNotOptimize(Iterate(game, {1.2, mode}));
  }
}
BENCHMARK(BM_IterateMustache)->Arg(0)->Arg(1);

void BM_IterateBanded(benchmark::State& state) {
  const ReferenceGame game = BandedGame(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(Iterate(game, {.alpha = 2.0, .max_depth = 200}));
  }
}
BENCHMARK(BM_IterateBanded)->Arg(8)->Arg(32)->Arg(64);

void BM_BruteForce2x2(benchmark::State& state) {
  const ReferenceGame game = ValidateGame(GameDefinition::WithDefaults(
      {"a", "b"}, {"x", "y"}, (Matrix(2, 2) << 1, 0.5, 0.3, 1).finished()));
  const int resolution = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(BruteForceOptimum(game, 1.5, Mode::kRsa, resolution));
  }
}
BENCHMARK(BM_BruteForce2x2)->Arg(50)->Arg(200);

void BM_FitSweep(benchmark::State& state) {
  const ReferenceGame game = SoftMustacheGame();
  const Listener target = Iterate(game, {.alpha = 1.2, .max_depth = 3}).final_listener();
  std::vector<double> alphas;
  for (int i = 0; i <= 30; ++i) alphas.push_back(i / 10.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(FitSweep(game, target, alphas, 10, Mode::kRsa));
  }
}
BENCHMARK(BM_FitSweep);

}  // namespace
}  // namespace rdrsa

BENCHMARK_MAIN();

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

// Comparing model listeners with human response counts.
//
// Counts files are CSV with the header `utterance,meaning,count`; pairs that
// do not appear count as zero.

#ifndef RDRSA_EMPIRICAL_H_
#define RDRSA_EMPIRICAL_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "rdrsa/dynamics.h"
#include "rdrsa/game.h"

namespace rdrsa {

using CountMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

// N(m,u): how often listeners chose meaning m after hearing utterance u.
// Labels are the game's labels, in the game's order.
struct ResponseCounts {
  std::vector<std::string> meanings;
  std::vector<std::string> utterances;
  CountMatrix counts;
};

// Throws Error(kLabelMismatch) listing every label the game does not know,
// Error(kParse) for malformed rows.
ResponseCounts ParseCounts(std::string_view csv_text, const ReferenceGame& game,
                           std::string_view source = "<memory>");
ResponseCounts LoadCounts(const std::filesystem::path& path,
                          const ReferenceGame& game);
std::string CountsToCsv(const ResponseCounts& counts);

// Noise-free synthetic counts: round(total * L(m|u)) per utterance.
ResponseCounts SyntheticCounts(const Listener& listener,
                               const ReferenceGame& game,
                               std::int64_t responses_per_utterance);

// L(m|u) = (N(m,u) + smoothing) / sum_m (N(m,u) + smoothing). Throws
// Error(kEmptyColumn) for an utterance with no responses.
Listener EmpiricalListener(const ResponseCounts& counts, double smoothing = 0.0);

// Pearson correlation over every cell of the two matrices, flattened in
// row-major (meaning, utterance) order. Throws Error(kZeroVariance) when
// either matrix is constant (standard deviation below 1e-12).
double PearsonCorrelation(const Listener& model, const Listener& empirical);

struct FitEntry {
  double alpha = 0.0;
  int depth = 0;
  double rho = 0.0;  // NaN when the model listener is constant
};

struct FitResult {
  Mode mode = Mode::kRsa;
  double best_alpha = 0.0;
  int best_depth = 0;
  double correlation = 0.0;
  Listener best_listener;
  std::vector<FitEntry> grid;  // alpha-major, depth ascending
};

// For each alpha, runs the recursion once up to max_depth and scores the
// listener at every recorded depth, including the literal listener at
// depth 0. Depths past convergence are not recorded (the listener no longer
// changes). Best entry: highest rho, then smallest depth, then smallest
// alpha.
FitResult FitSweep(const ReferenceGame& game, const Listener& empirical,
                   const std::vector<double>& alphas, int max_depth, Mode mode,
                   double tolerance = kDefaultTolerance);
FitResult FitSweep(const ReferenceGame& game, const ResponseCounts& counts,
                   const std::vector<double>& alphas, int max_depth, Mode mode,
                   double tolerance = kDefaultTolerance);

// mode,alpha,depth,rho
std::string FitCsvHeader();
void WriteFitCsv(std::ostream& out, const FitResult& fit);

}  // namespace rdrsa

#endif  // RDRSA_EMPIRICAL_H_

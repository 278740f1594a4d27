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

// Asymptotic analysis: closed-form optima, the upper/lower bounds on the two
// tradeoffs, maximal-utility solutions, a brute-force optimum for tiny games
// and the alpha criticality scan.

#ifndef RDRSA_ANALYSIS_H_
#define RDRSA_ANALYSIS_H_

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rdrsa/dynamics.h"
#include "rdrsa/game.h"

namespace rdrsa {

enum class Regime { kNonInformative, kMaximalUtility, kCritical };

std::string_view RegimeName(Regime regime);

// I(M;U) below this is non-informative; E[log L] above its negation is
// maximal-utility.
inline constexpr double kRegimeThreshold = 1e-6;
// Slack allowed when checking G <= upper bound and F >= lower bound.
inline constexpr double kBoundSlack = 1e-9;
// Largest closed-form gap still counted as agreement.
inline constexpr double kClosedFormGapTolerance = 1e-6;

// max{(1 - alpha) log k, 0}: the optimal G_alpha for a uniform prior, constant
// cost, k meanings and k utterances, and a lexicon without structural zeros.
double TheoreticalOptimumG(double alpha, Index k);

// True when the game meets the assumptions behind TheoreticalOptimumG.
bool ClosedFormAssumptionsHold(const ReferenceGame& game);

struct MaxEntCostDistribution {
  Vector q;              // Q_alpha(u) ∝ exp(-alpha C(u))
  double log_partition;  // log Z_alpha
};

MaxEntCostDistribution MaxEntCost(const Vector& utterance_costs, double alpha);

// Upper bound on G_alpha[S, L] over all listeners L:
//   zero cost:      (alpha-1) I + H_S(U) - alpha H(M)
//   C(u):           (alpha-1) I - D[S(u) || Q_alpha] + log Z_alpha - alpha H(M)
//   C(m,u):         (alpha-1) I + H_S(U) - alpha H(M) - alpha E_S[C]
double GUpperBound(const Speaker& speaker, const Vector& prior, double alpha,
                   const Cost& cost);

// Lower bound on F_alpha[S, L] over all listeners: (1-alpha) I + alpha H(M).
double FLowerBound(const Speaker& speaker, const Vector& prior, double alpha);

struct DeterministicSolution {
  Speaker speaker;
  Listener listener;
  std::vector<Index> assignment;  // utterance chosen for each meaning
};

// Speaker S(u|m) = [u = phi(m)] for the lexicographically first injective
// phi inside the lexicon support, with its Bayesian listener. Empty when no
// such phi exists.
std::optional<DeterministicSolution> MaxUtilitySolution(
    const ReferenceGame& game);

struct BruteForceResult {
  Speaker speaker;
  Listener listener;
  double objective;     // G_alpha (RSA, maximized) or F_alpha (RD, minimized)
  double grid_error;    // bound on |objective - continuous optimum|
  std::size_t points;   // speakers evaluated
};

inline constexpr Index kBruteForceMaxCells = 6;

// Exhaustive search over speakers whose rows lie on the simplex grid with
// step 1/resolution (restricted to the lexicon support), each paired with its
// Bayesian listener. Throws Error(kTooLarge) above kBruteForceMaxCells cells.
BruteForceResult BruteForceOptimum(const ReferenceGame& game, double alpha,
                                   Mode mode, int grid_resolution);

// Worst-case objective change from moving every speaker row by at most
// 1/resolution per entry.
double BruteForceGridError(const ReferenceGame& game, double alpha, Mode mode,
                           int grid_resolution);

struct AsymptoticReport {
  double alpha = 0.0;
  Mode mode = Mode::kRsa;
  Regime regime = Regime::kCritical;
  double converged_g = 0.0;
  double converged_f = 0.0;
  std::optional<double> theoretical_g_star;
  std::optional<double> gap;  // converged_g - theoretical_g_star
  double mutual_info = 0.0;
  double expected_utility = 0.0;
  bool converged = false;
  std::optional<int> convergence_depth;
  std::vector<std::string> bound_violations;
};

enum class BoundCheckPolicy { kThrow, kReport };

struct ScanOptions {
  int max_depth = kDefaultMaxDepth;
  double tolerance = kDefaultTolerance;
  BoundCheckPolicy bound_policy = BoundCheckPolicy::kThrow;
};

Regime ClassifyRegime(const Speaker& speaker, const Listener& listener,
                      const Vector& prior);

// Summarizes a finished trajectory and checks it against the bounds.
AsymptoticReport Analyze(const Trajectory& trajectory, BoundCheckPolicy policy);

// Runs every alpha to convergence (in parallel) and returns the reports in
// grid order.
std::vector<AsymptoticReport> CriticalityScan(const ReferenceGame& game,
                                              const std::vector<double>& alphas,
                                              Mode mode,
                                              const ScanOptions& options = {});

// alpha,mode,regime,converged_g,converged_f,theoretical_g_star,gap,
// mutual_info,expected_utility,depth_at_convergence
std::string ScanCsvHeader();
void WriteScanCsv(std::ostream& out,
                  const std::vector<AsymptoticReport>& reports);

}  // namespace rdrsa

#endif  // RDRSA_ANALYSIS_H_

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

#include "rdrsa/analysis.h"

#include <cmath>
#include <functional>
#include <limits>
#include <ostream>

#include "parallel.h"
#include "rdrsa/error.h"
#include "rdrsa/format.h"
#include "rdrsa/objectives.h"

namespace rdrsa {
namespace {

// -x log x
double EntropyTerm(double x) { return x > 0.0 ? -x * std::log(x) : 0.0; }

// Kuhn's augmenting path over the meanings in `pending`, using only
// utterances not in `taken`.
bool Augment(Index m, const Matrix& lexicon, std::vector<bool>& visited,
             std::vector<Index>& owner, const std::vector<bool>& taken) {
  for (Index u = 0; u < lexicon.cols(); ++u) {
    if (lexicon(m, u) <= 0.0 || taken[u] || visited[u]) continue;
    visited[u] = true;
    if (owner[u] < 0 || Augment(owner[u], lexicon, visited, owner, taken)) {
      owner[u] = m;
      return true;
    }
  }
  return false;
}

bool CanMatchRemaining(Index first, const Matrix& lexicon,
                       const std::vector<bool>& taken) {
  std::vector<Index> owner(static_cast<std::size_t>(lexicon.cols()), -1);
  for (Index m = first; m < lexicon.rows(); ++m) {
    std::vector<bool> visited(static_cast<std::size_t>(lexicon.cols()), false);
    if (!Augment(m, lexicon, visited, owner, taken)) return false;
  }
  return true;
}

// All vectors of `parts` non-negative integers summing to `total`, in
// lexicographic order.
void Compositions(int total, std::size_t parts, std::vector<int>& current,
                  std::vector<std::vector<int>>& out) {
  if (current.size() + 1 == parts) {
    current.push_back(total);
    out.push_back(current);
    current.pop_back();
    return;
  }
  for (int k = 0; k <= total; ++k) {
    current.push_back(k);
    Compositions(total - k, parts, current, out);
    current.pop_back();
  }
}

void CheckBound(bool ok, const std::string& message, BoundCheckPolicy policy,
                std::vector<std::string>& violations) {
  if (ok) return;
  if (policy == BoundCheckPolicy::kThrow) {
    throw Error(ErrorCode::kBoundViolation, message);
  }
  violations.push_back(message);
}

std::string OptionalCell(const std::optional<double>& v) {
  return v ? FormatDouble(*v) : std::string();
}

}  // namespace

std::string_view RegimeName(Regime regime) {
  switch (regime) {
    case Regime::kNonInformative: return "non-informative";
    case Regime::kMaximalUtility: return "maximal-utility";
    case Regime::kCritical: return "critical";
  }
  return "critical";
}

double TheoreticalOptimumG(double alpha, Index k) {
  if (alpha < 0.0 || k < 1) {
    throw Error(ErrorCode::kInvalidArgument, "need alpha >= 0 and k >= 1");
  }
  return std::max((1.0 - alpha) * std::log(static_cast<double>(k)), 0.0);
}

bool ClosedFormAssumptionsHold(const ReferenceGame& game) {
  return game.num_meanings() == game.num_utterances() &&
         game.HasUniformPrior() && game.cost().IsConstant() &&
         !game.HasStructuralZeros();
}

MaxEntCostDistribution MaxEntCost(const Vector& utterance_costs, double alpha) {
  if (utterance_costs.size() == 0) {
    throw Error(ErrorCode::kInvalidArgument, "empty cost vector");
  }
  if (!utterance_costs.allFinite() || (utterance_costs.array() < 0.0).any()) {
    throw Error(ErrorCode::kInvalidArgument,
                "costs must be finite and non-negative");
  }
  const Vector logits = -alpha * utterance_costs;
  const double shift = logits.maxCoeff();
  Vector q = (logits.array() - shift).exp();
  const double z = q.sum();
  q /= z;
  return MaxEntCostDistribution{std::move(q), shift + std::log(z)};
}

double GUpperBound(const Speaker& speaker, const Vector& prior, double alpha,
                   const Cost& cost) {
  const double info = MutualInformation(speaker, prior);
  const Vector marginal = MarginalUtterances(speaker, prior);
  const double h_m = Entropy(prior);
  if (cost.IsZero()) {
    return (alpha - 1.0) * info + Entropy(marginal) - alpha * h_m;
  }
  if (auto per_u = cost.utterance_costs()) {
    const auto q = MaxEntCost(*per_u, alpha);
    return (alpha - 1.0) * info - KlDivergence(marginal, q.q) +
           q.log_partition - alpha * h_m;
  }
  const double expected_cost =
      (prior.asDiagonal() * speaker.probs().cwiseProduct(cost.matrix())).sum();
  return (alpha - 1.0) * info + Entropy(marginal) - alpha * h_m -
         alpha * expected_cost;
}

double FLowerBound(const Speaker& speaker, const Vector& prior, double alpha) {
  return (1.0 - alpha) * MutualInformation(speaker, prior) +
         alpha * Entropy(prior);
}

std::optional<DeterministicSolution> MaxUtilitySolution(
    const ReferenceGame& game) {
  const Matrix& lex = game.lexicon();
  const Index k_m = game.num_meanings();
  const Index k_u = game.num_utterances();
  if (k_u < k_m) return std::nullopt;
  std::vector<bool> taken(static_cast<std::size_t>(k_u), false);
  if (!CanMatchRemaining(0, lex, taken)) return std::nullopt;

  std::vector<Index> assignment;
  for (Index m = 0; m < k_m; ++m) {
    for (Index u = 0; u < k_u; ++u) {
      if (lex(m, u) <= 0.0 || taken[u]) continue;
      taken[u] = true;
      if (CanMatchRemaining(m + 1, lex, taken)) {
        assignment.push_back(u);
        break;
      }
      taken[u] = false;
    }
  }
  if (static_cast<Index>(assignment.size()) != k_m) {
    throw Error(ErrorCode::kInternal, "matching search lost its matching");
  }

  Matrix s = Matrix::Zero(k_m, k_u);
  for (Index m = 0; m < k_m; ++m) s(m, assignment[m]) = 1.0;
  Speaker speaker(std::move(s));
  auto listener = BayesListenerStep(speaker, game).listener;
  return DeterministicSolution{std::move(speaker), std::move(listener),
                               std::move(assignment)};
}

double BruteForceGridError(const ReferenceGame& game, double alpha, Mode mode,
                           int grid_resolution) {
  const double step = 1.0 / grid_resolution;
  const double k_u = static_cast<double>(game.num_utterances());
  const double entropy_shift = k_u * EntropyTerm(step);
  const double cost_shift = alpha * k_u * step * game.cost().matrix().maxCoeff();
  // RSA: G = alpha H(U) + (1-alpha) H(U|M) - alpha H(M) - alpha E[C].
  // RD:  F = (1-alpha) (H(U) - H(U|M)) + alpha H(M) + alpha E[C].
  const double weight = mode == Mode::kRsa
                            ? alpha + std::abs(1.0 - alpha)
                            : 2.0 * std::abs(1.0 - alpha);
  return weight * entropy_shift + cost_shift;
}

BruteForceResult BruteForceOptimum(const ReferenceGame& game, double alpha,
                                   Mode mode, int grid_resolution) {
  const Index k_m = game.num_meanings();
  const Index k_u = game.num_utterances();
  if (k_m * k_u > kBruteForceMaxCells) {
    throw Error(ErrorCode::kTooLarge,
                "brute force is limited to " +
                    std::to_string(kBruteForceMaxCells) + " cells");
  }
  if (grid_resolution < 10) {
    throw Error(ErrorCode::kInvalidArgument, "grid_resolution must be >= 10");
  }
  if (!std::isfinite(alpha) || alpha < 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "alpha must be >= 0");
  }

  // Candidate rows per meaning, restricted to the lexicon support.
  std::vector<std::vector<std::vector<double>>> rows(
      static_cast<std::size_t>(k_m));
  for (Index m = 0; m < k_m; ++m) {
    std::vector<Index> support;
    for (Index u = 0; u < k_u; ++u) {
      if (game.lexicon()(m, u) > 0.0) support.push_back(u);
    }
    std::vector<std::vector<int>> comps;
    std::vector<int> current;
    Compositions(grid_resolution, support.size(), current, comps);
    for (const auto& c : comps) {
      std::vector<double> row(static_cast<std::size_t>(k_u), 0.0);
      for (std::size_t i = 0; i < support.size(); ++i) {
        row[static_cast<std::size_t>(support[i])] =
            static_cast<double>(c[i]) / grid_resolution;
      }
      rows[static_cast<std::size_t>(m)].push_back(std::move(row));
    }
  }

  const Vector& prior = game.prior();
  const Cost& cost = game.cost();
  const bool maximize = mode == Mode::kRsa;
  std::vector<std::size_t> pick(static_cast<std::size_t>(k_m), 0);
  std::vector<std::size_t> best_pick = pick;
  double best = maximize ? -std::numeric_limits<double>::infinity()
                         : std::numeric_limits<double>::infinity();
  std::vector<double> marginal(static_cast<std::size_t>(k_u));
  std::size_t points = 0;

  while (true) {
    std::fill(marginal.begin(), marginal.end(), 0.0);
    for (Index m = 0; m < k_m; ++m) {
      const auto& row = rows[m][pick[m]];
      for (Index u = 0; u < k_u; ++u) marginal[u] += prior(m) * row[u];
    }
    // With the Bayesian listener, E[V] = sum p log(p / S(u)) - E[C].
    double cond_entropy = 0.0, info = 0.0, utility = 0.0;
    for (Index m = 0; m < k_m; ++m) {
      const auto& row = rows[m][pick[m]];
      for (Index u = 0; u < k_u; ++u) {
        const double joint = prior(m) * row[u];
        if (joint <= 0.0) continue;
        cond_entropy -= joint * std::log(row[u]);
        info += joint * std::log(row[u] / marginal[u]);
        utility += joint * (std::log(joint / marginal[u]) - cost(m, u));
      }
    }
    const double value = maximize ? cond_entropy + alpha * utility
                                  : info - alpha * utility;
    if (maximize ? value > best : value < best) {
      best = value;
      best_pick = pick;
    }
    ++points;

    Index m = 0;
    for (; m < k_m; ++m) {
      if (++pick[m] < rows[m].size()) break;
      pick[m] = 0;
    }
    if (m == k_m) break;
  }

  Matrix s(k_m, k_u);
  for (Index m = 0; m < k_m; ++m) {
    for (Index u = 0; u < k_u; ++u) s(m, u) = rows[m][best_pick[m]][u];
  }
  Speaker speaker(std::move(s));
  Listener listener = BayesListenerStep(speaker, game).listener;
  return BruteForceResult{std::move(speaker), std::move(listener), best,
                          BruteForceGridError(game, alpha, mode, grid_resolution),
                          points};
}

Regime ClassifyRegime(const Speaker& speaker, const Listener& listener,
                      const Vector& prior) {
  if (MutualInformation(speaker, prior) < kRegimeThreshold) {
    return Regime::kNonInformative;
  }
  const Cost none = Cost::Zero(speaker.num_meanings(), speaker.num_utterances());
  if (ExpectedUtility(speaker, listener, prior, none) > -kRegimeThreshold) {
    return Regime::kMaximalUtility;
  }
  return Regime::kCritical;
}

AsymptoticReport Analyze(const Trajectory& trajectory,
                         BoundCheckPolicy policy) {
  const ReferenceGame& game = trajectory.game;
  const Speaker& speaker = trajectory.final_speaker();
  const Listener& listener = trajectory.final_listener();
  const ObjectiveReport& metrics = trajectory.final_report();

  AsymptoticReport r;
  r.alpha = trajectory.alpha;
  r.mode = trajectory.mode;
  r.regime = ClassifyRegime(speaker, listener, game.prior());
  r.converged_g = metrics.g_value;
  r.converged_f = metrics.f_value;
  r.mutual_info = metrics.mutual_info;
  r.expected_utility = metrics.expected_utility;
  r.converged = trajectory.converged;
  r.convergence_depth = trajectory.convergence_depth;

  const std::string where = std::string(ModeName(r.mode)) +
                            " alpha=" + FormatDouble(r.alpha) + ": ";
  const double upper =
      GUpperBound(speaker, game.prior(), r.alpha, game.cost());
  CheckBound(r.converged_g <= upper + kBoundSlack,
             where + "G " + FormatDouble(r.converged_g) +
                 " exceeds its upper bound " + FormatDouble(upper),
             policy, r.bound_violations);
  const double lower = FLowerBound(speaker, game.prior(), r.alpha);
  CheckBound(r.converged_f >= lower - kBoundSlack,
             where + "F " + FormatDouble(r.converged_f) +
                 " is below its lower bound " + FormatDouble(lower),
             policy, r.bound_violations);

  if (r.mode == Mode::kRsa && ClosedFormAssumptionsHold(game)) {
    r.theoretical_g_star = TheoreticalOptimumG(r.alpha, game.num_meanings());
    // A constant cost c shifts every G by -alpha c.
    const double shift = r.alpha * game.cost()(0, 0);
    r.gap = r.converged_g + shift - *r.theoretical_g_star;
    CheckBound(*r.gap <= kClosedFormGapTolerance,
               where + "G exceeds the closed-form optimum by " +
                   FormatDouble(*r.gap),
               policy, r.bound_violations);
  }
  return r;
}

std::vector<AsymptoticReport> CriticalityScan(const ReferenceGame& game,
                                              const std::vector<double>& alphas,
                                              Mode mode,
                                              const ScanOptions& options) {
  std::vector<std::optional<AsymptoticReport>> slots(alphas.size());
  internal::ParallelFor(alphas.size(), [&](std::size_t i) {
    IterateOptions it{.alpha = alphas[i],
                      .mode = mode,
                      .max_depth = options.max_depth,
                      .tolerance = options.tolerance};
    slots[i] = Analyze(Iterate(game, it), options.bound_policy);
  });
  std::vector<AsymptoticReport> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

std::string ScanCsvHeader() {
  return "alpha,mode,regime,converged_g,converged_f,theoretical_g_star,gap,"
         "mutual_info,expected_utility,depth_at_convergence";
}

void WriteScanCsv(std::ostream& out,
                  const std::vector<AsymptoticReport>& reports) {
  for (const auto& r : reports) {
    out << FormatDouble(r.alpha) << ',' << ModeName(r.mode) << ','
        << RegimeName(r.regime) << ',' << FormatDouble(r.converged_g) << ','
        << FormatDouble(r.converged_f) << ','
        << OptionalCell(r.theoretical_g_star) << ',' << OptionalCell(r.gap)
        << ',' << FormatDouble(r.mutual_info) << ','
        << FormatDouble(r.expected_utility) << ',';
    if (r.convergence_depth) out << *r.convergence_depth;
    out << '\n';
  }
}

}  // namespace rdrsa

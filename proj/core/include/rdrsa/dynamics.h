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

// RSA and RD-RSA recursions.
//
// RSA alternates S_t(u|m) ∝ exp(alpha V_{t-1}(m,u)) with a Bayesian listener
// L_t(m|u) ∝ S_t(u|m) P(m), where V_L(m,u) = log L(m|u) - C(m,u). RD-RSA
// additionally weights the speaker by the previous utterance marginal,
// S_t(u|m) ∝ S_{t-1}(u) exp(alpha V_{t-1}(m,u)). Both start from the literal
// listener L_0(m|u) ∝ l(m,u) P(m).

#ifndef RDRSA_DYNAMICS_H_
#define RDRSA_DYNAMICS_H_

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rdrsa/game.h"
#include "rdrsa/objectives.h"

namespace rdrsa {

enum class Mode { kRsa, kRdRsa };

std::string_view ModeName(Mode mode);  // "rsa" / "rd-rsa"
std::optional<Mode> ParseMode(std::string_view name);

inline constexpr int kDefaultMaxDepth = 10000;
inline constexpr double kDefaultTolerance = 1e-10;

// L_0(m|u) ∝ l(m,u) P(m). If the prior vanishes on every meaning an
// utterance applies to, that column is the normalized lexicon column.
Listener LiteralListener(const ReferenceGame& game);

// Softmax of alpha * V over the cells where the listener is positive; other
// cells get exactly 0. Throws Error(kMeaningUnreachable) for a meaning with
// no such cell.
Speaker RsaSpeakerStep(const Listener& listener, const ReferenceGame& game,
                       double alpha);

struct ListenerStepResult {
  Listener listener;
  // Utterances with S(u) = 0; their columns are copied from L_0.
  std::vector<Index> fallback_utterances;
};

ListenerStepResult BayesListenerStep(const Speaker& speaker,
                                     const ReferenceGame& game);

struct RdSpeakerStepResult {
  Speaker speaker;
  Vector marginal;  // S_t(u)
};

RdSpeakerStepResult RdSpeakerStep(const Vector& previous_marginal,
                                  const Listener& listener,
                                  const ReferenceGame& game, double alpha);

struct IterationRecord {
  int depth = 0;
  std::optional<Speaker> speaker;  // absent at depth 0
  Listener listener;
  // (S_t, L_{t-1}) and (S_t, L_t); absent at depth 0.
  std::optional<ObjectiveReport> after_speaker_step;
  std::optional<ObjectiveReport> after_listener_step;
  std::vector<Index> fallback_utterances;
};

struct IterateOptions {
  double alpha = 1.0;
  Mode mode = Mode::kRsa;
  int max_depth = kDefaultMaxDepth;
  double tolerance = kDefaultTolerance;
};

struct Trajectory {
  ReferenceGame game;
  double alpha = 0.0;
  Mode mode = Mode::kRsa;
  std::vector<IterationRecord> records;
  bool converged = false;
  // First depth whose (S, L) the next update left unchanged within the
  // tolerance. Records run one depth past it.
  std::optional<int> convergence_depth;
  // S_0(u), S_1(u), ... in RD-RSA mode; empty for RSA.
  std::vector<Vector> rd_marginal_history;

  const IterationRecord& final_record() const { return records.back(); }
  int final_depth() const { return records.back().depth; }
  const Speaker& final_speaker() const { return *records.back().speaker; }
  const Listener& final_listener() const { return records.back().listener; }
  const ObjectiveReport& final_report() const {
    return *records.back().after_listener_step;
  }
};

// Runs the recursion until the sup-norm change of every S and L entry between
// consecutive depths drops below the tolerance, or max_depth is reached.
// RD-RSA starts from a uniform utterance marginal.
Trajectory Iterate(const ReferenceGame& game, const IterateOptions& options);

// Objective value after every half-step in order: G_alpha for RSA, F_alpha
// for RD-RSA.
std::vector<double> HalfStepObjectives(const Trajectory& trajectory);

// Long-format CSV, one row per half-step:
// depth,phase,alpha,mode,h_u_given_m,h_u,mutual_info,expected_utility,g_value,f_value
std::string TrajectoryCsvHeader();
void WriteTrajectoryCsv(std::ostream& out, const Trajectory& trajectory);

// Per-depth speaker/listener matrices. speaker[m][u] = S(u|m) and
// listener[u][m] = L(m|u).
std::string TrajectoryMatricesJson(const Trajectory& trajectory);

}  // namespace rdrsa

#endif  // RDRSA_DYNAMICS_H_

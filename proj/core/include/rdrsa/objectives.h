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

// Information-theoretic and utility quantities of a speaker/listener pair.
// Everything is in nats and uses the convention 0 log 0 = 0, implemented by
// skipping zero-mass cells.

#ifndef RDRSA_OBJECTIVES_H_
#define RDRSA_OBJECTIVES_H_

#include <limits>
#include <string>

#include "rdrsa/game.h"

namespace rdrsa {

// Returned by ExpectedUtility when the speaker puts mass on a cell the
// listener rules out. Never produced by finite arithmetic on valid inputs.
inline constexpr double kUnboundedUtility =
    -std::numeric_limits<double>::infinity();

inline bool IsUnboundedUtility(double value) {
  return value == kUnboundedUtility;
}

// Entropy of a probability vector.
double Entropy(const Vector& p);

// D[p || q]; +inf when p puts mass where q has none.
double KlDivergence(const Vector& p, const Vector& q);

// H_S(U|M) = -sum_{m,u} P(m) S(u|m) log S(u|m).
double ConditionalEntropy(const Speaker& speaker, const Vector& prior);

// S(u) = sum_m P(m) S(u|m).
Vector MarginalUtterances(const Speaker& speaker, const Vector& prior);

// I_S(M;U) = H_S(U) - H_S(U|M). Round-off in [-1e-12, 0) is clamped to 0;
// anything more negative throws Error(kInternal).
double MutualInformation(const Speaker& speaker, const Vector& prior);

// E_S[V_L] = sum P(m) S(u|m) [log L(m|u) - C(m,u)], or kUnboundedUtility.
double ExpectedUtility(const Speaker& speaker, const Listener& listener,
                       const Vector& prior, const Cost& cost);

// G_alpha = H_S(U|M) + alpha E_S[V_L]. At alpha = 0 the utility term is
// dropped entirely, so the result is finite even for unbounded utility.
double GObjective(const Speaker& speaker, const Listener& listener,
                  const Vector& prior, const Cost& cost, double alpha);

// F_alpha = I_S(M;U) - alpha E_S[V_L].
double FObjective(const Speaker& speaker, const Listener& listener,
                  const Vector& prior, const Cost& cost, double alpha);

struct ObjectiveReport {
  double alpha = 0.0;
  double h_u_given_m = 0.0;
  double h_u = 0.0;
  double mutual_info = 0.0;
  double expected_utility = 0.0;
  double g_value = 0.0;
  double f_value = 0.0;
};

ObjectiveReport EvaluateObjectives(const Speaker& speaker,
                                   const Listener& listener,
                                   const Vector& prior, const Cost& cost,
                                   double alpha);

// "alpha,h_u_given_m,h_u,mutual_info,expected_utility,g_value,f_value"
std::string ObjectiveReportCsvHeader();
std::string ToCsvRow(const ObjectiveReport& report);
std::string ToJson(const ObjectiveReport& report);

}  // namespace rdrsa

#endif  // RDRSA_OBJECTIVES_H_

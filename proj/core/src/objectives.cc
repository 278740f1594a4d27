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

#include "rdrsa/objectives.h"

#include <cmath>

#include "json.hpp"
#include "rdrsa/error.h"
#include "rdrsa/format.h"

namespace rdrsa {
namespace {

void CheckPrior(const Speaker& speaker, const Vector& prior) {
  if (prior.size() != speaker.num_meanings()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "prior has " + std::to_string(prior.size()) +
                    " entries but the speaker has " +
                    std::to_string(speaker.num_meanings()) + " meanings");
  }
}

void CheckPair(const Speaker& speaker, const Listener& listener,
               const Vector& prior, const Cost& cost) {
  CheckPrior(speaker, prior);
  if (listener.num_meanings() != speaker.num_meanings() ||
      listener.num_utterances() != speaker.num_utterances()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "speaker and listener shapes differ");
  }
  if (cost.matrix().rows() != speaker.num_meanings() ||
      cost.matrix().cols() != speaker.num_utterances()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "cost shape differs from the speaker");
  }
}

double ClampRoundOff(double value, const char* what) {
  if (value >= 0.0) return value;
  if (value >= -kNormalizationTolerance) return 0.0;
  throw Error(ErrorCode::kInternal,
              std::string(what) + " is negative beyond round-off: " +
                  FormatDouble(value));
}

}  // namespace

double Entropy(const Vector& p) {
  double h = 0.0;
  for (Index i = 0; i < p.size(); ++i) {
    if (p(i) > 0.0) h -= p(i) * std::log(p(i));
  }
  return h;
}

double KlDivergence(const Vector& p, const Vector& q) {
  if (p.size() != q.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "KL arguments differ in size");
  }
  double d = 0.0;
  for (Index i = 0; i < p.size(); ++i) {
    if (p(i) <= 0.0) continue;
    if (q(i) <= 0.0) return std::numeric_limits<double>::infinity();
    d += p(i) * std::log(p(i) / q(i));
  }
  return d;
}

double ConditionalEntropy(const Speaker& speaker, const Vector& prior) {
  CheckPrior(speaker, prior);
  double h = 0.0;
  for (Index m = 0; m < speaker.num_meanings(); ++m) {
    if (prior(m) <= 0.0) continue;
    double row = 0.0;
    for (Index u = 0; u < speaker.num_utterances(); ++u) {
      const double s = speaker(m, u);
      if (s > 0.0) row -= s * std::log(s);
    }
    h += prior(m) * row;
  }
  return h;
}

Vector MarginalUtterances(const Speaker& speaker, const Vector& prior) {
  CheckPrior(speaker, prior);
  return speaker.probs().transpose() * prior;
}

double MutualInformation(const Speaker& speaker, const Vector& prior) {
  const double h_u = Entropy(MarginalUtterances(speaker, prior));
  return ClampRoundOff(h_u - ConditionalEntropy(speaker, prior),
                       "mutual information");
}

double ExpectedUtility(const Speaker& speaker, const Listener& listener,
                       const Vector& prior, const Cost& cost) {
  CheckPair(speaker, listener, prior, cost);
  double total = 0.0;
  for (Index m = 0; m < speaker.num_meanings(); ++m) {
    for (Index u = 0; u < speaker.num_utterances(); ++u) {
      const double mass = prior(m) * speaker(m, u);
      if (mass <= 0.0) continue;
      const double l = listener(m, u);
      if (l <= 0.0) return kUnboundedUtility;
      total += mass * (std::log(l) - cost(m, u));
    }
  }
  return total;
}

double GObjective(const Speaker& speaker, const Listener& listener,
                  const Vector& prior, const Cost& cost, double alpha) {
  const double h = ConditionalEntropy(speaker, prior);
  if (alpha == 0.0) return h;
  return h + alpha * ExpectedUtility(speaker, listener, prior, cost);
}

double FObjective(const Speaker& speaker, const Listener& listener,
                  const Vector& prior, const Cost& cost, double alpha) {
  const double i = MutualInformation(speaker, prior);
  if (alpha == 0.0) return i;
  return i - alpha * ExpectedUtility(speaker, listener, prior, cost);
}

ObjectiveReport EvaluateObjectives(const Speaker& speaker,
                                   const Listener& listener,
                                   const Vector& prior, const Cost& cost,
                                   double alpha) {
  ObjectiveReport r;
  r.alpha = alpha;
  r.h_u_given_m = ConditionalEntropy(speaker, prior);
  r.h_u = Entropy(MarginalUtterances(speaker, prior));
  r.mutual_info = ClampRoundOff(r.h_u - r.h_u_given_m, "mutual information");
  r.expected_utility = ExpectedUtility(speaker, listener, prior, cost);
  const double weighted = alpha == 0.0 ? 0.0 : alpha * r.expected_utility;
  r.g_value = r.h_u_given_m + weighted;
  r.f_value = r.mutual_info - weighted;
  return r;
}

std::string ObjectiveReportCsvHeader() {
  return "alpha,h_u_given_m,h_u,mutual_info,expected_utility,g_value,f_value";
}

std::string ToCsvRow(const ObjectiveReport& r) {
  return FormatDouble(r.alpha) + "," + FormatDouble(r.h_u_given_m) + "," +
         FormatDouble(r.h_u) + "," + FormatDouble(r.mutual_info) + "," +
         FormatDouble(r.expected_utility) + "," + FormatDouble(r.g_value) +
         "," + FormatDouble(r.f_value);
}

std::string ToJson(const ObjectiveReport& r) {
  // Non-finite values are written as strings; JSON has no infinity literal.
  auto num = [](double v) -> nlohmann::ordered_json {
    if (std::isfinite(v)) return v;
    return FormatDouble(v);
  };
  nlohmann::ordered_json doc;
  doc["alpha"] = num(r.alpha);
  doc["h_u_given_m"] = num(r.h_u_given_m);
  doc["h_u"] = num(r.h_u);
  doc["mutual_info"] = num(r.mutual_info);
  doc["expected_utility"] = num(r.expected_utility);
  doc["g_value"] = num(r.g_value);
  doc["f_value"] = num(r.f_value);
  return doc.dump();
}

}  // namespace rdrsa

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

#include "rdrsa/game.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "rdrsa/error.h"

namespace rdrsa {
namespace {

void CheckLabels(const std::vector<std::string>& labels, const char* kind,
                 std::vector<ValidationIssue>& issues) {
  if (labels.empty()) {
    issues.push_back({ErrorCode::kDimensionMismatch,
                      std::string("game has no ") + kind + "s"});
  }
  std::set<std::string> seen;
  for (const auto& label : labels) {
    if (!seen.insert(label).second) {
      issues.push_back({ErrorCode::kDuplicateLabel,
                        std::string("duplicate ") + kind + " label '" + label +
                            "'"});
    }
  }
}

std::string Shape(const Matrix& m) {
  std::ostringstream os;
  os << m.rows() << "x" << m.cols();
  return os.str();
}

}  // namespace

Cost Cost::Zero(Index num_meanings, Index num_utterances) {
  return Cost(Matrix::Zero(num_meanings, num_utterances), true);
}

Cost Cost::PerUtterance(const Vector& costs, Index num_meanings) {
  return Cost(costs.transpose().replicate(num_meanings, 1), true);
}

Cost Cost::PerPair(Matrix costs) { return Cost(std::move(costs), false); }

std::optional<Vector> Cost::utterance_costs() const {
  if (!per_utterance_ || matrix_.rows() == 0) return std::nullopt;
  return Vector(matrix_.row(0).transpose());
}

bool Cost::IsZero() const { return (matrix_.array() == 0.0).all(); }

bool Cost::IsConstant() const {
  if (matrix_.size() == 0) return true;
  return (matrix_.array() == matrix_(0, 0)).all();
}

bool Cost::operator==(const Cost& other) const {
  return per_utterance_ == other.per_utterance_ &&
         matrix_.rows() == other.matrix_.rows() &&
         matrix_.cols() == other.matrix_.cols() && matrix_ == other.matrix_;
}

Speaker::Speaker(Matrix probs) : probs_(std::move(probs)) {
  if (probs_.rows() == 0 || probs_.cols() == 0) {
    throw Error(ErrorCode::kInvalidArgument, "speaker matrix is empty");
  }
  if (!probs_.allFinite() || (probs_.array() < 0.0).any()) {
    throw Error(ErrorCode::kInvalidArgument,
                "speaker entries must be finite and non-negative");
  }
  for (Index m = 0; m < probs_.rows(); ++m) {
    if (std::abs(probs_.row(m).sum() - 1.0) > kNormalizationTolerance) {
      throw Error(ErrorCode::kInvalidArgument,
                  "speaker row " + std::to_string(m) + " does not sum to 1");
    }
  }
}

Listener::Listener(Matrix probs) : probs_(std::move(probs)) {
  if (probs_.rows() == 0 || probs_.cols() == 0) {
    throw Error(ErrorCode::kInvalidArgument, "listener matrix is empty");
  }
  if (!probs_.allFinite() || (probs_.array() < 0.0).any()) {
    throw Error(ErrorCode::kInvalidArgument,
                "listener entries must be finite and non-negative");
  }
  for (Index u = 0; u < probs_.cols(); ++u) {
    if (std::abs(probs_.col(u).sum() - 1.0) > kNormalizationTolerance) {
      throw Error(ErrorCode::kInvalidArgument,
                  "listener column " + std::to_string(u) +
                      " does not sum to 1");
    }
  }
}

GameDefinition GameDefinition::WithDefaults(std::vector<std::string> meanings,
                                            std::vector<std::string> utterances,
                                            Matrix lexicon) {
  GameDefinition def;
  const auto k_m = static_cast<Index>(meanings.size());
  const auto k_u = static_cast<Index>(utterances.size());
  def.meanings = std::move(meanings);
  def.utterances = std::move(utterances);
  def.lexicon = std::move(lexicon);
  def.prior = Vector::Constant(k_m, k_m > 0 ? 1.0 / k_m : 0.0);
  def.cost = Cost::Zero(k_m, k_u);
  return def;
}

std::optional<Index> ReferenceGame::MeaningIndex(
    const std::string& label) const {
  auto it = std::find(def_.meanings.begin(), def_.meanings.end(), label);
  if (it == def_.meanings.end()) return std::nullopt;
  return static_cast<Index>(it - def_.meanings.begin());
}

std::optional<Index> ReferenceGame::UtteranceIndex(
    const std::string& label) const {
  auto it = std::find(def_.utterances.begin(), def_.utterances.end(), label);
  if (it == def_.utterances.end()) return std::nullopt;
  return static_cast<Index>(it - def_.utterances.begin());
}

bool ReferenceGame::HasStructuralZeros() const {
  return (def_.lexicon.array() == 0.0).any();
}

bool ReferenceGame::HasUniformPrior() const {
  const double p = 1.0 / static_cast<double>(num_meanings());
  return ((def_.prior.array() - p).abs() <= kNormalizationTolerance).all();
}

bool ReferenceGame::operator==(const ReferenceGame& other) const {
  const auto& a = def_;
  const auto& b = other.def_;
  return a.meanings == b.meanings && a.utterances == b.utterances &&
         a.prior.size() == b.prior.size() && a.prior == b.prior &&
         a.lexicon.rows() == b.lexicon.rows() &&
         a.lexicon.cols() == b.lexicon.cols() && a.lexicon == b.lexicon &&
         a.cost == b.cost;
}

ReferenceGame ValidateGame(GameDefinition def) {
  std::vector<ValidationIssue> issues;
  CheckLabels(def.meanings, "meaning", issues);
  CheckLabels(def.utterances, "utterance", issues);

  const auto k_m = static_cast<Index>(def.meanings.size());
  const auto k_u = static_cast<Index>(def.utterances.size());

  const bool lexicon_shape_ok =
      def.lexicon.rows() == k_m && def.lexicon.cols() == k_u;
  if (!lexicon_shape_ok) {
    issues.push_back({ErrorCode::kDimensionMismatch,
                      "lexicon is " + Shape(def.lexicon) + ", expected " +
                          std::to_string(k_m) + "x" + std::to_string(k_u)});
  } else {
    for (Index m = 0; m < k_m; ++m) {
      for (Index u = 0; u < k_u; ++u) {
        const double v = def.lexicon(m, u);
        if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
          issues.push_back({ErrorCode::kOutOfRangeLexicon,
                            "lexicon(" + def.meanings[m] + ", " +
                                def.utterances[u] + ") is outside [0,1]"});
        }
      }
    }
    for (Index m = 0; m < k_m; ++m) {
      if (!(def.lexicon.row(m).array() > 0.0).any()) {
        issues.push_back({ErrorCode::kEmptyMeaningRow,
                          "meaning '" + def.meanings[m] +
                              "' has no applicable utterance"});
      }
    }
    for (Index u = 0; u < k_u; ++u) {
      if (!(def.lexicon.col(u).array() > 0.0).any()) {
        issues.push_back({ErrorCode::kEmptyUtteranceColumn,
                          "utterance '" + def.utterances[u] +
                              "' applies to no meaning"});
      }
    }
  }

  if (def.prior.size() != k_m) {
    issues.push_back({ErrorCode::kBadPrior,
                      "prior has " + std::to_string(def.prior.size()) +
                          " entries, expected " + std::to_string(k_m)});
  } else if (!def.prior.allFinite() || (def.prior.array() < 0.0).any()) {
    issues.push_back({ErrorCode::kBadPrior,
                      "prior entries must be finite and non-negative"});
  } else if (std::abs(def.prior.sum() - 1.0) > kNormalizationTolerance) {
    issues.push_back({ErrorCode::kBadPrior, "prior does not sum to 1"});
  }

  if (def.cost.empty()) {
    issues.push_back(
        {ErrorCode::kDimensionMismatch, "cost is missing (use Cost::Zero)"});
  } else if (def.cost.matrix().rows() != k_m ||
             def.cost.matrix().cols() != k_u) {
    issues.push_back({ErrorCode::kDimensionMismatch,
                      "cost is " + Shape(def.cost.matrix()) + ", expected " +
                          std::to_string(k_m) + "x" + std::to_string(k_u)});
  } else if (!def.cost.matrix().allFinite()) {
    issues.push_back({ErrorCode::kNegativeCost, "cost entries must be finite"});
  } else if ((def.cost.matrix().array() < 0.0).any()) {
    issues.push_back(
        {ErrorCode::kNegativeCost, "cost entries must be non-negative"});
  }

  if (!issues.empty()) throw GameValidationError(std::move(issues));
  return ReferenceGame(std::move(def));
}

ReferenceGame SoftenLexicon(const ReferenceGame& game, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "softening epsilon must lie in (0,1)");
  }
  GameDefinition def = game.definition();
  def.lexicon = (def.lexicon.array() == 0.0).select(epsilon, def.lexicon);
  return ValidateGame(std::move(def));
}

}  // namespace rdrsa

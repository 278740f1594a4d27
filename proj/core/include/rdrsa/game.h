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

// Reference-game instances and the speaker/listener matrix types shared by
// every other module.
//
// Matrices are always indexed (meaning, utterance): rows are meanings and
// columns are utterances, for the lexicon, the cost, the speaker S(u|m) and
// the listener L(m|u) alike. A speaker is row-stochastic; a listener is
// column-stochastic.

#ifndef RDRSA_GAME_H_
#define RDRSA_GAME_H_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace rdrsa {

using Index = Eigen::Index;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using SupportMask = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>;

// Tolerance for "sums to one" checks on probability vectors and rows.
inline constexpr double kNormalizationTolerance = 1e-12;

// Utterance cost in nats. A per-utterance cost C(u) is stored as the rank-1
// special case of the two-positional cost C(m,u).
class Cost {
 public:
  Cost() = default;

  static Cost Zero(Index num_meanings, Index num_utterances);
  static Cost PerUtterance(const Vector& costs, Index num_meanings);
  static Cost PerPair(Matrix costs);

  double operator()(Index meaning, Index utterance) const {
    return matrix_(meaning, utterance);
  }
  const Matrix& matrix() const { return matrix_; }
  bool per_utterance() const { return per_utterance_; }

  // C(u) when the cost does not depend on the meaning.
  std::optional<Vector> utterance_costs() const;

  bool IsZero() const;
  bool IsConstant() const;
  bool empty() const { return matrix_.size() == 0; }

  bool operator==(const Cost& other) const;

 private:
  Cost(Matrix matrix, bool per_utterance)
      : matrix_(std::move(matrix)), per_utterance_(per_utterance) {}

  Matrix matrix_;
  bool per_utterance_ = true;
};

// S(u|m), one row per meaning.
class Speaker {
 public:
  Speaker() = default;
  // Throws Error(kInvalidArgument) unless every row is a distribution.
  explicit Speaker(Matrix probs);

  double operator()(Index meaning, Index utterance) const {
    return probs_(meaning, utterance);
  }
  const Matrix& probs() const { return probs_; }
  Index num_meanings() const { return probs_.rows(); }
  Index num_utterances() const { return probs_.cols(); }
  SupportMask support() const { return probs_.array() > 0.0; }

 private:
  Matrix probs_;
};

// L(m|u), stored (meaning, utterance); every column is a distribution.
class Listener {
 public:
  Listener() = default;
  // Throws Error(kInvalidArgument) unless every column is a distribution.
  explicit Listener(Matrix probs);

  double operator()(Index meaning, Index utterance) const {
    return probs_(meaning, utterance);
  }
  const Matrix& probs() const { return probs_; }
  Index num_meanings() const { return probs_.rows(); }
  Index num_utterances() const { return probs_.cols(); }
  SupportMask support() const { return probs_.array() > 0.0; }

 private:
  Matrix probs_;
};

// Raw, unvalidated game description. An empty prior or cost is an error for
// ValidateGame; use WithDefaults to fill them in.
struct GameDefinition {
  std::vector<std::string> meanings;
  std::vector<std::string> utterances;
  Vector prior;
  Matrix lexicon;
  Cost cost;

  // Uniform prior and zero cost.
  static GameDefinition WithDefaults(std::vector<std::string> meanings,
                                     std::vector<std::string> utterances,
                                     Matrix lexicon);
};

// A validated, immutable game. Only ValidateGame and SoftenLexicon create one.
class ReferenceGame {
 public:
  const std::vector<std::string>& meanings() const { return def_.meanings; }
  const std::vector<std::string>& utterances() const { return def_.utterances; }
  const Vector& prior() const { return def_.prior; }
  const Matrix& lexicon() const { return def_.lexicon; }
  const Cost& cost() const { return def_.cost; }
  const GameDefinition& definition() const { return def_; }

  Index num_meanings() const { return def_.lexicon.rows(); }
  Index num_utterances() const { return def_.lexicon.cols(); }

  std::optional<Index> MeaningIndex(const std::string& label) const;
  std::optional<Index> UtteranceIndex(const std::string& label) const;

  bool HasStructuralZeros() const;
  bool HasUniformPrior() const;

  bool operator==(const ReferenceGame& other) const;

 private:
  friend ReferenceGame ValidateGame(GameDefinition def);
  explicit ReferenceGame(GameDefinition def) : def_(std::move(def)) {}

  GameDefinition def_;
};

// Returns the game iff every invariant holds, otherwise throws
// GameValidationError naming every violation.
ReferenceGame ValidateGame(GameDefinition def);
inline ReferenceGame ValidateGame(const ReferenceGame& game) {
  return ValidateGame(game.definition());
}

// Replaces every zero lexicon entry by epsilon, epsilon in (0,1).
ReferenceGame SoftenLexicon(const ReferenceGame& game, double epsilon);

inline constexpr double kDefaultSofteningEpsilon = 0.05;

}  // namespace rdrsa

#endif  // RDRSA_GAME_H_

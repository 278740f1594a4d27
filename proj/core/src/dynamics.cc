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

#include "rdrsa/dynamics.h"

#include <cmath>
#include <ostream>

#include "json_util.h"
#include "rdrsa/error.h"
#include "rdrsa/format.h"

namespace rdrsa {
namespace {

void CheckAlpha(double alpha) {
  if (!std::isfinite(alpha) || alpha < 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "alpha must be >= 0");
  }
}

void CheckListenerShape(const Listener& listener, const ReferenceGame& game) {
  if (listener.num_meanings() != game.num_meanings() ||
      listener.num_utterances() != game.num_utterances()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "listener shape does not match the game");
  }
}

// Row-wise softmax over the cells flagged in `active`, with the row maximum
// subtracted before exponentiating so large alpha cannot overflow.
Speaker SoftmaxRows(const Matrix& logits, const SupportMask& active,
                    const ReferenceGame& game) {
  Matrix probs = Matrix::Zero(logits.rows(), logits.cols());
  for (Index m = 0; m < logits.rows(); ++m) {
    double row_max = -std::numeric_limits<double>::infinity();
    for (Index u = 0; u < logits.cols(); ++u) {
      if (active(m, u)) row_max = std::max(row_max, logits(m, u));
    }
    if (!std::isfinite(row_max)) {
      throw Error(ErrorCode::kMeaningUnreachable,
                  "meaning '" + game.meanings()[m] +
                      "' has no utterance the listener can interpret");
    }
    double z = 0.0;
    for (Index u = 0; u < logits.cols(); ++u) {
      if (!active(m, u)) continue;
      probs(m, u) = std::exp(logits(m, u) - row_max);
      z += probs(m, u);
    }
    probs.row(m) /= z;
  }
  return Speaker(std::move(probs));
}

void CheckFiniteReport(const ObjectiveReport& r, int depth) {
  const bool utility_ok =
      std::isfinite(r.expected_utility) || IsUnboundedUtility(r.expected_utility);
  const bool objectives_ok =
      IsUnboundedUtility(r.expected_utility) ||
      (std::isfinite(r.g_value) && std::isfinite(r.f_value));
  if (!std::isfinite(r.h_u_given_m) || !std::isfinite(r.h_u) ||
      !std::isfinite(r.mutual_info) || !utility_ok || !objectives_ok) {
    throw Error(ErrorCode::kNonFinite,
                "non-finite objective at depth " + std::to_string(depth));
  }
}

}  // namespace

std::string_view ModeName(Mode mode) {
  return mode == Mode::kRsa ? "rsa" : "rd-rsa";
}

std::optional<Mode> ParseMode(std::string_view name) {
  if (name == "rsa") return Mode::kRsa;
  if (name == "rd-rsa") return Mode::kRdRsa;
  return std::nullopt;
}

Listener LiteralListener(const ReferenceGame& game) {
  const Matrix& lex = game.lexicon();
  Matrix probs = lex.array().colwise() * game.prior().array();
  for (Index u = 0; u < probs.cols(); ++u) {
    double z = probs.col(u).sum();
    if (z <= 0.0) {
      probs.col(u) = lex.col(u);
      z = probs.col(u).sum();
    }
    probs.col(u) /= z;
  }
  return Listener(std::move(probs));
}

Speaker RsaSpeakerStep(const Listener& listener, const ReferenceGame& game,
                       double alpha) {
  CheckAlpha(alpha);
  CheckListenerShape(listener, game);
  const SupportMask active = listener.support();
  Matrix logits = Matrix::Zero(game.num_meanings(), game.num_utterances());
  for (Index m = 0; m < logits.rows(); ++m) {
    for (Index u = 0; u < logits.cols(); ++u) {
      if (active(m, u)) {
        logits(m, u) = alpha * (std::log(listener(m, u)) - game.cost()(m, u));
      }
    }
  }
  return SoftmaxRows(logits, active, game);
}

ListenerStepResult BayesListenerStep(const Speaker& speaker,
                                     const ReferenceGame& game) {
  if (speaker.num_meanings() != game.num_meanings() ||
      speaker.num_utterances() != game.num_utterances()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "speaker shape does not match the game");
  }
  Matrix joint = speaker.probs().array().colwise() * game.prior().array();
  std::vector<Index> fallback;
  std::optional<Listener> literal;
  for (Index u = 0; u < joint.cols(); ++u) {
    const double marginal = joint.col(u).sum();
    if (marginal > 0.0) {
      joint.col(u) /= marginal;
      continue;
    }
    if (!literal) literal = LiteralListener(game);
    joint.col(u) = literal->probs().col(u);
    fallback.push_back(u);
  }
  return ListenerStepResult{Listener(std::move(joint)), std::move(fallback)};
}

RdSpeakerStepResult RdSpeakerStep(const Vector& previous_marginal,
                                  const Listener& listener,
                                  const ReferenceGame& game, double alpha) {
  CheckAlpha(alpha);
  CheckListenerShape(listener, game);
  if (previous_marginal.size() != game.num_utterances()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "previous marginal has the wrong number of utterances");
  }
  SupportMask active = listener.support();
  Matrix logits = Matrix::Zero(game.num_meanings(), game.num_utterances());
  for (Index m = 0; m < logits.rows(); ++m) {
    for (Index u = 0; u < logits.cols(); ++u) {
      if (!(previous_marginal(u) > 0.0)) active(m, u) = false;
      if (!active(m, u)) continue;
      logits(m, u) = std::log(previous_marginal(u)) +
                     alpha * (std::log(listener(m, u)) - game.cost()(m, u));
    }
  }
  Speaker speaker = SoftmaxRows(logits, active, game);
  Vector marginal = MarginalUtterances(speaker, game.prior());
  return RdSpeakerStepResult{std::move(speaker), std::move(marginal)};
}

Trajectory Iterate(const ReferenceGame& game, const IterateOptions& options) {
  CheckAlpha(options.alpha);
  if (options.max_depth < 1) {
    throw Error(ErrorCode::kInvalidArgument, "max_depth must be >= 1");
  }
  if (!(options.tolerance > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "tolerance must be > 0");
  }

  Trajectory traj{game, options.alpha, options.mode, {}, false, {}, {}};
  traj.records.reserve(64);
  IterationRecord literal;
  literal.listener = LiteralListener(game);
  traj.records.push_back(std::move(literal));

  Vector marginal;
  if (options.mode == Mode::kRdRsa) {
    marginal = Vector::Constant(game.num_utterances(),
                                1.0 / static_cast<double>(game.num_utterances()));
    traj.rd_marginal_history.push_back(marginal);
  }

  for (int depth = 1; depth <= options.max_depth; ++depth) {
    const IterationRecord& prev = traj.records.back();
    IterationRecord rec;
    rec.depth = depth;
    if (options.mode == Mode::kRsa) {
      rec.speaker = RsaSpeakerStep(prev.listener, game, options.alpha);
    } else {
      auto step = RdSpeakerStep(marginal, prev.listener, game, options.alpha);
      rec.speaker = std::move(step.speaker);
      marginal = std::move(step.marginal);
      traj.rd_marginal_history.push_back(marginal);
    }
    rec.after_speaker_step = EvaluateObjectives(
        *rec.speaker, prev.listener, game.prior(), game.cost(), options.alpha);
    CheckFiniteReport(*rec.after_speaker_step, depth);

    auto listener_step = BayesListenerStep(*rec.speaker, game);
    rec.listener = std::move(listener_step.listener);
    rec.fallback_utterances = std::move(listener_step.fallback_utterances);
    rec.after_listener_step = EvaluateObjectives(
        *rec.speaker, rec.listener, game.prior(), game.cost(), options.alpha);
    CheckFiniteReport(*rec.after_listener_step, depth);

    bool stalled = false;
    if (prev.speaker) {
      const double ds =
          (rec.speaker->probs() - prev.speaker->probs()).cwiseAbs().maxCoeff();
      const double dl =
          (rec.listener.probs() - prev.listener.probs()).cwiseAbs().maxCoeff();
      stalled = ds < options.tolerance && dl < options.tolerance;
    }
    traj.records.push_back(std::move(rec));
    if (stalled) {
      traj.converged = true;
      traj.convergence_depth = depth - 1;
      break;
    }
  }
  return traj;
}

std::vector<double> HalfStepObjectives(const Trajectory& trajectory) {
  std::vector<double> out;
  out.reserve(2 * trajectory.records.size());
  const bool rsa = trajectory.mode == Mode::kRsa;
  for (const auto& rec : trajectory.records) {
    if (!rec.after_speaker_step) continue;
    out.push_back(rsa ? rec.after_speaker_step->g_value
                      : rec.after_speaker_step->f_value);
    out.push_back(rsa ? rec.after_listener_step->g_value
                      : rec.after_listener_step->f_value);
  }
  return out;
}

std::string TrajectoryCsvHeader() {
  return "depth,phase,alpha,mode,h_u_given_m,h_u,mutual_info,"
         "expected_utility,g_value,f_value";
}

void WriteTrajectoryCsv(std::ostream& out, const Trajectory& trajectory) {
  const std::string mode(ModeName(trajectory.mode));
  auto row = [&](int depth, const char* phase, const ObjectiveReport& r) {
    out << depth << ',' << phase << ',' << FormatDouble(r.alpha) << ','
        << mode << ',' << FormatDouble(r.h_u_given_m) << ','
        << FormatDouble(r.h_u) << ',' << FormatDouble(r.mutual_info) << ','
        << FormatDouble(r.expected_utility) << ',' << FormatDouble(r.g_value)
        << ',' << FormatDouble(r.f_value) << '\n';
  };
  for (const auto& rec : trajectory.records) {
    if (!rec.after_speaker_step) continue;
    row(rec.depth, "speaker", *rec.after_speaker_step);
    row(rec.depth, "listener", *rec.after_listener_step);
  }
}

std::string TrajectoryMatricesJson(const Trajectory& trajectory) {
  using internal::OrderedJson;
  OrderedJson doc;
  doc["mode"] = ModeName(trajectory.mode);
  doc["alpha"] = internal::Number(trajectory.alpha);
  doc["meanings"] = trajectory.game.meanings();
  doc["utterances"] = trajectory.game.utterances();
  doc["layout"] = "speaker[m][u] = S(u|m); listener[u][m] = L(m|u)";
  doc["converged"] = trajectory.converged;
  doc["convergence_depth"] =
      trajectory.convergence_depth ? OrderedJson(*trajectory.convergence_depth)
                                   : OrderedJson(nullptr);
  OrderedJson depths = OrderedJson::array();
  for (std::size_t i = 0; i < trajectory.records.size(); ++i) {
    const auto& rec = trajectory.records[i];
    OrderedJson d;
    d["depth"] = rec.depth;
    if (rec.speaker) d["speaker"] = internal::SpeakerJson(*rec.speaker);
    d["listener"] = internal::ListenerJson(rec.listener);
    if (!rec.fallback_utterances.empty()) {
      OrderedJson fb = OrderedJson::array();
      for (Index u : rec.fallback_utterances) {
        fb.push_back(trajectory.game.utterances()[static_cast<std::size_t>(u)]);
      }
      d["fallback_utterances"] = std::move(fb);
    }
    if (i < trajectory.rd_marginal_history.size()) {
      d["utterance_marginal"] =
          internal::VectorJson(trajectory.rd_marginal_history[i]);
    }
    depths.push_back(std::move(d));
  }
  doc["depths"] = std::move(depths);
  return doc.dump(2) + "\n";
}

}  // namespace rdrsa

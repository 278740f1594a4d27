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

#include "rdrsa/empirical.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include "parallel.h"
#include "rdrsa/error.h"
#include "rdrsa/format.h"

namespace rdrsa {
namespace {

constexpr double kMinStddev = 1e-12;

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> SplitCsv(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.push_back(Trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

bool IsBetter(const FitEntry& candidate, const FitEntry& best) {
  if (std::isnan(candidate.rho)) return false;
  if (std::isnan(best.rho)) return true;
  if (candidate.rho != best.rho) return candidate.rho > best.rho;
  if (candidate.depth != best.depth) return candidate.depth < best.depth;
  return candidate.alpha < best.alpha;
}

}  // namespace

ResponseCounts ParseCounts(std::string_view csv_text, const ReferenceGame& game,
                           std::string_view source) {
  const std::string where(source);
  ResponseCounts out{game.meanings(), game.utterances(),
                     CountMatrix::Zero(game.num_meanings(),
                                       game.num_utterances())};
  std::set<std::pair<Index, Index>> seen;
  std::set<std::string> unknown_utterances, unknown_meanings;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  bool header_seen = false;
  while (pos <= csv_text.size()) {
    std::size_t nl = csv_text.find('\n', pos);
    if (nl == std::string_view::npos) nl = csv_text.size();
    const std::string_view line = Trim(csv_text.substr(pos, nl - pos));
    pos = nl + 1;
    ++line_no;
    if (line.empty()) continue;
    const auto fields = SplitCsv(line);
    const std::string at = where + ":" + std::to_string(line_no) + ": ";
    if (!header_seen) {
      if (fields.size() != 3 || fields[0] != "utterance" ||
          fields[1] != "meaning" || fields[2] != "count") {
        throw Error(ErrorCode::kParse,
                    at + "expected header 'utterance,meaning,count'");
      }
      header_seen = true;
      continue;
    }
    if (fields.size() != 3) {
      throw Error(ErrorCode::kParse, at + "expected 3 fields");
    }
    const std::string utterance(fields[0]);
    const std::string meaning(fields[1]);
    std::int64_t count = 0;
    const auto [ptr, ec] = std::from_chars(
        fields[2].data(), fields[2].data() + fields[2].size(), count);
    if (ec != std::errc() || ptr != fields[2].data() + fields[2].size() ||
        count < 0) {
      throw Error(ErrorCode::kParse,
                  at + "count '" + std::string(fields[2]) +
                      "' is not a non-negative integer");
    }
    const auto u = game.UtteranceIndex(utterance);
    const auto m = game.MeaningIndex(meaning);
    if (!u) unknown_utterances.insert(utterance);
    if (!m) unknown_meanings.insert(meaning);
    if (!u || !m) continue;
    if (!seen.insert({*m, *u}).second) {
      throw Error(ErrorCode::kParse, at + "duplicate pair (" + utterance +
                                         ", " + meaning + ")");
    }
    out.counts(*m, *u) = count;
  }
  if (!header_seen) {
    throw Error(ErrorCode::kParse, where + ": empty counts file");
  }
  if (!unknown_utterances.empty() || !unknown_meanings.empty()) {
    std::string msg = where + ": labels not in the game:";
    for (const auto& s : unknown_utterances) msg += " utterance '" + s + "'";
    for (const auto& s : unknown_meanings) msg += " meaning '" + s + "'";
    throw Error(ErrorCode::kLabelMismatch, msg);
  }
  return out;
}

ResponseCounts LoadCounts(const std::filesystem::path& path,
                          const ReferenceGame& game) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open counts file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return ParseCounts(buf.str(), game, path.string());
}

std::string CountsToCsv(const ResponseCounts& counts) {
  std::string out = "utterance,meaning,count\n";
  for (Index u = 0; u < counts.counts.cols(); ++u) {
    for (Index m = 0; m < counts.counts.rows(); ++m) {
      out += counts.utterances[static_cast<std::size_t>(u)] + "," +
             counts.meanings[static_cast<std::size_t>(m)] + "," +
             std::to_string(counts.counts(m, u)) + "\n";
    }
  }
  return out;
}

ResponseCounts SyntheticCounts(const Listener& listener,
                               const ReferenceGame& game,
                               std::int64_t responses_per_utterance) {
  if (responses_per_utterance <= 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "responses_per_utterance must be positive");
  }
  ResponseCounts out{game.meanings(), game.utterances(),
                     CountMatrix::Zero(game.num_meanings(),
                                       game.num_utterances())};
  for (Index m = 0; m < out.counts.rows(); ++m) {
    for (Index u = 0; u < out.counts.cols(); ++u) {
      out.counts(m, u) = std::llround(static_cast<double>(responses_per_utterance) *
                                      listener(m, u));
    }
  }
  return out;
}

Listener EmpiricalListener(const ResponseCounts& counts, double smoothing) {
  if (!(smoothing >= 0.0) || !std::isfinite(smoothing)) {
    throw Error(ErrorCode::kInvalidArgument, "smoothing must be >= 0");
  }
  Matrix probs = counts.counts.cast<double>().array() + smoothing;
  for (Index u = 0; u < probs.cols(); ++u) {
    const double total = probs.col(u).sum();
    if (total <= 0.0) {
      throw Error(ErrorCode::kEmptyColumn,
                  "utterance '" + counts.utterances[static_cast<std::size_t>(u)] +
                      "' has no responses");
    }
    probs.col(u) /= total;
  }
  return Listener(std::move(probs));
}

double PearsonCorrelation(const Listener& model, const Listener& empirical) {
  if (model.num_meanings() != empirical.num_meanings() ||
      model.num_utterances() != empirical.num_utterances()) {
    throw Error(ErrorCode::kDimensionMismatch, "listener shapes differ");
  }
  // Row-major flattening; the correlation itself is order-independent as
  // long as both sides use the same order.
  const Index n = model.probs().size();
  std::vector<double> x, y;
  x.reserve(static_cast<std::size_t>(n));
  y.reserve(static_cast<std::size_t>(n));
  for (Index m = 0; m < model.num_meanings(); ++m) {
    for (Index u = 0; u < model.num_utterances(); ++u) {
      x.push_back(model(m, u));
      y.push_back(empirical(m, u));
    }
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  const double min_ss = kMinStddev * kMinStddev * static_cast<double>(n);
  if (sxx <= min_ss || syy <= min_ss) {
    throw Error(ErrorCode::kZeroVariance,
                "cannot correlate a constant listener matrix");
  }
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

FitResult FitSweep(const ReferenceGame& game, const Listener& empirical,
                   const std::vector<double>& alphas, int max_depth, Mode mode,
                   double tolerance) {
  if (alphas.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "alpha grid is empty");
  }
  if (empirical.num_meanings() != game.num_meanings() ||
      empirical.num_utterances() != game.num_utterances()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "empirical listener does not match the game");
  }
  struct Column {
    std::vector<FitEntry> entries;
    std::vector<Listener> listeners;
  };
  std::vector<Column> columns(alphas.size());
  internal::ParallelFor(alphas.size(), [&](std::size_t i) {
    const Trajectory traj =
        Iterate(game, IterateOptions{.alpha = alphas[i],
                                     .mode = mode,
                                     .max_depth = max_depth,
                                     .tolerance = tolerance});
    for (const auto& rec : traj.records) {
      double rho = std::numeric_limits<double>::quiet_NaN();
      try {
        rho = PearsonCorrelation(rec.listener, empirical);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kZeroVariance) throw;
      }
      columns[i].entries.push_back(FitEntry{alphas[i], rec.depth, rho});
      columns[i].listeners.push_back(rec.listener);
    }
  });

  FitResult fit;
  fit.mode = mode;
  FitEntry best{0.0, 0, std::numeric_limits<double>::quiet_NaN()};
  const Listener* best_listener = nullptr;
  for (const auto& col : columns) {
    for (std::size_t j = 0; j < col.entries.size(); ++j) {
      fit.grid.push_back(col.entries[j]);
      if (IsBetter(col.entries[j], best)) {
        best = col.entries[j];
        best_listener = &col.listeners[j];
      }
    }
  }
  if (best_listener == nullptr) {
    throw Error(ErrorCode::kZeroVariance,
                "no model listener in the sweep has non-zero variance");
  }
  fit.best_alpha = best.alpha;
  fit.best_depth = best.depth;
  fit.correlation = best.rho;
  fit.best_listener = *best_listener;
  return fit;
}

FitResult FitSweep(const ReferenceGame& game, const ResponseCounts& counts,
                   const std::vector<double>& alphas, int max_depth, Mode mode,
                   double tolerance) {
  return FitSweep(game, EmpiricalListener(counts), alphas, max_depth, mode,
                  tolerance);
}

std::string FitCsvHeader() { return "mode,alpha,depth,rho"; }

void WriteFitCsv(std::ostream& out, const FitResult& fit) {
  for (const auto& e : fit.grid) {
    out << ModeName(fit.mode) << ',' << FormatDouble(e.alpha) << ',' << e.depth
        << ',' << FormatDouble(e.rho) << '\n';
  }
}

}  // namespace rdrsa

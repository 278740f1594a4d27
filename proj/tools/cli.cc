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

#include "cli.h"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <utility>

#include "CLI11.hpp"
#include "json.hpp"
#include "rdrsa/analysis.h"
#include "rdrsa/builtin_games.h"
#include "rdrsa/dynamics.h"
#include "rdrsa/empirical.h"
#include "rdrsa/error.h"
#include "rdrsa/format.h"
#include "rdrsa/game.h"
#include "rdrsa/game_io.h"
#include "rdrsa/objectives.h"

namespace rdrsa::cli {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

constexpr char kVersion[] = RDRSA_VERSION;
constexpr char kBuiltinGame[] = "builtin:mustache-glasses-hat";
const std::vector<std::string> kDemos = {"fig2", "fig3", "fig4top", "fig5"};

struct Config {
  std::string command;
  std::string demo;
  std::string game_path;
  std::string mode = "rsa";
  std::optional<double> alpha;
  std::string alpha_grid;
  int max_depth = kDefaultMaxDepth;
  double tolerance = kDefaultTolerance;
  std::optional<double> soften;
  std::string counts_path;
  std::string out_dir = "rdrsa_out";
  bool export_matrices = false;
};

// Non-finite values become strings so the output stays valid JSON.
Json Num(double x) {
  if (std::isfinite(x)) return x;
  return FormatDouble(x);
}

Json Rows(const Matrix& m) {
  Json rows = Json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(Num(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

// listener[u][m], matching the layout of the trajectory matrices export.
Json ListenerRows(const Listener& l) { return Rows(l.probs().transpose()); }

// Collects every file written so the manifest can list them.
class OutputDir {
 public:
  explicit OutputDir(fs::path dir) : dir_(std::move(dir)) {}

  void Write(const std::string& name, const std::string& content) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) {
      throw Error(ErrorCode::kIo, "cannot create output directory " +
                                      dir_.string() + ": " + ec.message());
    }
    const fs::path path = dir_ / name;
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    f << content;
    f.close();
    if (!f) throw Error(ErrorCode::kIo, "cannot write " + path.string());
    files_.push_back(name);
  }

  const fs::path& dir() const { return dir_; }
  const std::vector<std::string>& files() const { return files_; }

 private:
  fs::path dir_;
  std::vector<std::string> files_;
};

void CheckAlpha(double alpha) {
  if (!std::isfinite(alpha) || alpha < 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "alpha must be ≥ 0");
  }
}

std::vector<Mode> ResolveModes(const std::string& name) {
  if (name == "both") return {Mode::kRsa, Mode::kRdRsa};
  if (auto mode = ParseMode(name)) return {*mode};
  throw Error(ErrorCode::kInvalidArgument,
              "unknown mode '" + name + "' (expected rsa, rd-rsa or both)");
}

std::vector<double> ResolveAlphas(const Config& c) {
  if (c.alpha && !c.alpha_grid.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "pass either --alpha or --alpha-grid, not both");
  }
  std::vector<double> alphas;
  if (!c.alpha_grid.empty()) {
    alphas = ParseAlphaGrid(c.alpha_grid);
  } else if (c.alpha) {
    alphas = {*c.alpha};
  } else if (c.command == "run") {
    alphas = {1.0};
  } else {
    throw Error(ErrorCode::kInvalidArgument,
                c.command + " needs --alpha-grid or --alpha");
  }
  for (double a : alphas) CheckAlpha(a);
  return alphas;
}

void CheckIterationLimits(const Config& c) {
  if (c.max_depth < 1) {
    throw Error(ErrorCode::kInvalidArgument, "--max-depth must be >= 1");
  }
  if (!(c.tolerance > 0.0) || !std::isfinite(c.tolerance)) {
    throw Error(ErrorCode::kInvalidArgument, "--tol must be > 0");
  }
}

ReferenceGame ResolveGame(const Config& c, std::ostream& err) {
  ReferenceGame game = MustacheGlassesHatGame();
  if (!c.game_path.empty()) {
    LoadedGame loaded = LoadGame(c.game_path);
    for (const auto& note : loaded.report.notes) err << "note: " << note << '\n';
    game = std::move(loaded.game);
  }
  if (c.soften) game = SoftenLexicon(game, *c.soften);
  return game;
}

Json LabelsJson(const ReferenceGame& game) {
  Json j;
  j["meanings"] = game.meanings();
  j["utterances"] = game.utterances();
  return j;
}

Json ManifestConfig(const Config& c, const std::vector<double>& alphas) {
  Json j;
  j["command"] = c.command;
  if (c.command == "demo") {
    j["demo"] = c.demo;
  } else {
    j["game"] = c.game_path.empty() ? std::string(kBuiltinGame) : c.game_path;
    j["mode"] = c.mode;
    Json a = Json::array();
    for (double x : alphas) a.push_back(x);
    j["alphas"] = std::move(a);
    j["soften"] = c.soften ? Json(*c.soften) : Json(nullptr);
    if (c.command == "fit") j["counts"] = c.counts_path;
    j["export_matrices"] = c.export_matrices;
  }
  j["max_depth"] = c.max_depth;
  j["tolerance"] = c.tolerance;
  return j;
}

void WriteManifest(OutputDir& out, const Config& c,
                   const std::vector<double>& alphas) {
  Json m;
  m["tool"] = "rdrsa";
  m["version"] = kVersion;
  m["config"] = ManifestConfig(c, alphas);
  Json tol;
  tol["convergence"] = c.tolerance;
  tol["normalization"] = kNormalizationTolerance;
  tol["bound_slack"] = kBoundSlack;
  tol["regime_threshold"] = kRegimeThreshold;
  tol["closed_form_gap"] = kClosedFormGapTolerance;
  m["tolerances"] = std::move(tol);
  m["outputs"] = out.files();
  out.Write("manifest.json", m.dump(2) + "\n");
}

std::string Summary(const Trajectory& t, const AsymptoticReport& r) {
  std::ostringstream os;
  os << ModeName(t.mode) << " alpha=" << FormatDouble(t.alpha) << ": ";
  if (t.converged) {
    os << "converged at depth " << *t.convergence_depth;
  } else {
    os << "not converged after " << t.final_depth() << " depths";
  }
  os << "; G=" << FormatDouble(r.converged_g)
     << " F=" << FormatDouble(r.converged_f)
     << " I=" << FormatDouble(r.mutual_info)
     << " E[V]=" << FormatDouble(r.expected_utility)
     << " regime=" << RegimeName(r.regime);
  return os.str();
}

AsymptoticReport AnalyzeAndWarn(const Trajectory& t, std::ostream& err) {
  AsymptoticReport r = Analyze(t, BoundCheckPolicy::kReport);
  for (const auto& v : r.bound_violations) err << "warning: " << v << '\n';
  return r;
}

Trajectory RunOne(const ReferenceGame& game, double alpha, Mode mode,
                  const Config& c) {
  return Iterate(game, IterateOptions{.alpha = alpha,
                                      .mode = mode,
                                      .max_depth = c.max_depth,
                                      .tolerance = c.tolerance});
}

int CmdRun(const Config& c, std::ostream& out, std::ostream& err) {
  CheckIterationLimits(c);
  const auto modes = ResolveModes(c.mode);
  const auto alphas = ResolveAlphas(c);
  const ReferenceGame game = ResolveGame(c, err);
  OutputDir dir(c.out_dir);
  std::ostringstream csv;
  csv << TrajectoryCsvHeader() << '\n';
  for (Mode mode : modes) {
    for (double alpha : alphas) {
      const Trajectory t = RunOne(game, alpha, mode, c);
      out << Summary(t, AnalyzeAndWarn(t, err)) << '\n';
      WriteTrajectoryCsv(csv, t);
      if (c.export_matrices) {
        dir.Write("matrices_" + std::string(ModeName(mode)) + "_alpha" +
                      FormatDouble(alpha) + ".json",
                  TrajectoryMatricesJson(t));
      }
    }
  }
  dir.Write("trajectory.csv", csv.str());
  WriteManifest(dir, c, alphas);
  return kExitOk;
}

int CmdScan(const Config& c, std::ostream& out, std::ostream& err) {
  CheckIterationLimits(c);
  const auto modes = ResolveModes(c.mode);
  const auto alphas = ResolveAlphas(c);
  const ReferenceGame game = ResolveGame(c, err);
  OutputDir dir(c.out_dir);
  std::ostringstream csv;
  csv << ScanCsvHeader() << '\n';
  const ScanOptions options{c.max_depth, c.tolerance, BoundCheckPolicy::kReport};
  for (Mode mode : modes) {
    const auto reports = CriticalityScan(game, alphas, mode, options);
    for (const auto& r : reports) {
      for (const auto& v : r.bound_violations) err << "warning: " << v << '\n';
      out << ModeName(mode) << " alpha=" << FormatDouble(r.alpha) << ": "
          << RegimeName(r.regime) << '\n';
    }
    WriteScanCsv(csv, reports);
  }
  dir.Write("scan.csv", csv.str());
  WriteManifest(dir, c, alphas);
  return kExitOk;
}

int CmdFit(const Config& c, std::ostream& out, std::ostream& err) {
  CheckIterationLimits(c);
  if (c.counts_path.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "fit needs --counts");
  }
  const auto modes = ResolveModes(c.mode);
  const auto alphas = ResolveAlphas(c);
  const ReferenceGame game = ResolveGame(c, err);
  const ResponseCounts counts = LoadCounts(c.counts_path, game);
  const Listener empirical = EmpiricalListener(counts);

  OutputDir dir(c.out_dir);
  std::ostringstream csv;
  csv << FitCsvHeader() << '\n';
  Json summary;
  summary["responses"] = counts.counts.sum();
  summary["fits"] = Json::array();
  Json listeners = LabelsJson(game);
  listeners["layout"] = "listener[u][m]";
  listeners["empirical"] = ListenerRows(empirical);
  listeners["best"] = Json::object();
  for (Mode mode : modes) {
    const FitResult fit =
        FitSweep(game, empirical, alphas, c.max_depth, mode, c.tolerance);
    WriteFitCsv(csv, fit);
    Json s;
    s["mode"] = ModeName(mode);
    s["best_alpha"] = fit.best_alpha;
    s["best_depth"] = fit.best_depth;
    s["correlation"] = Num(fit.correlation);
    summary["fits"].push_back(std::move(s));
    listeners["best"][std::string(ModeName(mode))] = ListenerRows(fit.best_listener);
    out << ModeName(mode) << ": best rho=" << FormatDouble(fit.correlation)
        << " at alpha=" << FormatDouble(fit.best_alpha)
        << " depth=" << fit.best_depth << '\n';
  }
  dir.Write("fit_grid.csv", csv.str());
  dir.Write("fit_summary.json", summary.dump(2) + "\n");
  dir.Write("fit_listeners.json", listeners.dump(2) + "\n");
  WriteManifest(dir, c, alphas);
  return kExitOk;
}

// Utterance-level expected utility after each listener step.
int CountUtilityDips(const Trajectory& t) {
  int dips = 0;
  for (std::size_t i = 2; i < t.records.size(); ++i) {
    if (t.records[i].after_listener_step->expected_utility <
        t.records[i - 1].after_listener_step->expected_utility - 1e-9) {
      ++dips;
    }
  }
  return dips;
}

void DemoFig2(const Config& c, OutputDir& dir, std::ostream& out) {
  const ReferenceGame game =
      SoftenLexicon(MustacheGlassesHatGame(), kDefaultSofteningEpsilon);
  const Trajectory t = RunOne(game, 1.2, Mode::kRsa, c);
  std::ostringstream csv;
  csv << TrajectoryCsvHeader() << '\n';
  WriteTrajectoryCsv(csv, t);
  dir.Write("fig2_trajectory.csv", csv.str());
  const auto g = HalfStepObjectives(t);
  bool monotone = true;
  for (std::size_t i = 1; i < g.size(); ++i) monotone &= g[i] >= g[i - 1] - 1e-9;
  out << "fig2: " << g.size() << " half-steps, G "
      << (monotone ? "non-decreasing" : "DECREASES") << ", final G="
      << FormatDouble(g.back()) << '\n';
}

void DemoFig3(const Config& c, OutputDir& dir, std::ostream& out) {
  const ReferenceGame game =
      SoftenLexicon(MustacheGlassesHatGame(), kDefaultSofteningEpsilon);
  std::ostringstream csv;
  csv << TrajectoryCsvHeader() << '\n';
  Json listeners = LabelsJson(game);
  listeners["layout"] = "listener[u][m]";
  listeners["literal"] = ListenerRows(LiteralListener(game));
  listeners["converged"] = Json::array();
  for (double alpha : {0.9, 1.2}) {
    const Trajectory t = RunOne(game, alpha, Mode::kRsa, c);
    WriteTrajectoryCsv(csv, t);
    Json entry;
    entry["alpha"] = alpha;
    entry["converged"] = t.converged;
    entry["listener"] = ListenerRows(t.final_listener());
    listeners["converged"].push_back(std::move(entry));
    out << "fig3: alpha=" << FormatDouble(alpha) << " expected-utility dips: "
        << CountUtilityDips(t) << '\n';
  }
  dir.Write("fig3_trajectory.csv", csv.str());
  dir.Write("fig3_listeners.json", listeners.dump(2) + "\n");
}

void DemoFig4Top(const Config& c, OutputDir& dir, std::ostream& out,
                 std::ostream& err) {
  const ReferenceGame game = MustacheGlassesHatGame();
  const std::vector<double> alphas = {0.5, 0.9, 1.1, 2.0};
  std::ostringstream traj_csv, scan_csv;
  traj_csv << TrajectoryCsvHeader() << '\n';
  scan_csv << ScanCsvHeader() << '\n';
  for (Mode mode : {Mode::kRsa, Mode::kRdRsa}) {
    std::vector<AsymptoticReport> reports;
    for (double alpha : alphas) {
      const Trajectory t = RunOne(game, alpha, mode, c);
      WriteTrajectoryCsv(traj_csv, t);
      reports.push_back(AnalyzeAndWarn(t, err));
      out << "fig4top: " << Summary(t, reports.back()) << '\n';
    }
    WriteScanCsv(scan_csv, reports);
  }
  dir.Write("fig4top_trajectory.csv", traj_csv.str());
  dir.Write("fig4top_scan.csv", scan_csv.str());
}

void DemoFig5(const Config& c, OutputDir& dir, std::ostream& out) {
  const ReferenceGame game = FriendAugmentedGame();
  const Index friend_u = *game.UtteranceIndex("friend");
  Json doc = LabelsJson(game);
  doc["layout"] = "speaker[m][u]";
  doc["speakers"] = Json::array();
  for (Mode mode : {Mode::kRsa, Mode::kRdRsa}) {
    for (double alpha : {0.5, 3.0}) {
      const Trajectory t = RunOne(game, alpha, mode, c);
      const Matrix& s = t.final_speaker().probs();
      Json entropy = Json::array();
      double min_entropy = std::numeric_limits<double>::infinity();
      for (Index m = 0; m < s.rows(); ++m) {
        const double h = Entropy(s.row(m).transpose());
        entropy.push_back(h);
        min_entropy = std::min(min_entropy, h);
      }
      Json entry;
      entry["mode"] = ModeName(mode);
      entry["alpha"] = alpha;
      entry["converged"] = t.converged;
      entry["speaker"] = Rows(s);
      entry["row_entropy"] = std::move(entropy);
      doc["speakers"].push_back(std::move(entry));
      out << "fig5: " << ModeName(mode) << " alpha=" << FormatDouble(alpha)
          << " friend mass per meaning [";
      for (Index m = 0; m < s.rows(); ++m) {
        out << (m ? " " : "") << FormatDouble(s(m, friend_u));
      }
      out << "], min row entropy " << FormatDouble(min_entropy) << '\n';
    }
  }
  if (auto sol = MaxUtilitySolution(game)) {
    doc["max_utility_solution"] = Rows(sol->speaker.probs());
  }
  dir.Write("fig5_speakers.json", doc.dump(2) + "\n");
}

int CmdDemo(const Config& c, std::ostream& out, std::ostream& err) {
  CheckIterationLimits(c);
  OutputDir dir(c.out_dir);
  if (c.demo == "fig2") {
    DemoFig2(c, dir, out);
  } else if (c.demo == "fig3") {
    DemoFig3(c, dir, out);
  } else if (c.demo == "fig4top") {
    DemoFig4Top(c, dir, out, err);
  } else if (c.demo == "fig5") {
    DemoFig5(c, dir, out);
  } else {
    std::string names;
    for (const auto& d : kDemos) names += (names.empty() ? "" : ", ") + d;
    throw Error(ErrorCode::kInvalidArgument,
                "unknown demo '" + c.demo + "'; available: " + names);
  }
  WriteManifest(dir, c, {});
  return kExitOk;
}

void AddIterationFlags(CLI::App* cmd, Config& c) {
  cmd->add_option("--max-depth", c.max_depth, "Iteration cap")
      ->capture_default_str();
  cmd->add_option("--tol", c.tolerance, "Sup-norm convergence tolerance")
      ->capture_default_str();
  cmd->add_option("--out", c.out_dir, "Output directory")->capture_default_str();
}

void AddGameFlags(CLI::App* cmd, Config& c) {
  cmd->add_option("--game", c.game_path,
                  "Game JSON file (default: built-in mustache/glasses/hat)");
  cmd->add_option("--mode", c.mode, "rsa, rd-rsa or both")->capture_default_str();
  cmd->add_option("--alpha", c.alpha, "Rationality parameter");
  cmd->add_option("--alpha-grid", c.alpha_grid, "Grid LO:STEP:HI");
  cmd->add_option("--soften", c.soften, "Replace lexicon zeros with EPS");
  AddIterationFlags(cmd, c);
}

}  // namespace

std::vector<double> ParseAlphaGrid(std::string_view spec) {
  std::vector<double> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t colon = spec.find(':', start);
    const std::string_view token = spec.substr(
        start, colon == std::string_view::npos ? std::string_view::npos
                                               : colon - start);
    double value = 0.0;
    const auto [ptr, ec] =
        std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc() ||
        ptr != token.data() + token.size()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "bad --alpha-grid '" + std::string(spec) +
                      "' (expected LO:STEP:HI)");
    }
    parts.push_back(value);
    if (colon == std::string_view::npos) break;
    start = colon + 1;
  }
  if (parts.size() != 3) {
    throw Error(ErrorCode::kInvalidArgument,
                "bad --alpha-grid '" + std::string(spec) +
                    "' (expected LO:STEP:HI)");
  }
  const double lo = parts[0], step = parts[1], hi = parts[2];
  if (!(step > 0.0) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw Error(ErrorCode::kInvalidArgument, "alpha grid step must be > 0");
  }
  std::vector<double> grid;
  // The slack keeps HI in the grid despite accumulated rounding.
  const double slack = 1e-9 * step;
  for (long i = 0;; ++i) {
    const double raw = lo + static_cast<double>(i) * step;
    if (raw > hi + slack) break;
    grid.push_back(std::round(raw * 1e12) / 1e12);
  }
  if (grid.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "alpha grid is empty");
  }
  return grid;
}

int Main(const std::vector<std::string>& args, std::ostream& out,
         std::ostream& err) {
  Config c;
  CLI::App app{"Rational Speech Act and rate-distortion RSA dynamics"};
  app.name("rdrsa");
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  CLI::App* run = app.add_subcommand("run", "Iterate one game and write its trajectory");
  AddGameFlags(run, c);
  run->add_flag("--export-matrices", c.export_matrices,
                "Also write every S_t and L_t as JSON");
  CLI::App* scan = app.add_subcommand("scan", "Classify regimes over an alpha grid");
  AddGameFlags(scan, c);
  CLI::App* fit = app.add_subcommand("fit", "Correlate model listeners with counts");
  AddGameFlags(fit, c);
  fit->add_option("--counts", c.counts_path, "Counts CSV (utterance,meaning,count)");
  CLI::App* demo = app.add_subcommand("demo", "Write the tables behind a figure");
  demo->add_option("name", c.demo, "fig2, fig3, fig4top or fig5")->required();
  AddIterationFlags(demo, c);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitError;
  }

  try {
    if (run->parsed()) {
      c.command = "run";
      return CmdRun(c, out, err);
    }
    if (scan->parsed()) {
      c.command = "scan";
      return CmdScan(c, out, err);
    }
    if (fit->parsed()) {
      c.command = "fit";
      return CmdFit(c, out, err);
    }
    c.command = "demo";
    return CmdDemo(c, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::kIo ? kExitIo : kExitError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

}  // namespace rdrsa::cli

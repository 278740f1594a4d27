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

#include "rdrsa/game_io.h"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "rdrsa/error.h"

namespace rdrsa {
namespace {

using Json = nlohmann::json;

const std::set<std::string>& KnownFields() {
  static const std::set<std::string> fields = {
      "meanings", "utterances", "prior", "lexicon",
      "cost",     "units",      "name",  "description"};
  return fields;
}

[[noreturn]] void Fail(std::string_view source, const std::string& message) {
  throw Error(ErrorCode::kParse, std::string(source) + ": " + message);
}

std::vector<std::string> ParseLabels(const Json& doc, const char* field,
                                     std::string_view source) {
  if (!doc.contains(field)) Fail(source, std::string("missing field '") + field + "'");
  const Json& arr = doc.at(field);
  if (!arr.is_array() || arr.empty()) {
    Fail(source, std::string("field '") + field +
                     "' must be a non-empty array of strings");
  }
  std::vector<std::string> labels;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_string()) {
      Fail(source, std::string("field '") + field + "' entry " +
                       std::to_string(i) + " is not a string");
    }
    std::string label = arr[i].get<std::string>();
    if (!seen.insert(label).second) {
      Fail(source, std::string("field '") + field + "' has duplicate label '" +
                       label + "'");
    }
    labels.push_back(std::move(label));
  }
  return labels;
}

double ParseNumber(const Json& value, std::string_view source,
                   const std::string& where) {
  if (!value.is_number()) Fail(source, where + " is not a number");
  return value.get<double>();
}

Vector ParseVector(const Json& arr, std::size_t expected,
                   std::string_view source, const std::string& where) {
  if (!arr.is_array()) Fail(source, where + " must be an array");
  if (arr.size() != expected) {
    Fail(source, where + ": expected " + std::to_string(expected) +
                     " entries, got " + std::to_string(arr.size()));
  }
  Vector v(static_cast<Index>(expected));
  for (std::size_t i = 0; i < expected; ++i) {
    v(static_cast<Index>(i)) =
        ParseNumber(arr[i], source, where + " entry " + std::to_string(i));
  }
  return v;
}

Matrix ParseRows(const Json& arr, const std::vector<std::string>& row_labels,
                 std::size_t cols, std::string_view source,
                 const std::string& field) {
  Matrix out(static_cast<Index>(row_labels.size()), static_cast<Index>(cols));
  if (arr.is_object()) {
    for (const auto& [key, _] : arr.items()) {
      if (std::find(row_labels.begin(), row_labels.end(), key) ==
          row_labels.end()) {
        Fail(source, "field '" + field + "' has unknown meaning '" + key + "'");
      }
    }
    for (std::size_t r = 0; r < row_labels.size(); ++r) {
      if (!arr.contains(row_labels[r])) {
        Fail(source, "field '" + field + "' is missing meaning '" +
                         row_labels[r] + "'");
      }
      out.row(static_cast<Index>(r)) =
          ParseVector(arr.at(row_labels[r]), cols, source,
                      "field '" + field + "' meaning '" + row_labels[r] + "'")
              .transpose();
    }
    return out;
  }
  if (!arr.is_array() || arr.size() != row_labels.size()) {
    Fail(source, "field '" + field + "' must have one row per meaning (" +
                     std::to_string(row_labels.size()) + ")");
  }
  for (std::size_t r = 0; r < row_labels.size(); ++r) {
    out.row(static_cast<Index>(r)) =
        ParseVector(arr[r], cols, source,
                    "field '" + field + "' row " + std::to_string(r))
            .transpose();
  }
  return out;
}

}  // namespace

LoadedGame ParseGame(std::string_view json_text, std::string_view source) {
  Json doc;
  try {
    doc = Json::parse(json_text.begin(), json_text.end());
  } catch (const Json::parse_error& e) {
    Fail(source, e.what());
  }
  if (!doc.is_object()) Fail(source, "top-level value must be an object");
  for (const auto& [key, _] : doc.items()) {
    if (!KnownFields().count(key)) Fail(source, "unknown field '" + key + "'");
  }
  if (doc.contains("units") &&
      !(doc["units"].is_string() && doc["units"].get<std::string>() == "nats")) {
    Fail(source, "field 'units' must be \"nats\"");
  }

  LoadReport report;
  GameDefinition def;
  def.meanings = ParseLabels(doc, "meanings", source);
  def.utterances = ParseLabels(doc, "utterances", source);
  const std::size_t k_m = def.meanings.size();
  const std::size_t k_u = def.utterances.size();

  if (!doc.contains("lexicon")) Fail(source, "missing field 'lexicon'");
  def.lexicon = ParseRows(doc["lexicon"], def.meanings, k_u, source, "lexicon");

  if (doc.contains("prior") && !doc["prior"].is_null()) {
    def.prior = ParseVector(doc["prior"], k_m, source, "field 'prior'");
  } else {
    def.prior = Vector::Constant(static_cast<Index>(k_m), 1.0 / k_m);
    report.prior_defaulted = true;
    report.notes.push_back("prior omitted; using uniform prior");
  }

  if (doc.contains("cost") && !doc["cost"].is_null()) {
    const Json& cost = doc["cost"];
    if (cost.is_object() ||
        (cost.is_array() && !cost.empty() && cost[0].is_array())) {
      def.cost = Cost::PerPair(ParseRows(cost, def.meanings, k_u, source, "cost"));
    } else {
      def.cost = Cost::PerUtterance(
          ParseVector(cost, k_u, source, "field 'cost'"),
          static_cast<Index>(k_m));
    }
  } else {
    def.cost = Cost::Zero(static_cast<Index>(k_m), static_cast<Index>(k_u));
    report.cost_defaulted = true;
    report.notes.push_back("cost omitted; using zero cost");
  }

  return LoadedGame{ValidateGame(std::move(def)), std::move(report)};
}

LoadedGame LoadGame(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIo, "cannot open game file " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return ParseGame(buf.str(), path.string());
}

std::string GameToJson(const ReferenceGame& game) {
  nlohmann::ordered_json doc;
  doc["meanings"] = game.meanings();
  doc["utterances"] = game.utterances();
  doc["prior"] = std::vector<double>(game.prior().begin(), game.prior().end());
  auto rows = [](const Matrix& m) {
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (Index r = 0; r < m.rows(); ++r) {
      std::vector<double> row(static_cast<std::size_t>(m.cols()));
      for (Index c = 0; c < m.cols(); ++c) row[static_cast<std::size_t>(c)] = m(r, c);
      out.push_back(row);
    }
    return out;
  };
  doc["lexicon"] = rows(game.lexicon());
  if (auto per_u = game.cost().utterance_costs()) {
    doc["cost"] = std::vector<double>(per_u->begin(), per_u->end());
  } else {
    doc["cost"] = rows(game.cost().matrix());
  }
  doc["units"] = "nats";
  return doc.dump(2) + "\n";
}

void SaveGame(const ReferenceGame& game, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorCode::kIo, "cannot write game file " + path.string());
  }
  out << GameToJson(game);
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path.string());
}

}  // namespace rdrsa

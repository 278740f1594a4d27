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

// JSON game files.
//
//   {
//     "meanings":   ["m", "gm", "hg"],
//     "utterances": ["mustache", "glasses", "hat"],
//     "prior":      [0.3333333333333333, ...],          (optional, uniform)
//     "lexicon":    [[1, 0, 0], [1, 1, 0], [0, 1, 1]],  (row per meaning)
//     "cost":       [0, 0, 0],                          (optional, zero)
//     "units":      "nats"                              (optional)
//   }
//
// "lexicon" may instead be an object keyed by meaning label. "cost" is either
// one entry per utterance or a full meaning-by-utterance matrix. All
// information quantities and costs are in nats.

#ifndef RDRSA_GAME_IO_H_
#define RDRSA_GAME_IO_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "rdrsa/game.h"

namespace rdrsa {

struct LoadReport {
  bool prior_defaulted = false;
  bool cost_defaulted = false;
  std::vector<std::string> notes;
};

struct LoadedGame {
  ReferenceGame game;
  LoadReport report;
};

// Throws Error(kParse) with line/field context, or GameValidationError.
LoadedGame ParseGame(std::string_view json_text,
                     std::string_view source = "<memory>");
LoadedGame LoadGame(const std::filesystem::path& path);

std::string GameToJson(const ReferenceGame& game);
void SaveGame(const ReferenceGame& game, const std::filesystem::path& path);

}  // namespace rdrsa

#endif  // RDRSA_GAME_IO_H_

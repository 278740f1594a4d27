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

#include "rdrsa/builtin_games.h"

namespace rdrsa {

ReferenceGame MustacheGlassesHatGame() {
  Matrix lexicon(3, 3);
  // clang-format off
  lexicon << 1, 0, 0,   // m
             1, 1, 0,   // gm
             0, 1, 1;   // hg
  // clang-format on
  return ValidateGame(GameDefinition::WithDefaults(
      {"m", "gm", "hg"}, {"mustache", "glasses", "hat"}, std::move(lexicon)));
}

ReferenceGame FriendAugmentedGame() {
  Matrix lexicon(3, 4);
  // clang-format off
  lexicon << 1, 0, 0, 1,
             1, 1, 0, 1,
             0, 1, 1, 1;
  // clang-format on
  return ValidateGame(GameDefinition::WithDefaults(
      {"m", "gm", "hg"}, {"mustache", "glasses", "hat", "friend"},
      std::move(lexicon)));
}

}  // namespace rdrsa

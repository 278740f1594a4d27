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

// Games used by the demos, tests and benchmarks.

#ifndef RDRSA_BUILTIN_GAMES_H_
#define RDRSA_BUILTIN_GAMES_H_

#include "rdrsa/game.h"

namespace rdrsa {

// Three referents {m, gm, hg} described by {mustache, glasses, hat}; "m" wears
// only a mustache, "gm" glasses and a mustache, "hg" a hat and glasses.
// Uniform prior, zero cost.
ReferenceGame MustacheGlassesHatGame();

// The game above plus "friend", an utterance true of every referent.
ReferenceGame FriendAugmentedGame();

}  // namespace rdrsa

#endif  // RDRSA_BUILTIN_GAMES_H_

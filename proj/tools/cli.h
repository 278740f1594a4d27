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

#ifndef RDRSA_TOOLS_CLI_H_
#define RDRSA_TOOLS_CLI_H_

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace rdrsa::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitIo = 2;

// Expands "LO:STEP:HI" into LO, LO+STEP, ... up to HI inclusive, each value
// rounded to 12 decimals. Throws rdrsa::Error on malformed input.
std::vector<double> ParseAlphaGrid(std::string_view spec);

// Entry point shared by the binary and the tests. `args` excludes argv[0].
int Main(const std::vector<std::string>& args, std::ostream& out,
         std::ostream& err);

}  // namespace rdrsa::cli

#endif  // RDRSA_TOOLS_CLI_H_

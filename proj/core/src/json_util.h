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

#ifndef RDRSA_SRC_JSON_UTIL_H_
#define RDRSA_SRC_JSON_UTIL_H_

#include <cmath>

#include "json.hpp"
#include "rdrsa/format.h"
#include "rdrsa/game.h"

namespace rdrsa::internal {

using OrderedJson = nlohmann::ordered_json;

inline OrderedJson Number(double v) {
  if (std::isfinite(v)) return v;
  return FormatDouble(v);
}

inline OrderedJson RowsJson(const Matrix& m) {
  OrderedJson out = OrderedJson::array();
  for (Index r = 0; r < m.rows(); ++r) {
    OrderedJson row = OrderedJson::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(Number(m(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

inline OrderedJson VectorJson(const Vector& v) {
  OrderedJson out = OrderedJson::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(Number(v(i)));
  return out;
}

// speaker[m][u] = S(u|m)
inline OrderedJson SpeakerJson(const Speaker& s) { return RowsJson(s.probs()); }

// listener[u][m] = L(m|u)
inline OrderedJson ListenerJson(const Listener& l) {
  return RowsJson(l.probs().transpose());
}

}  // namespace rdrsa::internal

#endif  // RDRSA_SRC_JSON_UTIL_H_

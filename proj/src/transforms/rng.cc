// Copyright 2026 The Sosieforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sosieforge/transforms/rng.h"

#include <cassert>

namespace sosieforge::transforms {

std::uint64_t Rng::Below(std::uint64_t bound) {
  assert(bound > 0);
  // Values below `threshold` would bias the modulo.
  std::uint64_t threshold = (0 - bound) % bound;
  std::uint64_t x = engine_();
  while (x < threshold) {
    x = engine_();
  }
  return x % bound;
}

}  // namespace sosieforge::transforms

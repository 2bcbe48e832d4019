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

#ifndef SOSIEFORGE_TRANSFORMS_RNG_H_
#define SOSIEFORGE_TRANSFORMS_RNG_H_

#include <cstdint>
#include <random>

namespace sosieforge::transforms {

// Seeded generator whose draws are identical on every platform.
// std::uniform_int_distribution is implementation-defined, so bounded draws
// use rejection sampling over the raw engine output instead.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t Next() { return engine_(); }
  // Uniform in [0, bound); bound must be positive.
  std::uint64_t Below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
};

}  // namespace sosieforge::transforms

#endif  // SOSIEFORGE_TRANSFORMS_RNG_H_

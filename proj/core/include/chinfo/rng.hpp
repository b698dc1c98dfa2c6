/*
 * Copyright 2026 The chinfo Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace chinfo {

/// Identifier written into reports so a run can be reproduced bit-for-bit.
/// mt19937_64 output is fixed by the C++ standard; the mapping to doubles
/// below is ours and does not depend on the standard library's distributions.
inline constexpr std::string_view kRngAlgorithm = "mt19937_64/u53-midpoint/v1";

/// Uniform doubles on the open interval (0, 1).
class UniformStream {
 public:
  explicit UniformStream(std::uint64_t seed) : engine_(seed) {}

  /// ((k >> 11) + 0.5) / 2^53: never returns 0 or 1.
  double next() {
    const std::uint64_t bits = engine_() >> 11;
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace chinfo

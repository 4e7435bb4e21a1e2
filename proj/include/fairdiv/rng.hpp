// Copyright 2026 The fairdiv Authors
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

#ifndef FAIRDIV_RNG_HPP
#define FAIRDIV_RNG_HPP

#include <cstdint>
#include <vector>

namespace fairdiv {

/// Counter-based generator: the stream for (seed, a, b) is a pure function
/// of the three values, so any sample can be drawn independently of the
/// order, thread, or chunk in which the samples are processed.
class SplitMix {
 public:
  SplitMix(std::uint64_t seed, std::uint64_t a, std::uint64_t b)
      : state_(mix(mix(seed + 0x9e3779b97f4a7c15ULL * (a + 1)) ^
                   (0xbf58476d1ce4e5b9ULL * (b + 1)))) {}

  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix(state_);
  }

  /// Uniform in [0, bound) by rejection, bias-free.
  std::uint32_t next_below(std::uint32_t bound) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return static_cast<std::uint32_t>(x % bound);
  }

  /// Uniform in [0, 1).
  double next_unit() { return (next() >> 11) * 0x1.0p-53; }

 private:
  static std::uint64_t mix(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
  }
  std::uint64_t state_;
};

/// Fisher-Yates shuffle of 0..n-1 into `out`.
inline void random_permutation(SplitMix& rng, int n, std::vector<int>& out) {
  out.resize(n);
  for (int i = 0; i < n; ++i) out[i] = i;
  for (int i = n - 1; i > 0; --i) {
    const int j = static_cast<int>(rng.next_below(static_cast<std::uint32_t>(i + 1)));
    std::swap(out[i], out[j]);
  }
}

}  // namespace fairdiv

#endif  // FAIRDIV_RNG_HPP

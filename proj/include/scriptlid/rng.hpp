// Copyright 2026 The scriptlid Authors
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

#ifndef SCRIPTLID_RNG_HPP
#define SCRIPTLID_RNG_HPP

#include <cstdint>
#include <vector>

namespace scriptlid {

// SplitMix64. Chosen over std::mt19937 + <random> distributions because the
// standard distributions are implementation-defined; every seeded output in
// this project must be byte-identical across platforms and compilers.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform integer in [0, bound). bound must be > 0.
  std::uint64_t next_below(std::uint64_t bound) {
    // Debiased modulo via rejection on the top band.
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound + 1) % bound;
    std::uint64_t v = next_u64();
    while (v > limit) v = next_u64();
    return v % bound;
  }

  /// Uniform double in [0, 1).
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  bool next_bool() { return (next_u64() & 1u) != 0; }

  /// Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(next_below(i));
      using std::swap;
      swap(v[i - 1], v[j]);
    }
  }

  /// k distinct indices from [0, n), uniform without replacement,
  /// returned in ascending order.
  std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k) {
    std::vector<std::size_t> picked;
    picked.reserve(k);
    // Selection sampling (Knuth 3.4.2 S): single pass, ascending output.
    std::size_t need = k;
    for (std::size_t i = 0; i < n && need > 0; ++i) {
      if (next_below(n - i) < need) {
        picked.push_back(i);
        --need;
      }
    }
    return picked;
  }

 private:
  std::uint64_t state_;
};

/// Derives an independent child seed from a root seed and a stream index.
/// Used to give each sentence its own stream so corpus-level parallelism or
/// reordering cannot change the output.
inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index) {
  Rng mixer(root ^ (0xA0761D6478BD642FULL + index * 0xE7037ED1A0B428DBULL));
  return mixer.next_u64();
}

}  // namespace scriptlid

#endif  // SCRIPTLID_RNG_HPP

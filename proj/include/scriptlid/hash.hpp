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

#ifndef SCRIPTLID_HASH_HPP
#define SCRIPTLID_HASH_HPP

#include <cstdint>
#include <string_view>

namespace scriptlid {

/// FNV-1a 64-bit over raw bytes. Stable across platforms; used for feature
/// bucketing, seed derivation from strings, and file digests.
inline std::uint64_t fnv1a64(std::string_view bytes,
                             std::uint64_t seed = 0xCBF29CE484222325ULL) {
  std::uint64_t h = seed;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

}  // namespace scriptlid

#endif  // SCRIPTLID_HASH_HPP

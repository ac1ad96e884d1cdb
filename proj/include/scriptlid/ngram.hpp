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

#ifndef SCRIPTLID_NGRAM_HPP
#define SCRIPTLID_NGRAM_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "scriptlid/hash.hpp"
#include "scriptlid/unicode.hpp"

namespace scriptlid {

/// Character n-gram configuration shared by every classifier.
struct NgramSpec {
  int n_min = 2;
  int n_max = 4;
  /// Wrap each word in '<' and '>' before enumeration (subword-model style).
  bool word_boundaries = false;
  /// When set, features are FNV-1a(gram) % hash_buckets instead of
  /// vocabulary entries.
  std::optional<std::uint32_t> hash_buckets;

  void validate() const {
    if (n_min < 1 || n_min > n_max || n_max > 8) {
      throw std::invalid_argument("ngram spec requires 1 <= n_min <= n_max <= 8");
    }
    if (hash_buckets.has_value() && *hash_buckets == 0) {
      throw std::invalid_argument("ngram spec: hash_buckets must be positive");
    }
  }
};

namespace detail {

/// Calls fn(gram_utf8) for every contiguous codepoint n-gram of every
/// whitespace-delimited word, n in [n_min, n_max], multiplicities included.
template <typename Fn>
inline void for_each_ngram(std::string_view text, const NgramSpec& spec, Fn&& fn) {
  std::size_t i = 0;
  const std::size_t n = text.size();
  std::string word;
  std::vector<std::size_t> offsets;  // byte offset of each codepoint in `word`
  auto flush_word = [&] {
    if (word.empty()) return;
    std::string wrapped;
    if (spec.word_boundaries) {
      wrapped.reserve(word.size() + 2);
      wrapped.push_back('<');
      wrapped += word;
      wrapped.push_back('>');
    }
    const std::string& w = spec.word_boundaries ? wrapped : word;
    std::vector<std::size_t> offs;
    offs.reserve(offsets.size() + 3);
    if (spec.word_boundaries) {
      offs.push_back(0);
      for (std::size_t o : offsets) offs.push_back(o + 1);
      offs.push_back(w.size() - 1);
    } else {
      offs = offsets;
    }
    offs.push_back(w.size());
    const std::size_t cp_count = offs.size() - 1;
    const std::size_t hi = std::min<std::size_t>(static_cast<std::size_t>(spec.n_max), cp_count);
    for (std::size_t len = static_cast<std::size_t>(spec.n_min); len <= hi; ++len) {
      for (std::size_t start = 0; start + len <= cp_count; ++start) {
        fn(std::string_view(w.data() + offs[start], offs[start + len] - offs[start]));
      }
    }
    word.clear();
    offsets.clear();
  };

  while (i < n) {
    const auto b0 = static_cast<unsigned char>(text[i]);
    std::size_t len = 1;
    if (b0 >= 0xF0) len = 4;
    else if (b0 >= 0xE0) len = 3;
    else if (b0 >= 0xC0) len = 2;
    if (i + len > n) len = 1;
    const std::string_view cp_bytes = text.substr(i, len);
    // ASCII whitespace delimits words; other whitespace was normalized away.
    if (len == 1 && (b0 == ' ' || b0 == '\t' || b0 == '\n' || b0 == '\r')) {
      flush_word();
    } else {
      offsets.push_back(word.size());
      word.append(cp_bytes);
    }
    i += len;
  }
  flush_word();
}

}  // namespace detail

/// All character n-grams of the text as UTF-8 strings (a multiset:
/// duplicates appear once per occurrence).
inline std::vector<std::string> extract_char_ngrams(std::string_view text,
                                                    const NgramSpec& spec) {
  spec.validate();
  std::vector<std::string> grams;
  detail::for_each_ngram(text, spec, [&](std::string_view g) { grams.emplace_back(g); });
  return grams;
}

/// Bucketed feature ids (requires spec.hash_buckets).
inline std::vector<std::uint32_t> extract_hashed_ngrams(std::string_view text,
                                                        const NgramSpec& spec) {
  spec.validate();
  if (!spec.hash_buckets.has_value()) {
    throw std::invalid_argument("extract_hashed_ngrams needs hash_buckets");
  }
  const std::uint64_t buckets = *spec.hash_buckets;
  std::vector<std::uint32_t> ids;
  detail::for_each_ngram(text, spec, [&](std::string_view g) {
    ids.push_back(static_cast<std::uint32_t>(fnv1a64(g) % buckets));
  });
  return ids;
}

}  // namespace scriptlid

#endif  // SCRIPTLID_NGRAM_HPP

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

#ifndef SCRIPTLID_SYNTH_HPP
#define SCRIPTLID_SYNTH_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "scriptlid/normalize.hpp"
#include "scriptlid/rng.hpp"
#include "scriptlid/scriptmap.hpp"

namespace scriptlid {

inline constexpr int kStandardNoiseLevels[] = {20, 40, 60, 80, 100};

inline bool is_standard_noise_level(int level) {
  for (int l : kStandardNoiseLevels) {
    if (l == level) return true;
  }
  return false;
}

/// Parameters for one corruption pass.
struct NoiseSpec {
  int level = 20;                        // percent of substitutable positions
  std::uint64_t seed = 0;
  std::optional<std::string> dominant;   // fixed target language; nullopt = random

  void validate() const {
    if (!is_standard_noise_level(level)) {
      throw std::invalid_argument("noise level " + std::to_string(level) +
                                  " outside the standard 20..100 grid");
    }
  }
};

/// Immutable collection of mapping tables indexed by source language.
class MappingTableSet {
 public:
  void add(MappingTable table) { tables_.push_back(std::move(table)); }

  /// Tables whose source is `lang`, ordered by target language so the
  /// random dominant choice is reproducible.
  std::vector<const MappingTable*> for_source(const std::string& lang) const {
    std::vector<const MappingTable*> out;
    for (const auto& t : tables_) {
      if (t.source_lang == lang) out.push_back(&t);
    }
    std::sort(out.begin(), out.end(), [](const MappingTable* a, const MappingTable* b) {
      return a->target_lang < b->target_lang;
    });
    return out;
  }

  const std::vector<MappingTable>& all() const { return tables_; }
  bool empty() const { return tables_.empty(); }

 private:
  std::vector<MappingTable> tables_;
};

/// Number of positions to substitute: round-half-up of S * level%.
inline std::size_t substitution_count(std::size_t substitutable, int level) {
  return (substitutable * static_cast<std::size_t>(level) + 50) / 100;
}

namespace detail {

inline void remove_harakat_and_randomize_digits(std::u32string& cps, bool randomize_digits,
                                                Rng& rng) {
  std::u32string out;
  out.reserve(cps.size());
  for (char32_t cp : cps) {
    if (is_harakat(cp)) continue;
    if (randomize_digits && is_ascii_digit(cp)) {
      out.push_back(map_numeral(cp, rng));
    } else {
      out.push_back(cp);
    }
  }
  cps = std::move(out);
}

}  // namespace detail

/// Corrupts one clean sentence: substitutes exactly
/// round_half_up(S * level/100) of its S substitutable positions using the
/// chosen mapping table; at level 100 additionally removes detachable
/// diacritics and randomizes ASCII digits into the Perso/Arabic blocks.
/// Deterministic given spec.seed.
inline Sentence corrupt_sentence(const Sentence& s, const MappingTableSet& tables,
                                 const NoiseSpec& spec) {
  if (s.noise_level != 0) {
    throw std::invalid_argument("corrupt_sentence: input already carries noise");
  }
  spec.validate();
  const auto applicable = tables.for_source(s.lang);
  if (applicable.empty()) {
    throw std::runtime_error("corrupt_sentence: no mapping table for language '" + s.lang + "'");
  }

  Rng rng(spec.seed);
  const MappingTable* table = nullptr;
  if (spec.dominant.has_value()) {
    for (const auto* t : applicable) {
      if (t->target_lang == *spec.dominant) table = t;
    }
    if (table == nullptr) {
      throw std::runtime_error("corrupt_sentence: no mapping table " + s.lang + " -> " +
                               *spec.dominant);
    }
  } else {
    table = applicable[rng.next_below(applicable.size())];
  }

  std::u32string cps = decode_utf8(s.text);
  const auto positions = substitutable_positions(cps, *table);
  const std::size_t k = substitution_count(positions.size(), spec.level);
  const auto chosen = rng.sample_indices(positions.size(), k);

  // Draw targets in ascending position order, then apply right-to-left so
  // earlier indices stay valid under length-changing replacements.
  std::vector<std::pair<std::size_t, std::u32string>> edits;
  edits.reserve(chosen.size());
  for (std::size_t pick : chosen) {
    const auto& pos = positions[pick];
    std::vector<const std::u32string*> options;
    for (const auto* rule : pos.rules) {
      for (const auto& t : rule->targets) {
        if (t.size() == 1 && t[0] == rule->source) continue;  // identity is not a substitution
        options.push_back(&t);
      }
    }
    const auto& target = *options[rng.next_below(options.size())];
    edits.emplace_back(pos.index, target);
  }
  for (auto it = edits.rbegin(); it != edits.rend(); ++it) {
    cps.replace(it->first, 1, it->second);
  }

  if (spec.level == 100) {
    detail::remove_harakat_and_randomize_digits(cps, table->numeral_randomization, rng);
  }

  Sentence out;
  out.text = encode_utf8(cps);
  out.lang = s.lang;
  out.noise_level = spec.level;
  out.origin = Origin::kSynthetic;
  return out;
}

/// Corrupts a clean corpus at each requested level. Each sentence gets its
/// own stream derived from (seed, level, sentence index), so output does not
/// depend on iteration order and reruns are byte-identical.
inline std::map<int, std::vector<Sentence>> corrupt_corpus(
    const std::vector<Sentence>& clean, const MappingTableSet& tables,
    const std::vector<int>& levels, std::uint64_t seed,
    const std::optional<std::string>& dominant = std::nullopt) {
  std::map<int, std::vector<Sentence>> out;
  for (int level : levels) {
    auto& bucket = out[level];
    bucket.reserve(clean.size());
    for (std::size_t i = 0; i < clean.size(); ++i) {
      NoiseSpec spec;
      spec.level = level;
      spec.seed = derive_seed(derive_seed(seed, static_cast<std::uint64_t>(level)), i);
      spec.dominant = dominant;
      bucket.push_back(corrupt_sentence(clean[i], tables, spec));
    }
  }
  return out;
}

}  // namespace scriptlid

#endif  // SCRIPTLID_SYNTH_HPP

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

#ifndef SCRIPTLID_SYNTHLANG_HPP
#define SCRIPTLID_SYNTHLANG_HPP

#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "scriptlid/hash.hpp"
#include "scriptlid/normalize.hpp"
#include "scriptlid/profile.hpp"
#include "scriptlid/rng.hpp"
#include "scriptlid/scriptmap.hpp"
#include "scriptlid/synth.hpp"

namespace scriptlid {

/// Generator for a family of six artificial languages with
/// partially-overlapping inventories: two satellite pairs plus their two
/// dominant languages. Corrupting a satellite substitutes its letters with
/// the dominant's, and the group's common vocabulary is built so that fully
/// corrupted satellite words coincide with common words of the dominant
/// language. Ships as test/demo data so the repository carries no
/// third-party corpus text.
///
/// Group 1: zaa, zbb (dominant zdd). Group 2: zcc, zff (dominant zee).
/// zdd and zee are conventional-only.
struct SyntheticFamilyConfig {
  std::size_t sentences_per_lang = 2000;
  std::size_t content_words = 300;   // lexicon size per language
  std::size_t function_words = 30;   // group-shared, base letters only
  double function_token_rate = 0.25;
  int min_sentence_words = 6;
  int max_sentence_words = 12;
  std::uint64_t seed = 1;
};

struct SyntheticFamily {
  ProfileSet profiles;
  MappingTableSet tables;
  std::map<std::string, std::vector<Sentence>> corpora;
};

namespace detail {

inline const std::array<char32_t, 12>& synth_base_letters() {
  static const std::array<char32_t, 12> base = {0x0627, 0x0628, 0x062A, 0x062C,
                                                0x062F, 0x0631, 0x0633, 0x0639,
                                                0x0641, 0x0644, 0x0645, 0x0646};
  return base;
}

struct SynthLangDef {
  std::string code;
  std::vector<char32_t> letters;    // distinctive letters
  std::vector<std::string> dominant;
  bool base_alphabet = true;        // includes the shared base letters
  int group = 0;                    // stem/function-word pool id
  int shared_slots_per_10 = 7;      // group-parallel share of the lexicon
  int variant_salt = 0;             // which word-form variant the language realizes
};

inline const std::vector<SynthLangDef>& synth_lang_defs() {
  // zaa and zbb share two of their four letters, so a surviving shared
  // letter does not give the language away; the other two are decisive.
  // Both members of a satellite pair map onto the first two letters of the
  // dominant language and realize the same shared word forms, so fully
  // corrupted satellite words coincide with each other and with the
  // dominant's common vocabulary. The dominant's private vocabulary spans
  // all four of its letters.
  static const std::vector<SynthLangDef> defs = {
      {"zaa", {0x067E, 0x06AF}, {"zdd"}, true, 1, 7, 0},
      {"zbb", {0x0679, 0x0688}, {"zdd"}, true, 1, 7, 0},
      {"zdd", {0x06A9, 0x06CC, 0x06C1, 0x06BE}, {}, true, 1, 5, 0},
      {"zcc", {0x06A4, 0x06B5}, {"zee"}, true, 2, 7, 0},
      {"zff", {0x06A6, 0x068C}, {"zee"}, true, 2, 7, 0},
      {"zee", {0x063A, 0x062E, 0x062D, 0x0637}, {}, true, 2, 5, 0},
  };
  return defs;
}

/// Distinctive-letter mappings: satellite letter i maps onto dominant
/// letter offset+i, so a pair with offsets 0 and 2 lands on disjoint halves
/// of the dominant alphabet.
inline MappingTable synth_mapping(const std::string& source, const std::string& target,
                                  const std::vector<char32_t>& from,
                                  const std::vector<char32_t>& to, std::size_t offset) {
  MappingTable t;
  t.source_lang = source;
  t.target_lang = target;
  t.numeral_randomization = true;
  for (std::size_t i = 0; i < from.size(); ++i) {
    MappingRule r;
    r.source = from[i];
    r.targets.push_back(std::u32string(1, to[(offset + i) % to.size()]));
    t.rules.push_back(std::move(r));
  }
  return t;
}

inline std::string make_stem(Rng& rng, const std::vector<char32_t>& letters, int min_len,
                             int max_len) {
  const int len = min_len + static_cast<int>(rng.next_below(
                                static_cast<std::uint64_t>(max_len - min_len + 1)));
  std::string w;
  for (int i = 0; i < len; ++i) {
    append_utf8(w, letters[rng.next_below(letters.size())]);
  }
  return w;
}

/// Skewed rank sampling: low ranks dominate, every rank reachable.
inline std::size_t zipfish(Rng& rng, std::size_t n) {
  const double u = rng.next_double();
  auto idx = static_cast<std::size_t>(u * u * static_cast<double>(n));
  return idx >= n ? n - 1 : idx;
}

}  // namespace detail

inline SyntheticFamily generate_synthetic_family(const SyntheticFamilyConfig& cfg = {}) {
  SyntheticFamily fam;
  const auto& base = detail::synth_base_letters();
  const std::vector<char32_t> base_vec(base.begin(), base.end());

  // Profiles.
  for (const auto& def : detail::synth_lang_defs()) {
    LanguageProfile p;
    p.code = def.code;
    p.script_type = ScriptType::kAlphabet;
    p.uses_diacritics = false;
    p.uses_zwnj = false;
    p.dominant_langs = def.dominant;
    if (def.base_alphabet) p.inventory.insert(base.begin(), base.end());
    p.inventory.insert(def.letters.begin(), def.letters.end());
    fam.profiles.add(std::move(p));
  }
  fam.profiles.check_cross_references();

  // Mapping tables: satellite -> dominant, distinctive letters only.
  const auto& defs = detail::synth_lang_defs();
  auto letters_of = [&](const std::string& code) -> const std::vector<char32_t>& {
    for (const auto& d : defs) {
      if (d.code == code) return d.letters;
    }
    throw std::logic_error("unknown synthetic language " + code);
  };
  fam.tables.add(detail::synth_mapping("zaa", "zdd", letters_of("zaa"), letters_of("zdd"), 0));
  fam.tables.add(detail::synth_mapping("zbb", "zdd", letters_of("zbb"), letters_of("zdd"), 0));
  fam.tables.add(detail::synth_mapping("zcc", "zee", letters_of("zcc"), letters_of("zee"), 0));
  fam.tables.add(detail::synth_mapping("zff", "zee", letters_of("zff"), letters_of("zee"), 0));

  // Group-shared stem pools and function words.
  std::map<int, std::vector<std::string>> stem_pool;
  std::map<int, std::vector<std::string>> function_pool;
  for (int group : {1, 2}) {
    Rng rng(derive_seed(cfg.seed, 0x500 + static_cast<std::uint64_t>(group)));
    const auto& letters = base_vec;
    auto& stems = stem_pool[group];
    std::set<std::string> seen;
    const std::size_t pool_size = std::max<std::size_t>(cfg.content_words / 16, 40);
    while (stems.size() < pool_size) {
      auto s = detail::make_stem(rng, letters, 3, 5);
      if (seen.insert(s).second) stems.push_back(std::move(s));
    }
    auto& fns = function_pool[group];
    while (fns.size() < cfg.function_words) {
      auto s = detail::make_stem(rng, letters, 2, 3);
      if (seen.insert(s).second) fns.push_back(std::move(s));
    }
  }

  // Per-language lexicons. Lexicon slot i of every language in a group uses
  // the same shared stem (same frequency rank) when i falls on a shared
  // slot, with the language's own letters spliced in at stem-derived spots.
  // A group's word forms are therefore parallel: once corruption collapses
  // the letters onto the dominant language's, parallel forms coincide.
  // Private-slot stems differ per language and survive corruption as the
  // recoverable signal.
  // Shared-slot words only ever use the first two letters, so corrupted
  // forms land inside the dominant's common vocabulary; private words range
  // over the language's full letter set. The salt picks which variant form
  // of the stem a language realizes.
  auto splice_letters = [](const std::string& stem, const std::vector<char32_t>& own,
                           bool shared_slot, std::uint64_t salt) {
    std::u32string cps = decode_utf8(stem);
    const std::uint64_t h =
        fnv1a64(stem) ^ (0x517CC1B727220A95ULL * (salt + 1));
    const int inserts = 2 + static_cast<int>((h >> 17) & 1);
    const std::size_t span = shared_slot ? std::min<std::size_t>(own.size(), 2) : own.size();
    for (int k = 0; k < inserts; ++k) {
      const auto pos = static_cast<std::size_t>((h >> (5 * k)) % (cps.size() + 1));
      const auto idx = ((h >> (11 * k + 3)) % 4) % span;
      cps.insert(cps.begin() + static_cast<std::ptrdiff_t>(pos), own[idx]);
    }
    return encode_utf8(cps);
  };
  std::map<std::string, std::vector<std::string>> lexicon;
  for (const auto& def : defs) {
    Rng rng(derive_seed(cfg.seed, fnv1a64(def.code) | 1));
    auto& words = lexicon[def.code];
    const auto& pool = stem_pool[def.group];
    std::size_t shared_next = 0;
    // Dominant languages use a small, high-frequency lexicon: every word is
    // seen often enough in their clean-only data to be solidly learned.
    const bool is_dominant = def.dominant.empty();
    const std::size_t n_words =
        is_dominant ? std::max<std::size_t>(cfg.content_words / 4, 50) : cfg.content_words;
    for (std::size_t i = 0; i < n_words; ++i) {
      const bool shared = static_cast<int>(i % 10) < def.shared_slots_per_10;
      if (shared) {
        // Dominants realize both variant forms of each shared stem.
        const std::uint64_t salt =
            is_dominant ? shared_next % 2 : static_cast<std::uint64_t>(def.variant_salt);
        const auto& stem = is_dominant ? pool[(shared_next / 2) % pool.size()]
                                       : pool[shared_next % pool.size()];
        ++shared_next;
        words.push_back(splice_letters(stem, def.letters, true, salt));
      } else {
        const auto stem = detail::make_stem(rng, base_vec, 3, 5);
        words.push_back(splice_letters(stem, def.letters, false,
                                       static_cast<std::uint64_t>(def.variant_salt)));
      }
    }
  }

  // Sentences.
  for (const auto& def : defs) {
    Rng rng(derive_seed(cfg.seed, fnv1a64(def.code) ^ 0xC0FFEE));
    auto& corpus = fam.corpora[def.code];
    const auto& words = lexicon[def.code];
    const auto& fns = function_pool[def.group];
    corpus.reserve(cfg.sentences_per_lang);
    for (std::size_t i = 0; i < cfg.sentences_per_lang; ++i) {
      const int len = cfg.min_sentence_words +
                      static_cast<int>(rng.next_below(static_cast<std::uint64_t>(
                          cfg.max_sentence_words - cfg.min_sentence_words + 1)));
      std::string text;
      for (int w = 0; w < len; ++w) {
        if (w != 0) text.push_back(' ');
        if (rng.next_double() < cfg.function_token_rate) {
          text += fns[detail::zipfish(rng, fns.size())];
        } else {
          // Uniform over content words: the long tail is what separates a
          // dedicated expert from a capacity-stretched root.
          text += words[rng.next_below(words.size())];
        }
      }
      corpus.push_back(Sentence{std::move(text), def.code, 0, Origin::kCorpus});
    }
  }
  return fam;
}

}  // namespace scriptlid

#endif  // SCRIPTLID_SYNTHLANG_HPP

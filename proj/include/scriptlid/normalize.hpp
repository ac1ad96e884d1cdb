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

#ifndef SCRIPTLID_NORMALIZE_HPP
#define SCRIPTLID_NORMALIZE_HPP

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "scriptlid/profile.hpp"
#include "scriptlid/unicode.hpp"

namespace scriptlid {

enum class Origin { kCorpus, kSynthetic };

/// A labeled sentence. noise_level is 0 exactly for corpus sentences.
struct Sentence {
  std::string text;  // UTF-8
  std::string lang;  // ISO 639-3
  int noise_level = 0;
  Origin origin = Origin::kCorpus;
};

struct NormalizeOptions {
  /// Sentence fragments with fewer non-space codepoints are dropped.
  std::size_t min_sentence_chars = 3;
  /// Drop sentences whose letter codepoints are covered by the profile
  /// inventory below this fraction. Set to 0 to disable.
  double min_inventory_coverage = 0.9;
};

namespace detail {

inline bool is_phone_separator(char32_t cp) {
  return cp == U'-' || cp == U'(' || cp == U')' || cp == U'+' || cp == U'.' || cp == U'/';
}

/// True for codepoints that may appear inside a URL/email token. Tokens are
/// whitespace-delimited, so anything non-space qualifies.
inline bool is_token_char(char32_t cp) { return !is_space(cp); }

inline bool token_is_url(const std::u32string& tok) {
  static const std::u32string schemes[] = {U"http://", U"https://", U"ftp://", U"www."};
  for (const auto& s : schemes) {
    if (tok.size() > s.size() && tok.compare(0, s.size(), s) == 0) return true;
  }
  return false;
}

inline bool token_is_email(const std::u32string& tok) {
  const auto at = tok.find(U'@');
  if (at == std::u32string::npos || at == 0 || at + 1 >= tok.size()) return false;
  if (tok.find(U'@', at + 1) != std::u32string::npos) return false;
  const auto dot = tok.find(U'.', at + 1);
  // require token@token.tld with a non-empty tld
  return dot != std::u32string::npos && dot > at + 1 && dot + 1 < tok.size();
}

/// A run of >=7 digits (any of the three digit families) possibly broken by
/// phone punctuation. Matching every digit family keeps the pipeline
/// idempotent: numerals are unified to ASCII after markup stripping, so a
/// second pass must not discover new phone-like runs.
inline bool token_is_phone(const std::u32string& tok) {
  std::size_t digits = 0;
  for (char32_t cp : tok) {
    if (is_any_digit(cp)) {
      ++digits;
    } else if (!is_phone_separator(cp)) {
      return false;
    }
  }
  return digits >= 7;
}

}  // namespace detail

/// Removes URLs, email addresses, phone-number-like digit runs and
/// formatting control characters, then collapses whitespace runs to single
/// spaces and trims the ends.
inline std::string strip_markup(std::string_view raw) {
  const std::u32string cps = decode_utf8(raw);
  std::u32string kept;
  kept.reserve(cps.size());

  std::size_t i = 0;
  const std::size_t n = cps.size();
  while (i < n) {
    if (is_space(cps[i])) {
      kept.push_back(U' ');
      ++i;
      continue;
    }
    // Collect the whitespace-delimited token and classify it whole.
    std::size_t j = i;
    std::u32string tok;
    while (j < n && detail::is_token_char(cps[j])) {
      tok.push_back(cps[j]);
      ++j;
    }
    if (detail::token_is_url(tok) || detail::token_is_email(tok) || detail::token_is_phone(tok)) {
      i = j;
      continue;
    }
    for (char32_t cp : tok) {
      if (!is_format_control(cp)) kept.push_back(cp);
    }
    i = j;
  }

  // Collapse space runs; trim.
  std::u32string out;
  out.reserve(kept.size());
  for (char32_t cp : kept) {
    if (cp == U' ') {
      if (!out.empty() && out.back() != U' ') out.push_back(U' ');
    } else {
      out.push_back(cp);
    }
  }
  while (!out.empty() && out.back() == U' ') out.pop_back();
  return encode_utf8(out);
}

/// Replaces Arabic-Indic (U+0660..) and Extended Arabic-Indic (U+06F0..)
/// digits with the ASCII digit of equal numeric value. Length-preserving in
/// codepoints.
inline std::string unify_numerals(std::string_view text) {
  std::u32string cps = decode_utf8(text);
  for (char32_t& cp : cps) {
    if (is_arabic_indic_digit(cp) || is_extended_arabic_indic_digit(cp)) {
      cp = static_cast<char32_t>(U'0' + digit_value(cp));
    }
  }
  return encode_utf8(cps);
}

/// Applies the profile's variant->canonical encoding unification. Single
/// pass; profile validation guarantees rules do not chain, so the result is
/// idempotent.
inline std::string unify_codepoints(std::string_view text, const LanguageProfile& profile) {
  std::u32string cps = decode_utf8(text);
  for (char32_t& cp : cps) {
    for (const auto& [variant, canonical] : profile.unification_rules) {
      if (cp == variant) {
        cp = canonical;
        break;
      }
    }
  }
  return encode_utf8(cps);
}

/// Removes ZWNJ when the language does not use it as an orthographic unit.
inline std::string apply_zwnj_policy(std::string_view text, const LanguageProfile& profile) {
  if (profile.uses_zwnj) return std::string(text);
  std::u32string cps = decode_utf8(text);
  std::u32string out;
  out.reserve(cps.size());
  for (char32_t cp : cps) {
    if (cp != kZwnj) out.push_back(cp);
  }
  return encode_utf8(out);
}

/// Splits on sentence-final punctuation (Arabic full stop, '.', Arabic and
/// Latin question marks, '!', '…') followed by whitespace or end of text.
/// The delimiter stays attached to its sentence. Fragments with fewer than
/// `min_chars` non-space codepoints are dropped.
inline std::vector<std::string> sentence_split(std::string_view text, std::size_t min_chars = 3) {
  const std::u32string cps = decode_utf8(text);
  std::vector<std::string> out;
  auto is_delim = [](char32_t cp) {
    return cp == kArabicFullStop || cp == U'.' || cp == kArabicQuestionMark || cp == U'?' ||
           cp == U'!' || cp == U'…';
  };
  auto flush = [&](std::size_t begin, std::size_t end) {
    while (begin < end && is_space(cps[begin])) ++begin;
    while (end > begin && is_space(cps[end - 1])) --end;
    if (begin >= end) return;
    std::size_t nonspace = 0;
    for (std::size_t k = begin; k < end; ++k) {
      if (!is_space(cps[k])) ++nonspace;
    }
    if (nonspace < min_chars) return;
    out.push_back(encode_utf8(std::u32string_view(cps.data() + begin, end - begin)));
  };
  std::size_t start = 0;
  for (std::size_t i = 0; i < cps.size(); ++i) {
    if (is_delim(cps[i]) && (i + 1 == cps.size() || is_space(cps[i + 1]))) {
      flush(start, i + 1);
      start = i + 1;
    }
  }
  flush(start, cps.size());
  return out;
}

/// Fraction of letter codepoints covered by the profile inventory; 1.0 for
/// sentences without letters.
inline double inventory_coverage(std::string_view text, const LanguageProfile& profile) {
  const std::u32string cps = decode_utf8(text);
  std::size_t letters = 0, covered = 0;
  for (char32_t cp : cps) {
    if (!is_letter(cp)) continue;
    ++letters;
    if (profile.in_inventory(cp)) ++covered;
  }
  if (letters == 0) return 1.0;
  return static_cast<double>(covered) / static_cast<double>(letters);
}

/// Full preprocessing chain: markup stripping, numeral unification,
/// codepoint unification, ZWNJ policy, sentence split, inventory-coverage
/// filter. Idempotent on its own output.
inline std::vector<Sentence> normalize_pipeline(std::string_view raw,
                                                const LanguageProfile& profile,
                                                const NormalizeOptions& opts = {}) {
  std::string text = strip_markup(raw);
  text = unify_numerals(text);
  text = unify_codepoints(text, profile);
  text = apply_zwnj_policy(text, profile);
  std::vector<Sentence> out;
  for (auto& sent : sentence_split(text, opts.min_sentence_chars)) {
    if (opts.min_inventory_coverage > 0.0 &&
        inventory_coverage(sent, profile) < opts.min_inventory_coverage) {
      continue;
    }
    out.push_back(Sentence{std::move(sent), profile.code, 0, Origin::kCorpus});
  }
  return out;
}

}  // namespace scriptlid

#endif  // SCRIPTLID_NORMALIZE_HPP

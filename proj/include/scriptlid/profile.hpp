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

#ifndef SCRIPTLID_PROFILE_HPP
#define SCRIPTLID_PROFILE_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "scriptlid/unicode.hpp"

namespace scriptlid {

/// Thrown for malformed configuration/data files; carries file/line context.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ScriptType { kAbjad, kAlphabet };

/// Per-language configuration: script behaviour plus the character
/// inventory and encoding-unification rules used during preprocessing.
struct LanguageProfile {
  std::string code;                         // ISO 639-3
  ScriptType script_type = ScriptType::kAbjad;
  bool uses_diacritics = false;
  bool uses_zwnj = false;
  std::vector<std::string> dominant_langs;  // ordered, may be empty
  std::set<char32_t> inventory;
  std::vector<std::pair<char32_t, char32_t>> unification_rules;  // variant -> canonical

  bool in_inventory(char32_t cp) const { return inventory.count(cp) != 0; }

  /// Internal consistency: canonical codepoints must be in the inventory and
  /// no canonical may itself appear as a variant (rule chains would break
  /// single-pass idempotence).
  void validate() const {
    if (code.empty()) throw ConfigError("profile: empty language code");
    std::set<char32_t> variants;
    for (const auto& [variant, canonical] : unification_rules) {
      if (!in_inventory(canonical)) {
        throw ConfigError("profile " + code + ": unification target " +
                          codepoint_name(canonical) + " not in inventory");
      }
      if (!variants.insert(variant).second) {
        throw ConfigError("profile " + code + ": duplicate unification rule for " +
                          codepoint_name(variant));
      }
    }
    for (const auto& [variant, canonical] : unification_rules) {
      (void)variant;
      if (variants.count(canonical) != 0) {
        throw ConfigError("profile " + code + ": unification chains through " +
                          codepoint_name(canonical));
      }
    }
  }
};

/// The nineteen languages of the bundled configuration.
inline const std::array<std::string_view, 19>& bundled_language_codes() {
  static const std::array<std::string_view, 19> codes = {
      "arb", "azb", "bal", "brh", "ckb", "fas", "glk", "hac", "kas", "kmr",
      "mzn", "pnb", "pus", "sdh", "skr", "snd", "trw", "uig", "urd"};
  return codes;
}

inline bool is_bundled_language(std::string_view code) {
  const auto& codes = bundled_language_codes();
  return std::find(codes.begin(), codes.end(), code) != codes.end();
}

/// The four languages with no administratively-dominant language; they only
/// occur in conventional writing and are never synthetically corrupted.
inline bool is_conventional_only(const LanguageProfile& p) {
  return p.dominant_langs.empty();
}

namespace detail {

inline std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
  return std::string(s.substr(b, e - b));
}

inline std::vector<std::string> split_list(std::string_view s, char sep) {
  std::vector<std::string> items;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      auto t = trim(cur);
      if (!t.empty()) items.push_back(t);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  auto t = trim(cur);
  if (!t.empty()) items.push_back(t);
  return items;
}

/// Parses "U+06CC" (case-insensitive hex) into a codepoint.
inline char32_t parse_codepoint(std::string_view tok, const std::string& context) {
  if (tok.size() < 3 || (tok[0] != 'U' && tok[0] != 'u') || tok[1] != '+') {
    throw ConfigError(context + ": expected U+XXXX codepoint, got '" + std::string(tok) + "'");
  }
  std::uint32_t v = 0;
  for (std::size_t i = 2; i < tok.size(); ++i) {
    const char c = tok[i];
    int d;
    if (c >= '0' && c <= '9') d = c - '0';
    else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F') d = c - 'A' + 10;
    else throw ConfigError(context + ": bad hex digit in '" + std::string(tok) + "'");
    v = v * 16 + static_cast<std::uint32_t>(d);
    if (v > 0x10FFFF) throw ConfigError(context + ": codepoint out of range in '" + std::string(tok) + "'");
  }
  return static_cast<char32_t>(v);
}

inline bool parse_bool(std::string_view v, const std::string& context) {
  if (v == "true" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "no" || v == "0") return false;
  throw ConfigError(context + ": expected boolean, got '" + std::string(v) + "'");
}

}  // namespace detail

/// Parses a profile file: `key = value` lines, '#' comments. Keys:
/// code, script_type (abjad|alphabet), uses_diacritics, uses_zwnj,
/// dominant (comma-separated codes), inventory (space-separated U+XXXX,
/// repeatable), unify ("U+XXXX > U+XXXX", repeatable).
inline LanguageProfile parse_profile(std::istream& in, const std::string& name) {
  LanguageProfile p;
  std::string line;
  int lineno = 0;
  bool saw_code = false;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto text = detail::trim(line);
    if (text.empty()) continue;
    const auto eq = text.find('=');
    const std::string context = name + ":" + std::to_string(lineno);
    if (eq == std::string::npos) throw ConfigError(context + ": expected 'key = value'");
    const auto key = detail::trim(text.substr(0, eq));
    const auto value = detail::trim(text.substr(eq + 1));
    if (key == "code") {
      p.code = value;
      saw_code = true;
    } else if (key == "script_type") {
      if (value == "abjad") p.script_type = ScriptType::kAbjad;
      else if (value == "alphabet") p.script_type = ScriptType::kAlphabet;
      else throw ConfigError(context + ": unknown script_type '" + value + "'");
    } else if (key == "uses_diacritics") {
      p.uses_diacritics = detail::parse_bool(value, context);
    } else if (key == "uses_zwnj") {
      p.uses_zwnj = detail::parse_bool(value, context);
    } else if (key == "dominant") {
      for (auto& code : detail::split_list(value, ',')) p.dominant_langs.push_back(code);
    } else if (key == "inventory") {
      for (auto& tok : detail::split_list(value, ' ')) {
        p.inventory.insert(detail::parse_codepoint(tok, context));
      }
    } else if (key == "unify") {
      const auto gt = value.find('>');
      if (gt == std::string::npos) throw ConfigError(context + ": unify needs 'U+A > U+B'");
      const auto variant = detail::parse_codepoint(detail::trim(value.substr(0, gt)), context);
      const auto canonical = detail::parse_codepoint(detail::trim(value.substr(gt + 1)), context);
      p.unification_rules.emplace_back(variant, canonical);
    } else {
      throw ConfigError(context + ": unknown key '" + key + "'");
    }
  }
  if (!saw_code) throw ConfigError(name + ": missing 'code'");
  p.validate();
  return p;
}

inline LanguageProfile load_profile(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot open profile file " + file.string());
  return parse_profile(in, file.filename().string());
}

/// A set of loaded profiles keyed by language code. Dominant-language
/// references are checked across the set.
class ProfileSet {
 public:
  void add(LanguageProfile p) {
    auto code = p.code;
    if (!profiles_.emplace(code, std::move(p)).second) {
      throw ConfigError("duplicate profile for language " + code);
    }
  }

  /// Loads every *.profile file in a directory. With `bundled_only`, codes
  /// outside the stock nineteen-language set are rejected.
  static ProfileSet load_dir(const std::filesystem::path& dir, bool bundled_only = false) {
    ProfileSet set;
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
      if (entry.path().extension() == ".profile") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
      auto p = load_profile(f);
      if (bundled_only && !is_bundled_language(p.code)) {
        throw ConfigError("profile " + f.string() + ": unknown language code '" + p.code + "'");
      }
      set.add(std::move(p));
    }
    set.check_cross_references();
    return set;
  }

  void check_cross_references() const {
    for (const auto& [code, p] : profiles_) {
      for (const auto& dom : p.dominant_langs) {
        if (profiles_.count(dom) == 0) {
          throw ConfigError("profile " + code + ": dominant language '" + dom +
                            "' has no profile");
        }
      }
    }
  }

  bool contains(std::string_view code) const { return profiles_.count(std::string(code)) != 0; }

  const LanguageProfile& get(std::string_view code) const {
    auto it = profiles_.find(std::string(code));
    if (it == profiles_.end()) throw ConfigError("no profile for language '" + std::string(code) + "'");
    return it->second;
  }

  std::vector<std::string> codes() const {
    std::vector<std::string> out;
    out.reserve(profiles_.size());
    for (const auto& [code, p] : profiles_) out.push_back(code);
    return out;
  }

  std::size_t size() const { return profiles_.size(); }

 private:
  std::map<std::string, LanguageProfile> profiles_;
};

}  // namespace scriptlid

#endif  // SCRIPTLID_PROFILE_HPP

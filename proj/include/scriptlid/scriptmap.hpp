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

#ifndef SCRIPTLID_SCRIPTMAP_HPP
#define SCRIPTLID_SCRIPTMAP_HPP

#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "scriptlid/normalize.hpp"
#include "scriptlid/profile.hpp"
#include "scriptlid/rng.hpp"
#include "scriptlid/unicode.hpp"

namespace scriptlid {

enum class RulePosition { kAny, kWordInitial, kWordMedial, kWordFinal };

inline std::string to_string(RulePosition p) {
  switch (p) {
    case RulePosition::kAny: return "any";
    case RulePosition::kWordInitial: return "word_initial";
    case RulePosition::kWordMedial: return "word_medial";
    case RulePosition::kWordFinal: return "word_final";
  }
  return "any";
}

/// One grapheme substitution: a source codepoint maps to one of several
/// target codepoint sequences (an empty sequence deletes the grapheme),
/// optionally restricted to a position within the word.
struct MappingRule {
  char32_t source = 0;
  std::vector<std::u32string> targets;  // non-empty list; an element may be empty
  RulePosition position = RulePosition::kAny;

  /// True if some target differs from the bare source codepoint, i.e. the
  /// rule offers an actual substitution.
  bool offers_substitution() const {
    for (const auto& t : targets) {
      if (!(t.size() == 1 && t[0] == source)) return true;
    }
    return false;
  }
};

/// Directed grapheme-substitution table from a source language's script to
/// one of its dominant languages' scripts. Immutable after load.
struct MappingTable {
  std::string source_lang;
  std::string target_lang;
  std::vector<MappingRule> rules;
  bool numeral_randomization = true;

  const std::string& id() const { return source_lang; }
};

struct MappingValidationIssue {
  enum class Kind { kCoverageGap, kForeignTarget } kind;
  char32_t codepoint;       // the uncovered source letter, or the offending target
  std::size_t rule_index;   // for foreign targets
};

/// Report from checking a table against the two language profiles.
struct MappingValidationReport {
  std::vector<char32_t> coverage_gaps;                    // source letters with no rule and no identity
  std::vector<std::pair<std::size_t, char32_t>> foreign_targets;  // (rule index, codepoint)

  bool complete() const { return coverage_gaps.empty() && foreign_targets.empty(); }
};

namespace detail {

inline RulePosition parse_position(std::string_view tok, const std::string& context) {
  if (tok == "any") return RulePosition::kAny;
  if (tok == "word_initial") return RulePosition::kWordInitial;
  if (tok == "word_medial") return RulePosition::kWordMedial;
  if (tok == "word_final") return RulePosition::kWordFinal;
  throw ConfigError(context + ": unknown position '" + std::string(tok) + "'");
}

/// Parses one target sequence: space-separated U+XXXX tokens, or "-" for
/// deletion.
inline std::u32string parse_target_sequence(std::string_view field, const std::string& context) {
  std::u32string seq;
  if (detail::trim(field) == "-") return seq;
  for (const auto& tok : split_list(field, ' ')) {
    seq.push_back(parse_codepoint(tok, context));
  }
  if (seq.empty()) throw ConfigError(context + ": empty target sequence");
  return seq;
}

}  // namespace detail

/// Loads a mapping table from TSV. Columns: source codepoint (U+XXXX hex),
/// position keyword, semicolon-separated target sequences ("-" deletes).
/// '#' starts a comment line; '@source', '@target' and '@numerals' directive
/// lines carry the table metadata.
inline MappingTable parse_mapping(std::istream& in, const std::string& name) {
  MappingTable table;
  std::string line;
  int lineno = 0;
  std::set<std::pair<char32_t, RulePosition>> seen;
  int any_rules_per_source = 0;
  (void)any_rules_per_source;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string context = name + ":" + std::to_string(lineno);
    auto text = detail::trim(line);
    if (text.empty() || text[0] == '#') continue;
    if (text[0] == '@') {
      const auto sp = text.find_first_of(" \t");
      if (sp == std::string::npos) throw ConfigError(context + ": directive needs a value");
      const auto key = text.substr(0, sp);
      const auto value = detail::trim(text.substr(sp));
      if (key == "@source") table.source_lang = value;
      else if (key == "@target") table.target_lang = value;
      else if (key == "@numerals") table.numeral_randomization = detail::parse_bool(value, context);
      else throw ConfigError(context + ": unknown directive '" + key + "'");
      continue;
    }
    std::vector<std::string> cols;
    {
      std::string cur;
      for (char c : text) {
        if (c == '\t') {
          cols.push_back(cur);
          cur.clear();
        } else {
          cur.push_back(c);
        }
      }
      cols.push_back(cur);
    }
    if (cols.size() != 3) {
      throw ConfigError(context + ": expected 3 tab-separated columns, got " +
                        std::to_string(cols.size()));
    }
    MappingRule rule;
    rule.source = detail::parse_codepoint(detail::trim(cols[0]), context);
    rule.position = detail::parse_position(detail::trim(cols[1]), context);
    for (const auto& t : detail::split_list(cols[2], ';')) {
      rule.targets.push_back(detail::parse_target_sequence(t, context));
    }
    if (rule.targets.empty()) throw ConfigError(context + ": rule needs at least one target");
    if (!seen.insert({rule.source, rule.position}).second) {
      throw ConfigError(context + ": duplicate rule for " + codepoint_name(rule.source) +
                        " at position " + to_string(rule.position));
    }
    table.rules.push_back(std::move(rule));
  }
  if (table.source_lang.empty() || table.target_lang.empty()) {
    throw ConfigError(name + ": missing @source/@target directives");
  }
  return table;
}

inline MappingTable load_mapping(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot open mapping file " + file.string());
  return parse_mapping(in, file.filename().string());
}

/// Loads a mapping table and checks it against the profile set: both
/// languages must have profiles and the target must be one of the source
/// language's dominant languages.
inline MappingTable load_mapping(const std::filesystem::path& file, const ProfileSet& profiles) {
  MappingTable table = load_mapping(file);
  if (!profiles.contains(table.source_lang)) {
    throw ConfigError(file.string() + ": unknown source language '" + table.source_lang + "'");
  }
  if (!profiles.contains(table.target_lang)) {
    throw ConfigError(file.string() + ": unknown target language '" + table.target_lang + "'");
  }
  const auto& src = profiles.get(table.source_lang);
  bool dominant = false;
  for (const auto& d : src.dominant_langs) dominant = dominant || d == table.target_lang;
  if (!dominant) {
    throw ConfigError(file.string() + ": '" + table.target_lang + "' is not a dominant language of '" +
                      table.source_lang + "'");
  }
  return table;
}

/// Checks rule targets against the target inventory and reports source
/// letters that exist only in the source script yet have no rule.
inline MappingValidationReport validate_table(const MappingTable& table,
                                              const ProfileSet& profiles) {
  const auto& src = profiles.get(table.source_lang);
  const auto& dst = profiles.get(table.target_lang);
  MappingValidationReport report;

  std::set<char32_t> ruled;
  for (std::size_t i = 0; i < table.rules.size(); ++i) {
    ruled.insert(table.rules[i].source);
    for (const auto& t : table.rules[i].targets) {
      for (char32_t cp : t) {
        if (!dst.in_inventory(cp)) report.foreign_targets.emplace_back(i, cp);
      }
    }
  }
  for (char32_t cp : src.inventory) {
    if (!is_arabic_letter(cp)) continue;       // only letters need mapping
    if (dst.in_inventory(cp)) continue;        // shared grapheme: implicit identity
    if (ruled.count(cp) == 0) report.coverage_gaps.push_back(cp);
  }
  return report;
}

/// A sentence index with the substitution rules applicable there.
struct SubstitutablePosition {
  std::size_t index = 0;  // codepoint index into the sentence text
  std::vector<const MappingRule*> rules;
};

namespace detail {

inline bool position_matches(RulePosition rp, bool initial, bool final_) {
  switch (rp) {
    case RulePosition::kAny: return true;
    case RulePosition::kWordInitial: return initial;
    case RulePosition::kWordFinal: return final_;
    case RulePosition::kWordMedial: return !initial && !final_;
  }
  return false;
}

}  // namespace detail

/// Indices (ascending) of sentence codepoints with at least one applicable
/// substitution rule. Identity-only rules are not substitution
/// opportunities.
inline std::vector<SubstitutablePosition> substitutable_positions(const std::u32string& cps,
                                                                  const MappingTable& table) {
  std::vector<SubstitutablePosition> out;
  // rule lookup by source codepoint
  std::multimap<char32_t, const MappingRule*> by_source;
  for (const auto& r : table.rules) {
    if (r.offers_substitution()) by_source.emplace(r.source, &r);
  }
  if (by_source.empty()) return out;

  const std::size_t n = cps.size();
  std::size_t i = 0;
  while (i < n) {
    if (is_space(cps[i])) {
      ++i;
      continue;
    }
    std::size_t end = i;
    while (end < n && !is_space(cps[end])) ++end;
    for (std::size_t k = i; k < end; ++k) {
      const bool initial = (k == i);
      const bool final_ = (k + 1 == end);
      auto [lo, hi] = by_source.equal_range(cps[k]);
      SubstitutablePosition pos;
      for (auto it = lo; it != hi; ++it) {
        if (detail::position_matches(it->second->position, initial, final_)) {
          pos.rules.push_back(it->second);
        }
      }
      if (!pos.rules.empty()) {
        pos.index = k;
        out.push_back(std::move(pos));
      }
    }
    i = end;
  }
  return out;
}

inline std::vector<SubstitutablePosition> substitutable_positions(const Sentence& s,
                                                                  const MappingTable& table) {
  return substitutable_positions(decode_utf8(s.text), table);
}

/// Writes a table back out in the TSV mapping format.
inline void write_mapping_tsv(const MappingTable& table, const std::filesystem::path& file) {
  std::ofstream out(file);
  if (!out) throw ConfigError("cannot write mapping file " + file.string());
  out << "@source\t" << table.source_lang << '\n';
  out << "@target\t" << table.target_lang << '\n';
  out << "@numerals\t" << (table.numeral_randomization ? "true" : "false") << '\n';
  for (const auto& rule : table.rules) {
    out << codepoint_name(rule.source) << '\t' << to_string(rule.position) << '\t';
    for (std::size_t i = 0; i < rule.targets.size(); ++i) {
      if (i != 0) out << ';';
      const auto& t = rule.targets[i];
      if (t.empty()) {
        out << '-';
      } else {
        for (std::size_t j = 0; j < t.size(); ++j) {
          if (j != 0) out << ' ';
          out << codepoint_name(t[j]);
        }
      }
    }
    out << '\n';
  }
}

/// Maps an ASCII digit to the Arabic-Indic or Extended Arabic-Indic digit
/// of equal value, picking the block uniformly at random.
inline char32_t map_numeral(char32_t ch, Rng& rng) {
  if (!is_ascii_digit(ch)) {
    throw std::invalid_argument("map_numeral: '" + codepoint_name(ch) + "' is not an ASCII digit");
  }
  const char32_t base = rng.next_bool() ? char32_t{0x06F0} : char32_t{0x0660};
  return base + (ch - U'0');
}

}  // namespace scriptlid

#endif  // SCRIPTLID_SCRIPTMAP_HPP

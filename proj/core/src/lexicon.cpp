// Copyright 2026 The syneval Authors.
//
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

#include "syneval/lexicon.hpp"

#include <fstream>
#include <set>
#include <tuple>

#include "syneval/error.hpp"

namespace syneval {

namespace {

[[noreturn]] void invalid(const std::string& message) {
  throw Error(ErrorKind::kInvalidLexicon, "invalid lexicon: " + message);
}

}  // namespace

Lexicon::Lexicon(
    std::vector<Token> entries,
    std::map<std::string, std::pair<std::string, std::string>> verb_pairs,
    ReflexivePairs reflexive_pairs)
    : entries_(std::move(entries)),
      verb_pairs_(std::move(verb_pairs)),
      reflexive_pairs_(std::move(reflexive_pairs)) {
  std::set<std::tuple<std::string, Pos, Number>> seen;
  // lemma -> which numbers occur among VERB entries
  std::map<std::string, std::pair<bool, bool>> verb_numbers;
  for (const auto& t : entries_) {
    if (auto problem = validate_token(t)) invalid(*problem);
    if (!seen.emplace(t.surface, t.pos, t.number).second) {
      invalid("duplicate entry '" + t.surface + "' " +
              std::string(to_string(t.pos)) + " " +
              std::string(to_string(t.number)));
    }
    if (t.pos == Pos::kVerb && t.number != Number::kNone) {
      auto& flags = verb_numbers[t.lemma];
      (t.number == Number::kSingular ? flags.first : flags.second) = true;
    }
  }
  for (const auto& [lemma, flags] : verb_numbers) {
    if (flags.first != flags.second) {
      invalid("verb lemma '" + lemma + "' lacks its " +
              (flags.first ? "plural" : "singular") + " form");
    }
  }
  for (const auto& [lemma, forms] : verb_pairs_) {
    const auto sg = find(forms.first);
    const auto pl = find(forms.second);
    if (!sg || !pl) invalid("verb pair for '" + lemma + "' names unknown forms");
  }
}

Lexicon Lexicon::from_json(const nlohmann::json& j) {
  std::vector<Token> entries;
  try {
    for (const auto& e : j.at("entries")) entries.push_back(e.get<Token>());
  } catch (const nlohmann::json::exception& ex) {
    invalid(ex.what());
  } catch (const Error& ex) {
    invalid(ex.what());
  }
  std::map<std::string, std::pair<std::string, std::string>> pairs;
  if (j.contains("verb_pairs")) {
    for (const auto& [lemma, forms] : j.at("verb_pairs").items()) {
      if (!forms.is_array() || forms.size() != 2) {
        invalid("verb_pairs['" + lemma + "'] must be [singular, plural]");
      }
      pairs.emplace(lemma, std::make_pair(forms[0].get<std::string>(),
                                          forms[1].get<std::string>()));
    }
  }
  ReflexivePairs refl;
  if (j.contains("reflexive_pairs")) {
    const auto& r = j.at("reflexive_pairs");
    const auto& sg = r.at("singular");
    if (sg.is_array()) {
      refl.singular = sg.get<std::vector<std::string>>();
    } else {
      refl.singular = {sg.get<std::string>()};
    }
    refl.plural = r.at("plural").get<std::string>();
  }
  return Lexicon(std::move(entries), std::move(pairs), std::move(refl));
}

Lexicon Lexicon::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorKind::kIoFailure,
                "cannot open lexicon file '" + path.string() + "'");
  }
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorKind::kFormat,
                "lexicon file '" + path.string() + "': " + ex.what());
  }
  return from_json(j);
}

std::filesystem::path Lexicon::default_path() {
  return std::filesystem::path(SYNEVAL_DATA_DIR) / "lexicon.json";
}

Lexicon Lexicon::load_default() { return load(default_path()); }

nlohmann::json Lexicon::to_json() const {
  nlohmann::json j;
  j["entries"] = entries_;
  nlohmann::json pairs = nlohmann::json::object();
  for (const auto& [lemma, forms] : verb_pairs_) {
    pairs[lemma] = {forms.first, forms.second};
  }
  j["verb_pairs"] = pairs;
  j["reflexive_pairs"] = {{"singular", reflexive_pairs_.singular},
                          {"plural", reflexive_pairs_.plural}};
  return j;
}

std::vector<const Token*> Lexicon::members(Pos pos, Number number,
                                           std::string_view subcat) const {
  std::vector<const Token*> out;
  for (const auto& t : entries_) {
    if (t.pos == pos && t.number == number &&
        (subcat.empty() || t.subcat == subcat)) {
      out.push_back(&t);
    }
  }
  return out;
}

std::optional<Token> Lexicon::find(std::string_view surface,
                                   std::optional<Pos> pos) const {
  for (const auto& t : entries_) {
    if (t.surface == surface && (!pos || t.pos == *pos)) return t;
  }
  return std::nullopt;
}

std::optional<Token> Lexicon::counterpart(const Token& token) const {
  if (token.number == Number::kNone) return std::nullopt;
  if (token.pos == Pos::kRefl) {
    if (token.number == Number::kSingular) {
      return find(reflexive_pairs_.plural, Pos::kRefl);
    }
    if (reflexive_pairs_.singular.empty()) return std::nullopt;
    return find(reflexive_pairs_.singular.front(), Pos::kRefl);
  }
  if (auto it = verb_pairs_.find(token.lemma);
      it != verb_pairs_.end() &&
      (token.surface == it->second.first || token.surface == it->second.second)) {
    const auto& target = token.number == Number::kSingular ? it->second.second
                                                           : it->second.first;
    return find(target, token.pos);
  }
  const Number want = opposite(token.number);
  for (const auto& t : entries_) {
    if (t.pos == token.pos && t.lemma == token.lemma && t.number == want) {
      return t;
    }
  }
  return std::nullopt;
}

}  // namespace syneval

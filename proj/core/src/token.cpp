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

#include "syneval/token.hpp"

#include <algorithm>
#include <cctype>

#include "syneval/error.hpp"

namespace syneval {

std::string_view to_string(Pos pos) {
  switch (pos) {
    case Pos::kNoun: return "NOUN";
    case Pos::kVerb: return "VERB";
    case Pos::kAux: return "AUX";
    case Pos::kDet: return "DET";
    case Pos::kAdj: return "ADJ";
    case Pos::kPrep: return "PREP";
    case Pos::kRel: return "REL";
    case Pos::kNegDet: return "NEG-DET";
    case Pos::kAdv: return "ADV";
    case Pos::kRefl: return "REFL";
    case Pos::kPropn: return "PROPN";
    case Pos::kPunct: return "PUNCT";
  }
  return "?";
}

std::string_view to_string(Number number) {
  switch (number) {
    case Number::kSingular: return "singular";
    case Number::kPlural: return "plural";
    case Number::kNone: return "none";
  }
  return "?";
}

std::optional<Pos> parse_pos(std::string_view text) {
  for (Pos p : kAllPos) {
    if (to_string(p) == text) return p;
  }
  return std::nullopt;
}

std::optional<Number> parse_number(std::string_view text) {
  if (text == "singular") return Number::kSingular;
  if (text == "plural") return Number::kPlural;
  if (text == "none") return Number::kNone;
  return std::nullopt;
}

Number opposite(Number number) {
  switch (number) {
    case Number::kSingular: return Number::kPlural;
    case Number::kPlural: return Number::kSingular;
    case Number::kNone: return Number::kNone;
  }
  return Number::kNone;
}

bool is_content_pos(Pos pos) {
  return pos == Pos::kNoun || pos == Pos::kVerb || pos == Pos::kAdj ||
         pos == Pos::kAdv || pos == Pos::kPropn;
}

bool can_carry_number(Pos pos) {
  return pos == Pos::kNoun || pos == Pos::kVerb || pos == Pos::kAux ||
         pos == Pos::kRefl || pos == Pos::kDet;
}

Token make_token(std::string surface, std::string lemma, Pos pos,
                 Number number, std::string subcat) {
  Token t;
  t.surface = std::move(surface);
  t.lemma = std::move(lemma);
  t.pos = pos;
  t.number = number;
  t.content = is_content_pos(pos);
  t.subcat = std::move(subcat);
  return t;
}

std::optional<std::string> validate_token(const Token& token) {
  if (token.surface.empty()) return "empty surface";
  const bool has_space =
      std::any_of(token.surface.begin(), token.surface.end(),
                  [](unsigned char c) { return std::isspace(c) != 0; });
  if (has_space) return "surface '" + token.surface + "' contains whitespace";
  if (token.number != Number::kNone && !can_carry_number(token.pos)) {
    return "'" + token.surface + "': " + std::string(to_string(token.pos)) +
           " cannot carry a number feature";
  }
  if (token.content != is_content_pos(token.pos)) {
    return "'" + token.surface + "': content flag disagrees with " +
           std::string(to_string(token.pos));
  }
  return std::nullopt;
}

std::vector<std::string> surfaces(const std::vector<Token>& tokens) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(t.surface);
  return out;
}

std::string join_surfaces(const std::vector<Token>& tokens) {
  std::string out;
  for (const auto& t : tokens) {
    if (!out.empty()) out += ' ';
    out += t.surface;
  }
  return out;
}

void to_json(nlohmann::json& j, const Token& token) {
  j = nlohmann::json{{"surface", token.surface},
                     {"lemma", token.lemma},
                     {"pos", to_string(token.pos)},
                     {"number", to_string(token.number)},
                     {"content", token.content}};
  if (!token.subcat.empty()) j["subcat"] = token.subcat;
}

void from_json(const nlohmann::json& j, Token& token) {
  token.surface = j.at("surface").get<std::string>();
  token.lemma = j.at("lemma").get<std::string>();
  const auto pos_text = j.at("pos").get<std::string>();
  const auto pos = parse_pos(pos_text);
  if (!pos) throw Error(ErrorKind::kFormat, "unknown pos '" + pos_text + "'");
  token.pos = *pos;
  const auto num_text = j.at("number").get<std::string>();
  const auto num = parse_number(num_text);
  if (!num) throw Error(ErrorKind::kFormat, "unknown number '" + num_text + "'");
  token.number = *num;
  token.content = j.at("content").get<bool>();
  token.subcat = j.value("subcat", std::string{});
}

}  // namespace syneval

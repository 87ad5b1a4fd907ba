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

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace syneval {

enum class Pos {
  kNoun,
  kVerb,
  kAux,
  kDet,
  kAdj,
  kPrep,
  kRel,
  kNegDet,
  kAdv,
  kRefl,
  kPropn,
  kPunct,
};

inline constexpr Pos kAllPos[] = {
    Pos::kNoun, Pos::kVerb, Pos::kAux,  Pos::kDet,  Pos::kAdj,   Pos::kPrep,
    Pos::kRel,  Pos::kNegDet, Pos::kAdv, Pos::kRefl, Pos::kPropn, Pos::kPunct};

enum class Number { kSingular, kPlural, kNone };

std::string_view to_string(Pos pos);
std::string_view to_string(Number number);
std::optional<Pos> parse_pos(std::string_view text);
std::optional<Number> parse_number(std::string_view text);

// Singular <-> plural; kNone maps to itself.
Number opposite(Number number);

// Content words are the open classes; everything else is a function word.
bool is_content_pos(Pos pos);

// Parts of speech allowed to carry a number feature.
bool can_carry_number(Pos pos);

struct Token {
  std::string surface;
  std::string lemma;
  Pos pos = Pos::kPunct;
  Number number = Number::kNone;
  bool content = false;
  // Lexicon-internal subcategory used by templates ("animate",
  // "transitive", ...). Empty when unused.
  std::string subcat;

  friend bool operator==(const Token&, const Token&) = default;
};

// Builds a token whose content flag is derived from pos.
Token make_token(std::string surface, std::string lemma, Pos pos,
                 Number number, std::string subcat = {});

// Returns a description of the first violated token invariant, if any.
std::optional<std::string> validate_token(const Token& token);

std::vector<std::string> surfaces(const std::vector<Token>& tokens);
std::string join_surfaces(const std::vector<Token>& tokens);

void to_json(nlohmann::json& j, const Token& token);
void from_json(const nlohmann::json& j, Token& token);

}  // namespace syneval

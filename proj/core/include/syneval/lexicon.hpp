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

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "syneval/token.hpp"

namespace syneval {

// An immutable word list annotated with part of speech and number, plus the
// singular/plural alternations used to build agreement contrasts.
class Lexicon {
 public:
  struct ReflexivePairs {
    std::vector<std::string> singular;
    std::string plural;
  };

  // Throws Error(kInvalidLexicon) when an invariant is violated.
  Lexicon(std::vector<Token> entries,
          std::map<std::string, std::pair<std::string, std::string>> verb_pairs,
          ReflexivePairs reflexive_pairs);

  static Lexicon from_json(const nlohmann::json& j);
  static Lexicon load(const std::filesystem::path& path);
  // The lexicon that ships with the library.
  static Lexicon load_default();
  static std::filesystem::path default_path();

  nlohmann::json to_json() const;

  const std::vector<Token>& entries() const { return entries_; }
  const std::map<std::string, std::pair<std::string, std::string>>& verb_pairs()
      const {
    return verb_pairs_;
  }
  const ReflexivePairs& reflexive_pairs() const { return reflexive_pairs_; }

  // Entries of the given class in lexicon order. An empty subcat matches any.
  std::vector<const Token*> members(Pos pos, Number number,
                                    std::string_view subcat = {}) const;

  // First entry with this surface (and pos, when given).
  std::optional<Token> find(std::string_view surface,
                            std::optional<Pos> pos = std::nullopt) const;

  // The same lemma and pos with the opposite number, e.g. sneezes -> sneeze,
  // himself -> themselves. Empty when no such form exists.
  std::optional<Token> counterpart(const Token& token) const;

 private:
  std::vector<Token> entries_;
  std::map<std::string, std::pair<std::string, std::string>> verb_pairs_;
  ReflexivePairs reflexive_pairs_;
};

}  // namespace syneval

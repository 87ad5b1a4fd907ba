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

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"
#include "syneval/token.hpp"

namespace syneval {

inline constexpr int kSchemaVersion = 1;

enum class Phenomenon {
  kAgreementSimple,
  kAgreementPp,
  kAgreementRc,
  kReflexive,
  kNpi,
};

enum class Intervener { kNone, kPp, kRc };

std::string_view to_string(Phenomenon p);
std::string_view to_string(Intervener i);
std::optional<Phenomenon> parse_phenomenon(std::string_view text);
std::optional<Intervener> parse_intervener(std::string_view text);

// Condition metadata shared by suite instances and minimal pairs.
struct Condition {
  Phenomenon phenomenon = Phenomenon::kAgreementSimple;
  int attractor_count = 0;
  Number head_number = Number::kSingular;
  Intervener intervener = Intervener::kNone;
  std::string template_id;
  // Positions of the subject head and of the critical target in the full
  // sentence. For a SuiteInstance target_index == tokens.size().
  std::optional<std::size_t> head_index;
  std::optional<std::size_t> target_index;

  friend bool operator==(const Condition&, const Condition&) = default;
};

// A number-prediction item: the model sees tokens and must prefer correct
// over incorrect as the next word.
struct SuiteInstance {
  std::vector<Token> tokens;
  Token correct;
  Token incorrect;
  Condition condition;

  friend bool operator==(const SuiteInstance&, const SuiteInstance&) = default;
};

struct MinimalPair {
  std::vector<Token> grammatical;
  std::vector<Token> ungrammatical;
  // Half-open [start, end) region where the members may differ.
  std::size_t span_start = 0;
  std::size_t span_end = 0;
  Condition condition;

  friend bool operator==(const MinimalPair&, const MinimalPair&) = default;
};

using SuiteRecord = std::variant<SuiteInstance, MinimalPair>;

nlohmann::json to_json(const SuiteInstance& instance);
nlohmann::json to_json(const MinimalPair& pair);
SuiteInstance suite_instance_from_json(const nlohmann::json& j);
MinimalPair minimal_pair_from_json(const nlohmann::json& j);

// JSONL: one record per line, each carrying schema_version and a "kind"
// discriminator ("suite_instance" or "minimal_pair").
std::string to_jsonl(const std::vector<SuiteRecord>& records);
std::vector<SuiteRecord> read_suite(const std::filesystem::path& path);
std::vector<SuiteRecord> parse_suite(std::string_view text);

}  // namespace syneval

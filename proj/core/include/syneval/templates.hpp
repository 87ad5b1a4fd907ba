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
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "syneval/suite.hpp"
#include "syneval/token.hpp"

namespace syneval {

enum class SlotRole { kFiller, kHead, kAttractor, kTarget };

// A fixed word, resolved against the lexicon at expansion time.
struct LiteralSlot {
  std::string surface;
  std::optional<Pos> pos;
};

// Any lexicon entry of the given class. An empty subcat matches all.
struct CategorySlot {
  Pos pos;
  Number number;
  SlotRole role = SlotRole::kFiller;
  std::string subcat;
};

// NPI licensor position: the grammatical member puts "no" in the matrix
// slot and "the" in the embedded slot; the ungrammatical member swaps them.
struct LicensorSlot {
  bool matrix = true;
};

using Slot = std::variant<LiteralSlot, CategorySlot, LicensorSlot>;

struct Template {
  std::string id;
  Phenomenon phenomenon = Phenomenon::kAgreementSimple;
  Intervener intervener = Intervener::kNone;
  std::vector<Slot> slots = {};
  std::size_t head_slot = 0;
  std::size_t target_slot = 0;
  std::vector<std::size_t> attractor_slots = {};

  int nominal_attractor_count() const {
    return static_cast<int>(attractor_slots.size());
  }
  // Number of the head slot; kNone if the head slot is not a category.
  Number head_number() const;
};

// Throws Error(kInvalidArgument) on a structurally inconsistent template.
void validate_template(const Template& t);

// The registered template inventory, in stable order. Agreement templates
// exist for both head numbers; see templates.cpp for the sentence shapes.
const std::vector<Template>& builtin_templates();
std::optional<Template> find_template(const std::string& id);

}  // namespace syneval

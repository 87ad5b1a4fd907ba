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

#include "syneval/templates.hpp"

#include <algorithm>

#include "syneval/error.hpp"

namespace syneval {

Number Template::head_number() const {
  if (head_slot >= slots.size()) return Number::kNone;
  if (const auto* c = std::get_if<CategorySlot>(&slots[head_slot])) {
    return c->number;
  }
  return Number::kNone;
}

void validate_template(const Template& t) {
  auto fail = [&](const std::string& what) {
    throw Error(ErrorKind::kInvalidArgument,
                "template '" + t.id + "': " + what);
  };
  if (t.slots.empty()) fail("no slots");
  if (t.head_slot >= t.target_slot) fail("head_slot must precede target_slot");
  if (t.target_slot >= t.slots.size()) fail("target_slot out of range");
  for (auto a : t.attractor_slots) {
    if (a <= t.head_slot || a >= t.target_slot) {
      fail("attractor slot " + std::to_string(a) +
           " is not strictly between head and target");
    }
  }
  const auto* head = std::get_if<CategorySlot>(&t.slots[t.head_slot]);
  if (head != nullptr &&
      (head->pos != Pos::kNoun || head->number == Number::kNone)) {
    fail("head slot must be a numbered NOUN");
  }
  std::size_t licensors = 0;
  for (const auto& s : t.slots) {
    if (std::holds_alternative<LicensorSlot>(s)) ++licensors;
  }
  if (t.phenomenon == Phenomenon::kNpi && licensors != 2) {
    fail("npi templates need exactly two licensor slots");
  }
  if (t.phenomenon != Phenomenon::kNpi && licensors != 0) {
    fail("licensor slots are only meaningful for npi templates");
  }
}

namespace {

Slot lit(std::string surface) { return LiteralSlot{std::move(surface), {}}; }
Slot lit(std::string surface, Pos pos) {
  return LiteralSlot{std::move(surface), pos};
}
Slot cat(Pos pos, Number number, SlotRole role = SlotRole::kFiller,
         std::string subcat = {}) {
  return CategorySlot{pos, number, role, std::move(subcat)};
}

std::string suffix(Number n) { return n == Number::kSingular ? "sg" : "pl"; }

// Appends a slot and returns its index.
std::size_t push(Template& t, Slot s) {
  t.slots.push_back(std::move(s));
  return t.slots.size() - 1;
}

// the H V .
Template simple(Number h) {
  Template t{.id = "agr_simple_" + suffix(h),
             .phenomenon = Phenomenon::kAgreementSimple};
  push(t, lit("the"));
  t.head_slot = push(t, cat(Pos::kNoun, h, SlotRole::kHead, "animate"));
  t.target_slot =
      push(t, cat(Pos::kVerb, h, SlotRole::kTarget, "intransitive"));
  push(t, lit("."));
  return t;
}

// the ADJ H V .   ("the black cat sneezes")
Template simple_adj(Number h) {
  Template t{.id = "agr_adj_" + suffix(h),
             .phenomenon = Phenomenon::kAgreementSimple};
  push(t, lit("the"));
  push(t, cat(Pos::kAdj, Number::kNone));
  t.head_slot = push(t, cat(Pos::kNoun, h, SlotRole::kHead, "animate"));
  t.target_slot =
      push(t, cat(Pos::kVerb, h, SlotRole::kTarget, "intransitive"));
  push(t, lit("."));
  return t;
}

// the H (PREP the A)^k V .
Template stacked_pp(Number h, int k) {
  Template t{.id = "agr_pp" + std::to_string(k) + "_" + suffix(h),
             .phenomenon = Phenomenon::kAgreementPp,
             .intervener = Intervener::kPp};
  push(t, lit("the"));
  t.head_slot = push(t, cat(Pos::kNoun, h, SlotRole::kHead, "animate"));
  for (int i = 0; i < k; ++i) {
    push(t, cat(Pos::kPrep, Number::kNone));
    push(t, lit("the"));
    t.attractor_slots.push_back(
        push(t, cat(Pos::kNoun, opposite(h), SlotRole::kAttractor)));
  }
  t.target_slot =
      push(t, cat(Pos::kVerb, h, SlotRole::kTarget, "intransitive"));
  push(t, lit("."));
  return t;
}

// the H PREP the ADJ A V .   ("the demo tape from the popular rock singers")
Template pp_adj(Number h) {
  Template t{.id = "agr_pp_adj_" + suffix(h),
             .phenomenon = Phenomenon::kAgreementPp,
             .intervener = Intervener::kPp};
  push(t, lit("the"));
  t.head_slot = push(t, cat(Pos::kNoun, h, SlotRole::kHead, "animate"));
  push(t, cat(Pos::kPrep, Number::kNone));
  push(t, lit("the"));
  push(t, cat(Pos::kAdj, Number::kNone));
  t.attractor_slots.push_back(
      push(t, cat(Pos::kNoun, opposite(h), SlotRole::kAttractor)));
  t.target_slot =
      push(t, cat(Pos::kVerb, h, SlotRole::kTarget, "intransitive"));
  push(t, lit("."));
  return t;
}

// the H that the A (PREP the A)^(k-1) Vt V .
// ("the farmer that the parents love swims")
Template object_rc(Number h, int k) {
  Template t{.id = "agr_orc" + std::to_string(k) + "_" + suffix(h),
             .phenomenon = Phenomenon::kAgreementRc,
             .intervener = Intervener::kRc};
  const Number o = opposite(h);
  push(t, lit("the"));
  t.head_slot = push(t, cat(Pos::kNoun, h, SlotRole::kHead, "animate"));
  push(t, lit("that", Pos::kRel));
  push(t, lit("the"));
  t.attractor_slots.push_back(
      push(t, cat(Pos::kNoun, o, SlotRole::kAttractor, "animate")));
  for (int i = 1; i < k; ++i) {
    push(t, cat(Pos::kPrep, Number::kNone));
    push(t, lit("the"));
    t.attractor_slots.push_back(
        push(t, cat(Pos::kNoun, o, SlotRole::kAttractor)));
  }
  push(t, cat(Pos::kVerb, o, SlotRole::kFiller, "transitive"));
  t.target_slot =
      push(t, cat(Pos::kVerb, h, SlotRole::kTarget, "intransitive"));
  push(t, lit("."));
  return t;
}

// the H that Vpast the A V .   ("the demo tape that promoted the rock singers")
Template subject_rc(Number h) {
  Template t{.id = "agr_src_" + suffix(h),
             .phenomenon = Phenomenon::kAgreementRc,
             .intervener = Intervener::kRc};
  push(t, lit("the"));
  t.head_slot = push(t, cat(Pos::kNoun, h, SlotRole::kHead, "animate"));
  push(t, lit("that", Pos::kRel));
  push(t, cat(Pos::kVerb, Number::kNone, SlotRole::kFiller, "past"));
  push(t, lit("the"));
  t.attractor_slots.push_back(
      push(t, cat(Pos::kNoun, opposite(h), SlotRole::kAttractor)));
  t.target_slot =
      push(t, cat(Pos::kVerb, h, SlotRole::kTarget, "intransitive"));
  push(t, lit("."));
  return t;
}

// the H that the A Vt Vpast REFL .
// ("the manager that the architects like doubted himself")
Template reflexive(Number h) {
  Template t{.id = "refl_orc_" + suffix(h),
             .phenomenon = Phenomenon::kReflexive,
             .intervener = Intervener::kRc};
  const Number o = opposite(h);
  push(t, lit("the"));
  t.head_slot = push(t, cat(Pos::kNoun, h, SlotRole::kHead, "animate"));
  push(t, lit("that", Pos::kRel));
  push(t, lit("the"));
  t.attractor_slots.push_back(
      push(t, cat(Pos::kNoun, o, SlotRole::kAttractor, "animate")));
  push(t, cat(Pos::kVerb, o, SlotRole::kFiller, "transitive"));
  push(t, cat(Pos::kVerb, Number::kNone, SlotRole::kFiller, "past"));
  t.target_slot = push(t, cat(Pos::kRefl, h, SlotRole::kTarget));
  push(t, lit("."));
  return t;
}

// L H that L A Vt has/have ever been ADJ .
// ("no authors that the security guards like have ever been famous")
Template npi(Number h) {
  Template t{.id = "npi_orc_" + suffix(h),
             .phenomenon = Phenomenon::kNpi,
             .intervener = Intervener::kRc};
  const Number o = opposite(h);
  push(t, LicensorSlot{true});
  t.head_slot = push(t, cat(Pos::kNoun, h, SlotRole::kHead, "animate"));
  push(t, lit("that", Pos::kRel));
  push(t, LicensorSlot{false});
  t.attractor_slots.push_back(
      push(t, cat(Pos::kNoun, o, SlotRole::kAttractor, "animate")));
  push(t, cat(Pos::kVerb, o, SlotRole::kFiller, "transitive"));
  push(t, lit(h == Number::kSingular ? "has" : "have", Pos::kAux));
  t.target_slot = push(t, lit("ever", Pos::kAdv));
  push(t, lit("been", Pos::kAux));
  push(t, cat(Pos::kAdj, Number::kNone));
  push(t, lit("."));
  return t;
}

std::vector<Template> make_builtin() {
  std::vector<Template> out;
  for (Number h : {Number::kSingular, Number::kPlural}) {
    out.push_back(simple(h));
    out.push_back(simple_adj(h));
    for (int k = 1; k <= 4; ++k) out.push_back(stacked_pp(h, k));
    out.push_back(pp_adj(h));
    for (int k = 1; k <= 4; ++k) out.push_back(object_rc(h, k));
    out.push_back(subject_rc(h));
    out.push_back(reflexive(h));
    out.push_back(npi(h));
  }
  for (const auto& t : out) validate_template(t);
  return out;
}

}  // namespace

const std::vector<Template>& builtin_templates() {
  static const std::vector<Template> templates = make_builtin();
  return templates;
}

std::optional<Template> find_template(const std::string& id) {
  const auto& all = builtin_templates();
  auto it = std::find_if(all.begin(), all.end(),
                         [&](const Template& t) { return t.id == id; });
  if (it == all.end()) return std::nullopt;
  return *it;
}

}  // namespace syneval

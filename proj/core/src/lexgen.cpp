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

#include "syneval/lexgen.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <unordered_set>

#include "syneval/error.hpp"
#include "syneval/rng.hpp"

namespace syneval {

namespace {

// Exhaustive enumeration of fillings is used for sampling when the raw
// cross-product is at most this large; rejection sampling otherwise.
constexpr std::uint64_t kEnumerateLimit = 1u << 16;

struct SlotChoices {
  std::vector<Token> tokens;
};

std::string describe_slot(const Template& t, std::size_t index) {
  return "template '" + t.id + "' slot " + std::to_string(index);
}

std::vector<SlotChoices> resolve_slots(const Template& t,
                                       const Lexicon& lexicon) {
  validate_template(t);
  std::vector<SlotChoices> out;
  out.reserve(t.slots.size());
  for (std::size_t i = 0; i < t.slots.size(); ++i) {
    SlotChoices choices;
    const auto& slot = t.slots[i];
    if (const auto* l = std::get_if<LiteralSlot>(&slot)) {
      auto tok = lexicon.find(l->surface, l->pos);
      if (!tok) {
        throw Error(ErrorKind::kEmptyLexicalClass,
                    describe_slot(t, i) + ": literal '" + l->surface +
                        "' is not in the lexicon");
      }
      if (i == t.target_slot && t.phenomenon != Phenomenon::kNpi &&
          !lexicon.counterpart(*tok)) {
        throw Error(ErrorKind::kEmptyLexicalClass,
                    describe_slot(t, i) + ": target '" + l->surface +
                        "' has no opposite-number form");
      }
      choices.tokens.push_back(std::move(*tok));
    } else if (const auto* c = std::get_if<CategorySlot>(&slot)) {
      for (const Token* tok : lexicon.members(c->pos, c->number, c->subcat)) {
        if (c->role == SlotRole::kTarget && !lexicon.counterpart(*tok)) {
          continue;
        }
        choices.tokens.push_back(*tok);
      }
      if (choices.tokens.empty()) {
        throw Error(ErrorKind::kEmptyLexicalClass,
                    describe_slot(t, i) + ": no " +
                        std::string(to_string(c->pos)) + " " +
                        std::string(to_string(c->number)) +
                        (c->subcat.empty() ? "" : " " + c->subcat) +
                        " entries");
      }
    } else {
      const auto* l = std::get_if<LicensorSlot>(&slot);
      auto tok = lexicon.find(l->matrix ? "no" : "the",
                              l->matrix ? Pos::kNegDet : Pos::kDet);
      if (!tok) {
        throw Error(ErrorKind::kEmptyLexicalClass,
                    describe_slot(t, i) + ": licensor words missing");
      }
      choices.tokens.push_back(std::move(*tok));
    }
    out.push_back(std::move(choices));
  }
  return out;
}

std::uint64_t product_of(const std::vector<SlotChoices>& slots) {
  std::uint64_t product = 1;
  for (const auto& s : slots) {
    const std::uint64_t n = s.tokens.size();
    if (product > std::numeric_limits<std::uint64_t>::max() / 4 / n) {
      throw Error(ErrorKind::kInvalidArgument,
                  "template cross-product exceeds 2^62 fillings");
    }
    product *= n;
  }
  return product;
}

// Mixed-radix decode with the last slot varying fastest.
std::vector<std::size_t> decode(std::uint64_t index,
                                const std::vector<SlotChoices>& slots) {
  std::vector<std::size_t> digits(slots.size());
  for (std::size_t i = slots.size(); i-- > 0;) {
    const std::uint64_t n = slots[i].tokens.size();
    digits[i] = static_cast<std::size_t>(index % n);
    index /= n;
  }
  return digits;
}

bool distinct_noun_lemmas(const Template& t,
                          const std::vector<SlotChoices>& slots,
                          const std::vector<std::size_t>& digits) {
  std::vector<const std::string*> lemmas;
  auto add = [&](std::size_t slot) {
    if (!std::holds_alternative<CategorySlot>(t.slots[slot])) return true;
    const std::string& lemma = slots[slot].tokens[digits[slot]].lemma;
    for (const auto* seen : lemmas) {
      if (*seen == lemma) return false;
    }
    lemmas.push_back(&lemma);
    return true;
  };
  if (!add(t.head_slot)) return false;
  for (auto a : t.attractor_slots) {
    if (!add(a)) return false;
  }
  return true;
}

ExpandedItem build_item(const Template& t, const Lexicon& lexicon,
                        const std::vector<SlotChoices>& slots,
                        const std::vector<std::size_t>& digits) {
  ExpandedItem item;
  auto& pair = item.pair;
  pair.grammatical.reserve(slots.size());
  for (std::size_t i = 0; i < slots.size(); ++i) {
    pair.grammatical.push_back(slots[i].tokens[digits[i]]);
  }
  pair.ungrammatical = pair.grammatical;

  Condition& c = pair.condition;
  c.phenomenon = t.phenomenon;
  c.intervener = t.intervener;
  c.template_id = t.id;
  c.head_index = t.head_slot;
  c.target_index = t.target_slot;
  c.head_number = pair.grammatical[t.head_slot].number;
  c.attractor_count =
      count_attractors(pair.grammatical, t.head_slot, t.target_slot);

  if (t.phenomenon == Phenomenon::kNpi) {
    std::size_t first = slots.size();
    std::size_t last = 0;
    for (std::size_t i = 0; i < t.slots.size(); ++i) {
      const auto* l = std::get_if<LicensorSlot>(&t.slots[i]);
      if (l == nullptr) continue;
      // The ungrammatical member carries the other licensor's word.
      const auto other = lexicon.find(l->matrix ? "the" : "no",
                                      l->matrix ? Pos::kDet : Pos::kNegDet);
      pair.ungrammatical[i] = *other;
      first = std::min(first, i);
      last = std::max(last, i);
    }
    pair.span_start = first;
    pair.span_end = last + 1;
    return item;
  }

  const Token& correct = pair.grammatical[t.target_slot];
  const Token incorrect = *lexicon.counterpart(correct);
  pair.ungrammatical[t.target_slot] = incorrect;
  pair.span_start = t.target_slot;
  pair.span_end = t.target_slot + 1;

  SuiteInstance instance;
  instance.tokens.assign(pair.grammatical.begin(),
                         pair.grammatical.begin() +
                             static_cast<std::ptrdiff_t>(t.target_slot));
  instance.correct = correct;
  instance.incorrect = incorrect;
  instance.condition = c;
  item.instance = std::move(instance);
  return item;
}

}  // namespace

std::uint64_t cross_product_size(const Template& t, const Lexicon& lexicon) {
  return product_of(resolve_slots(t, lexicon));
}

std::vector<ExpandedItem> expand_template(const Template& t,
                                          const Lexicon& lexicon,
                                          const ExpandMode& mode) {
  const auto slots = resolve_slots(t, lexicon);
  const std::uint64_t product = product_of(slots);
  std::vector<ExpandedItem> out;

  auto valid_index = [&](std::uint64_t index,
                         std::vector<std::size_t>& digits) {
    digits = decode(index, slots);
    return distinct_noun_lemmas(t, slots, digits);
  };

  if (std::holds_alternative<Exhaustive>(mode)) {
    std::vector<std::size_t> digits;
    for (std::uint64_t i = 0; i < product; ++i) {
      if (valid_index(i, digits)) {
        out.push_back(build_item(t, lexicon, slots, digits));
      }
    }
    return out;
  }

  const auto& sampled = std::get<Sampled>(mode);
  if (sampled.n == 0) {
    throw Error(ErrorKind::kInvalidArgument, "sample size must be >= 1");
  }
  if (sampled.n > product) {
    throw Error(ErrorKind::kSampleTooLarge,
                "template '" + t.id + "': requested " +
                    std::to_string(sampled.n) + " fillings but only " +
                    std::to_string(product) + " exist");
  }
  SplitMix64 rng(sampled.seed);
  std::vector<std::size_t> digits;

  if (product <= kEnumerateLimit) {
    std::vector<std::uint64_t> valid;
    for (std::uint64_t i = 0; i < product; ++i) {
      if (valid_index(i, digits)) valid.push_back(i);
    }
    if (sampled.n > valid.size()) {
      throw Error(ErrorKind::kSampleTooLarge,
                  "template '" + t.id + "': requested " +
                      std::to_string(sampled.n) + " fillings but only " +
                      std::to_string(valid.size()) + " are admissible");
    }
    // Partial Fisher-Yates: the first n positions become the sample.
    for (std::size_t i = 0; i < sampled.n; ++i) {
      const auto j = i + static_cast<std::size_t>(
                             rng.uniform_below(valid.size() - i));
      std::swap(valid[i], valid[j]);
      digits = decode(valid[i], slots);
      out.push_back(build_item(t, lexicon, slots, digits));
    }
    return out;
  }

  std::unordered_set<std::uint64_t> seen;
  const std::size_t max_attempts = 64 * sampled.n + 4096;
  std::size_t attempts = 0;
  while (out.size() < sampled.n) {
    if (++attempts > max_attempts) {
      throw Error(ErrorKind::kSampleTooLarge,
                  "template '" + t.id + "': could not draw " +
                      std::to_string(sampled.n) + " distinct fillings");
    }
    const std::uint64_t index = rng.uniform_below(product);
    if (seen.count(index) != 0 || !valid_index(index, digits)) continue;
    seen.insert(index);
    out.push_back(build_item(t, lexicon, slots, digits));
  }
  return out;
}

std::vector<SuiteInstance> generate_agreement_suite(
    const Lexicon& lexicon, const AgreementSuiteConfig& config,
    const std::vector<Template>& templates) {
  if (config.per_cell == 0) {
    throw Error(ErrorKind::kInvalidArgument, "per_cell must be >= 1");
  }
  std::vector<SuiteInstance> suite;
  for (int count : config.attractor_counts) {
    if (count < 0 || count > 4) {
      throw Error(ErrorKind::kInvalidArgument,
                  "attractor counts must lie in 0..4, got " +
                      std::to_string(count));
    }
    const std::vector<Intervener> interveners =
        count == 0 ? std::vector<Intervener>{Intervener::kNone}
                   : std::vector<Intervener>{Intervener::kPp, Intervener::kRc};
    for (Number head : {Number::kSingular, Number::kPlural}) {
      for (Intervener iv : interveners) {
        std::vector<const Template*> cell;
        for (const auto& t : templates) {
          const bool agreement = t.phenomenon == Phenomenon::kAgreementSimple ||
                                 t.phenomenon == Phenomenon::kAgreementPp ||
                                 t.phenomenon == Phenomenon::kAgreementRc;
          if (agreement && t.intervener == iv &&
              t.nominal_attractor_count() == count && t.head_number() == head) {
            cell.push_back(&t);
          }
        }
        if (cell.empty()) {
          throw Error(ErrorKind::kNoTemplateForCell,
                      "no template for attractors=" + std::to_string(count) +
                          " head=" + std::string(to_string(head)) +
                          " intervener=" + std::string(to_string(iv)));
        }
        const std::size_t base = config.per_cell / cell.size();
        const std::size_t extra = config.per_cell % cell.size();
        for (std::size_t i = 0; i < cell.size(); ++i) {
          const std::size_t quota = base + (i < extra ? 1 : 0);
          if (quota == 0) continue;
          const auto seed = derive_seed(config.seed, "agreement/" + cell[i]->id);
          for (auto& item :
               expand_template(*cell[i], lexicon, Sampled{quota, seed})) {
            suite.push_back(std::move(*item.instance));
          }
        }
      }
    }
  }
  return suite;
}

std::vector<MinimalPair> generate_minimal_pair_suite(
    const Lexicon& lexicon, std::size_t per_template, std::uint64_t seed,
    const std::set<Phenomenon>& phenomena,
    const std::vector<Template>& templates) {
  std::vector<MinimalPair> out;
  for (const auto& t : templates) {
    if (!phenomena.empty() && phenomena.count(t.phenomenon) == 0) continue;
    const auto s = derive_seed(seed, "pairs/" + t.id);
    for (auto& item : expand_template(t, lexicon, Sampled{per_template, s})) {
      out.push_back(std::move(item.pair));
    }
  }
  return out;
}

std::vector<std::vector<std::string>> generate_corpus(
    const Lexicon& lexicon, std::size_t n_sentences, std::uint64_t seed,
    const std::vector<Template>& templates) {
  if (templates.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "no templates to draw from");
  }
  SplitMix64 rng(derive_seed(seed, "corpus/order"));
  std::vector<std::size_t> choice(n_sentences);
  std::vector<std::size_t> quota(templates.size(), 0);
  for (auto& c : choice) {
    c = static_cast<std::size_t>(rng.uniform_below(templates.size()));
    ++quota[c];
  }
  std::vector<std::vector<ExpandedItem>> drawn(templates.size());
  for (std::size_t i = 0; i < templates.size(); ++i) {
    if (quota[i] == 0) continue;
    drawn[i] = expand_template(
        templates[i], lexicon,
        Sampled{quota[i], derive_seed(seed, "corpus/" + templates[i].id)});
  }
  std::vector<std::size_t> cursor(templates.size(), 0);
  std::vector<std::vector<std::string>> corpus;
  corpus.reserve(n_sentences);
  for (auto c : choice) {
    corpus.push_back(surfaces(drawn[c][cursor[c]++].pair.grammatical));
  }
  return corpus;
}

int count_attractors(const std::vector<Token>& tokens, std::size_t head_index,
                     std::size_t target_index) {
  if (head_index >= target_index || target_index > tokens.size()) {
    throw Error(ErrorKind::kInvalidArgument,
                "count_attractors needs head_index < target_index <= length");
  }
  const Token& head = tokens[head_index];
  if (head.pos != Pos::kNoun || head.number == Number::kNone) {
    throw Error(ErrorKind::kHeadNotNoun,
                "head '" + head.surface + "' is not a numbered noun");
  }
  const Number attractor = opposite(head.number);
  int count = 0;
  for (std::size_t i = head_index + 1; i < target_index; ++i) {
    if (tokens[i].pos == Pos::kNoun && tokens[i].number == attractor) ++count;
  }
  return count;
}

std::vector<Token> nonceify(const std::vector<Token>& sentence,
                            const Lexicon& lexicon, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<Token> out;
  out.reserve(sentence.size());
  for (const auto& tok : sentence) {
    if (!tok.content) {
      out.push_back(tok);
      continue;
    }
    std::vector<const Token*> alternatives;
    for (const Token* m : lexicon.members(tok.pos, tok.number)) {
      if (m->surface != tok.surface) alternatives.push_back(m);
    }
    if (alternatives.empty()) {
      throw Error(ErrorKind::kClassTooSmall,
                  "no alternative " + std::string(to_string(tok.pos)) + " " +
                      std::string(to_string(tok.number)) + " for '" +
                      tok.surface + "'");
    }
    out.push_back(*alternatives[rng.uniform_below(alternatives.size())]);
  }
  return out;
}

namespace {

std::string describe(const Token& t) {
  return "'" + t.surface + "' (" + std::string(to_string(t.number)) + ")";
}

AgreementCheck check_target(const Token& head, const Token& correct,
                            const Token& incorrect) {
  if (correct == incorrect) {
    return {false, "malformed: correct and incorrect targets are identical"};
  }
  if (head.number == Number::kNone) {
    return {false, "head " + describe(head) + " carries no number"};
  }
  if (correct.lemma != incorrect.lemma || correct.pos != incorrect.pos) {
    return {false, "malformed: targets " + describe(correct) + " and " +
                       describe(incorrect) + " do not share a lemma"};
  }
  if (correct.number != head.number) {
    return {false, "grammatical target " + describe(correct) +
                       " mismatches head " + describe(head)};
  }
  if (incorrect.number != opposite(head.number)) {
    return {false, "malformed: ungrammatical target " + describe(incorrect) +
                       " does not carry the opposite number"};
  }
  return {true, "number mismatch: " + describe(incorrect) +
                    " disagrees with head " + describe(head)};
}

}  // namespace

AgreementCheck check_agreement(const MinimalPair& pair) {
  const auto& c = pair.condition;
  if (!c.head_index || !c.target_index) {
    throw Error(ErrorKind::kMissingMetadata,
                "minimal pair lacks head_index/target_index");
  }
  const auto& g = pair.grammatical;
  const auto& u = pair.ungrammatical;
  const std::size_t head = *c.head_index;
  const std::size_t target = *c.target_index;
  if (g == u) return {false, "malformed: members are identical"};
  if (g.size() != u.size()) {
    return {false, "malformed: members differ in length"};
  }
  if (head >= target || target >= g.size()) {
    return {false, "malformed: head/target indices out of range"};
  }
  for (std::size_t i = 0; i < g.size(); ++i) {
    if ((i < pair.span_start || i >= pair.span_end) && !(g[i] == u[i])) {
      return {false, "malformed: members differ outside the diverging span"};
    }
  }
  if (c.phenomenon == Phenomenon::kNpi) {
    auto licensed_before_head = [&](const std::vector<Token>& s) {
      for (std::size_t i = 0; i < head; ++i) {
        if (s[i].pos == Pos::kNegDet) return true;
      }
      return false;
    };
    auto embedded_licensor = [&](const std::vector<Token>& s) {
      for (std::size_t i = head + 1; i < target; ++i) {
        if (s[i].pos == Pos::kNegDet) return true;
      }
      return false;
    };
    if (!licensed_before_head(g)) {
      return {false, "grammatical member has no licensor in the matrix subject"};
    }
    if (licensed_before_head(u) || !embedded_licensor(u)) {
      return {false,
              "malformed: ungrammatical member must have its licensor only "
              "inside the relative clause"};
    }
    return {true, "unlicensed '" + g[target].surface +
                      "': the licensor is inside the relative clause"};
  }
  return check_target(g[head], g[target], u[target]);
}

AgreementCheck check_agreement(const SuiteInstance& instance) {
  const auto& c = instance.condition;
  if (!c.head_index) {
    throw Error(ErrorKind::kMissingMetadata, "suite instance lacks head_index");
  }
  if (*c.head_index >= instance.tokens.size()) {
    return {false, "malformed: head_index out of range"};
  }
  return check_target(instance.tokens[*c.head_index], instance.correct,
                      instance.incorrect);
}

}  // namespace syneval

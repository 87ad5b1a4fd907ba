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
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "syneval/lexicon.hpp"
#include "syneval/suite.hpp"
#include "syneval/templates.hpp"

namespace syneval {

struct Exhaustive {};
struct Sampled {
  std::size_t n = 1;
  std::uint64_t seed = 0;
};
using ExpandMode = std::variant<Exhaustive, Sampled>;

// One template filling. NPI fillings have no number-prediction form, so
// instance is empty for them.
struct ExpandedItem {
  MinimalPair pair;
  std::optional<SuiteInstance> instance;
};

// Size of the raw slot cross-product, before the distinct-lemma filter.
std::uint64_t cross_product_size(const Template& t, const Lexicon& lexicon);

// Exhaustive mode enumerates fillings in lexicographic slot order (last
// slot varies fastest). Fillings in which two head/attractor nouns share a
// lemma are skipped. Sampled mode draws n distinct fillings without
// replacement; the draw order is a pure function of the seed.
std::vector<ExpandedItem> expand_template(const Template& t,
                                          const Lexicon& lexicon,
                                          const ExpandMode& mode);

struct AgreementSuiteConfig {
  std::set<int> attractor_counts = {0, 1, 2, 3, 4};
  std::size_t per_cell = 10;
  std::uint64_t seed = 0;
};

// Cells are (attractor_count, head_number, intervener); count 0 only has
// the "none" intervener, counts 1-4 have "pp" and "rc". Each cell receives
// exactly per_cell instances, split round-robin over the templates that
// realize it.
std::vector<SuiteInstance> generate_agreement_suite(
    const Lexicon& lexicon, const AgreementSuiteConfig& config,
    const std::vector<Template>& templates = builtin_templates());

// per_template sampled pairs from every template of the given phenomena
// (all phenomena when the set is empty).
std::vector<MinimalPair> generate_minimal_pair_suite(
    const Lexicon& lexicon, std::size_t per_template, std::uint64_t seed,
    const std::set<Phenomenon>& phenomena = {},
    const std::vector<Template>& templates = builtin_templates());

// Grammatical sentences drawn from the template inventory, for training
// language models. Each sentence picks a template uniformly at random.
std::vector<std::vector<std::string>> generate_corpus(
    const Lexicon& lexicon, std::size_t n_sentences, std::uint64_t seed,
    const std::vector<Template>& templates = builtin_templates());

// Number of NOUN tokens strictly between head_index and target_index whose
// number is opposite to the head's. target_index may equal tokens.size()
// (a prefix that stops right before the target).
int count_attractors(const std::vector<Token>& tokens, std::size_t head_index,
                     std::size_t target_index);

// Replaces every content token by a different lexicon entry with the same
// pos and number, drawn uniformly. Function words are left in place.
std::vector<Token> nonceify(const std::vector<Token>& sentence,
                            const Lexicon& lexicon, std::uint64_t seed);

struct AgreementCheck {
  bool grammatical_valid = false;
  // Why the ungrammatical member is ungrammatical when the grammatical one
  // is valid; otherwise why the record is rejected.
  std::string description;
};

AgreementCheck check_agreement(const MinimalPair& pair);
AgreementCheck check_agreement(const SuiteInstance& instance);

}  // namespace syneval

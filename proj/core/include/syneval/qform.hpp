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
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "syneval/transducer.hpp"

namespace syneval::qform {

// Word classes of the question-formation fragment:
//   Decl -> NP AUX VP "."
//   NP   -> DET N (RC)?
//   RC   -> "that" AUX VP
//   VP   -> V (NP)?
// The verb form after an auxiliary is selected by the auxiliary ("is"
// takes the -ing form, modals the bare form).
struct FragmentLexicon {
  std::vector<std::string> determiners = {"my", "your", "our"};
  std::vector<std::string> nouns = {"walrus", "newt", "yak", "raven"};
  std::vector<std::string> auxiliaries = {"can", "will", "is"};
  // (bare, -ing) forms.
  std::vector<std::pair<std::string, std::string>> intransitive = {
      {"giggle", "giggling"}, {"eat", "eating"}, {"swim", "swimming"}};
  std::vector<std::pair<std::string, std::string>> transitive = {
      {"see", "seeing"}, {"amuse", "amusing"}};
  std::vector<std::string> progressive_auxiliaries = {"is"};

  static FragmentLexicon from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

struct FragmentConfig {
  FragmentLexicon lexicon;
  // Maximum relative-clause nesting depth (0 = no relative clauses).
  int max_rc_depth = 1;
  // Whether object noun phrases may carry relative clauses.
  bool object_rc = false;
  bool exhaustive = true;
  // Sampled mode: number of distinct sentences and the seed.
  std::size_t sample_size = 1000;
  std::uint64_t seed = 0;
};

struct FragmentSentence {
  std::vector<std::string> tokens;
  // Bracketed constituent structure, e.g.
  // (S (NP (DET my) (N walrus)) (AUX can) (VP (V giggle)) (PUNCT .))
  std::string parse;
  std::size_t main_aux_index = 0;
  std::size_t first_aux_index = 0;
  bool has_presubject_rc_aux = false;

  friend bool operator==(const FragmentSentence&, const FragmentSentence&) = default;
};

struct TransformPair {
  FragmentSentence declarative;
  std::vector<std::string> question;
  bool disambiguating = false;
};

// Exhaustive mode enumerates every sentence of the fragment within the
// depth bound in a fixed order; sampled mode returns sample_size distinct
// sentences chosen by the seed.
std::vector<FragmentSentence> generate_fragment(const FragmentConfig& config);

// Closed-form number of sentences exhaustive generation yields.
std::uint64_t fragment_size(const FragmentConfig& config);

// Reconstructs aux positions and the flag from a bracketed parse.
FragmentSentence parse_fragment(std::string_view bracketed);

// Front the first auxiliary / the main-clause auxiliary; "." becomes "?".
std::vector<std::string> linear_rule(const FragmentSentence& s);
std::vector<std::string> structural_rule(const FragmentSentence& s);

enum class Category { kStructural, kLinear, kBoth, kOther };
std::string_view to_string(Category c);

Category classify_output(const FragmentSentence& s,
                         const std::vector<std::string>& output);

// Which auxiliary the output starts with: "main-aux", "first-aux",
// "either" (both auxiliaries are the same word) or "neither". Coarser than
// classify_output; it still separates the hypotheses when the rest of the
// output is garbled.
std::string first_word(const FragmentSentence& s,
                       const std::vector<std::string>& output);

struct Dataset {
  std::vector<TransformPair> train;
  std::vector<TransformPair> test_ambiguous;
  std::vector<TransformPair> test_disambiguating;
};

TransformPair make_pair(const FragmentSentence& s);

// Targets come from structural_rule. With withholding, every disambiguating
// sentence goes to test_disambiguating and the ambiguous ones are split
// between train and test_ambiguous; without it, all sentences are split and
// the test part is divided by flag. test_fraction of the split pool goes to
// test.
Dataset build_dataset(const std::vector<FragmentSentence>& sentences,
                      bool withhold_disambiguating, std::uint64_t split_seed,
                      double test_fraction = 0.2);

nlohmann::json to_json(const TransformPair& pair);
TransformPair transform_pair_from_json(const nlohmann::json& j);
std::string to_jsonl(const std::vector<TransformPair>& pairs);
std::vector<TransformPair> read_pairs(const std::filesystem::path& path);

// Anything that turns a declarative into a question.
class Transducer {
 public:
  virtual ~Transducer() = default;
  virtual std::string identifier() const = 0;
  virtual std::vector<std::string> transduce(const FragmentSentence& s) const = 0;
};

class LinearRuleTransducer final : public Transducer {
 public:
  std::string identifier() const override { return "linear-rule"; }
  std::vector<std::string> transduce(const FragmentSentence& s) const override {
    return linear_rule(s);
  }
};

class StructuralRuleTransducer final : public Transducer {
 public:
  std::string identifier() const override { return "structural-rule"; }
  std::vector<std::string> transduce(const FragmentSentence& s) const override {
    return structural_rule(s);
  }
};

// Adapts a trained encoder-decoder; only the surface tokens are used.
class NeuralTransducer final : public Transducer {
 public:
  explicit NeuralTransducer(const TransducerModel& model) : model_(model) {}
  std::string identifier() const override { return model_.identifier(); }
  std::vector<std::string> transduce(const FragmentSentence& s) const override {
    return model_.transduce(s.tokens);
  }

 private:
  const TransducerModel& model_;
};

struct SetReport {
  std::string name;
  std::size_t n_items = 0;
  std::map<Category, std::size_t> counts;
  std::map<std::string, std::size_t> first_word;
  // Output equals the structural (correct) question.
  std::size_t exact_match = 0;

  double fraction(Category c) const;
  double accuracy() const;
};

struct GeneralizationReport {
  std::string model;
  std::vector<SetReport> sets;
};

GeneralizationReport evaluate_transducer(
    const Transducer& model,
    const std::vector<std::pair<std::string, std::vector<TransformPair>>>& sets);

nlohmann::json to_json(const GeneralizationReport& report);

// Training on dataset pairs: declarative tokens -> question tokens.
TransducerTraining train_transducer(const std::vector<TransformPair>& pairs,
                                    const TransducerOptions& options,
                                    std::uint64_t seed);

}  // namespace syneval::qform

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
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "json.hpp"
#include "syneval/language_model.hpp"
#include "syneval/lexicon.hpp"
#include "syneval/suite.hpp"

namespace syneval {

inline constexpr std::string_view kDefaultTimestamp = "1970-01-01T00:00:00Z";

struct CellKey {
  Phenomenon phenomenon = Phenomenon::kAgreementSimple;
  int attractor_count = 0;
  Number head_number = Number::kSingular;
  Intervener intervener = Intervener::kNone;

  friend auto operator<=>(const CellKey&, const CellKey&) = default;
};

CellKey cell_key(const Condition& c);

struct CellRecord {
  CellKey key;
  std::size_t n_items = 0;
  std::size_t n_correct = 0;
  std::size_t n_ties = 0;

  double accuracy() const;
};

// Per-item outcome, in suite order. For number prediction the scores are the
// two conditional probabilities; for minimal pairs the two log2 sentence
// probabilities.
struct ItemResult {
  bool correct = false;
  bool tie = false;
  double score_good = 0.0;
  double score_bad = 0.0;
};

struct EvaluationReport {
  std::string model;
  std::string suite;
  std::string protocol;
  std::vector<CellRecord> cells;  // sorted by key
  std::vector<ItemResult> items;
  std::size_t tie_count = 0;
  // Words mapped to <unk> while encoding the suite.
  std::size_t unk_count = 0;
  std::string timestamp = std::string(kDefaultTimestamp);
  int schema_version = kSchemaVersion;

  std::size_t n_items() const;
  std::size_t n_correct() const;
  double overall_accuracy() const;
};

struct EvalOptions {
  std::string suite_id;
  std::string timestamp = std::string(kDefaultTimestamp);
};

// Correct iff P(correct | prefix) > P(incorrect | prefix); ties are errors.
EvaluationReport number_prediction(const LanguageModel& model,
                                   const std::vector<SuiteInstance>& instances,
                                   const EvalOptions& options = {});

// Correct iff log P(grammatical) > log P(ungrammatical); ties are errors.
EvaluationReport minimal_pair_score(const LanguageModel& model,
                                    const std::vector<MinimalPair>& pairs,
                                    const EvalOptions& options = {});

// Instances by number prediction, pairs by full-sentence comparison.
EvaluationReport evaluate_suite(const LanguageModel& model,
                                const std::vector<SuiteRecord>& records,
                                const EvalOptions& options = {});

nlohmann::json to_json(const EvaluationReport& report, bool include_items = false);
EvaluationReport evaluation_report_from_json(const nlohmann::json& j);
// One row per cell with a header line.
std::string to_tsv(const EvaluationReport& report);

struct AsymmetryRates {
  double singular_head_error_rate = 0.0;
  double plural_head_error_rate = 0.0;
  double pp_error_rate = 0.0;
  double rc_error_rate = 0.0;
};

// Item-weighted error rates; throws MissingStratum unless the report has
// items for both head numbers and both intervener types.
AsymmetryRates asymmetry_analysis(const EvaluationReport& report);
nlohmann::json to_json(const AsymmetryRates& rates);

// Content words outside the critical region replaced, item i using seed
// derive_seed(seed, "nonce/<i>"). Prediction targets are kept.
std::vector<SuiteRecord> nonce_suite(const std::vector<SuiteRecord>& records,
                                     const Lexicon& lexicon, std::uint64_t seed);

struct NonceComparison {
  EvaluationReport original;
  EvaluationReport nonce;
  std::vector<SuiteRecord> nonce_records;

  // nonce accuracy minus original accuracy.
  double delta() const;
};

NonceComparison nonce_comparison(const LanguageModel& model,
                                 const std::vector<SuiteRecord>& records,
                                 const Lexicon& lexicon, std::uint64_t seed,
                                 const EvalOptions& options = {});
nlohmann::json to_json(const NonceComparison& comparison);

// Half-open range of profile positions; the final position is </s>.
struct Region {
  std::string name;
  std::size_t start = 0;
  std::size_t end = 0;
};

struct AnnotatedSentence {
  std::vector<std::string> tokens;
  std::vector<Region> regions;
};

struct RegionAggregate {
  std::size_t sentence = 0;
  Region region;
  double mean_surprisal = 0.0;
};

struct SurprisalReport {
  std::vector<SurprisalProfile> profiles;
  std::vector<RegionAggregate> regions;
  // Region name -> mean of the per-sentence region means.
  std::map<std::string, double> by_name;
};

SurprisalReport surprisal_report(const LanguageModel& model,
                                 const std::vector<AnnotatedSentence>& sentences);
nlohmann::json to_json(const SurprisalReport& report);
// Accepts plain sentences or {"tokens": [...], "regions": [...]} per line.
AnnotatedSentence annotated_sentence_from_line(std::string_view line);

// Reference model that reads the suite's annotations. It keys prefixes by
// shape (content words by part of speech and number, function words by
// surface), so it is blind to lexical content. At a prefix shape seen in a
// grammatical continuation it gives mass 1 - leak to words of the registered
// next shapes; elsewhere it is uniform.
class MetadataOracle final : public LanguageModel {
 public:
  MetadataOracle(const std::vector<SuiteRecord>& records, const Lexicon& lexicon,
                 double leak = 1e-3);

  const Vocabulary& vocabulary() const override { return vocab_; }
  std::string identifier() const override { return "metadata-oracle"; }
  std::vector<double> next_distribution(
      std::span<const WordId> prefix) const override;

 private:
  std::string shape_of(WordId id) const;

  Vocabulary vocab_;
  std::vector<std::string> shapes_;  // per word id
  std::map<std::vector<std::string>, std::set<std::string>> continuations_;
  double leak_;
};

}  // namespace syneval

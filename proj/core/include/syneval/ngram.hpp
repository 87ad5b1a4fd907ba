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

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "syneval/language_model.hpp"

namespace syneval {

struct NGramOptions {
  int order = 2;
  // Additive smoothing constant; nullopt means maximum likelihood.
  std::optional<double> add_k = 0.01;
  std::size_t min_count = 2;
};

// Count-based n-gram model. Each training sentence is padded with order-1
// <s> symbols and one </s>. Counts are kept for every order 1..n over
// n-grams whose last element is a real token or </s>, so the unigram total
// equals the corpus token count plus one </s> per sentence.
//
// Probabilities range over the predictable outcomes (every id except <s>),
// V' = |vocabulary| - 1 of them:
//   maximum likelihood:  P(w | h) = c(h, w) / c(h)
//   add-k:               P(w | h) = (c(h, w) + k) / (c(h) + k V')
// where c(h) counts occurrences of h as a history. An unseen history under
// maximum likelihood yields the uniform distribution.
class NGramModel final : public LanguageModel {
 public:
  using Gram = std::vector<WordId>;
  using CountTable = std::map<Gram, std::uint64_t>;

  NGramModel(Vocabulary vocab, NGramOptions options,
             std::vector<CountTable> counts);

  const Vocabulary& vocabulary() const override { return vocab_; }
  std::string identifier() const override;
  std::vector<double> next_distribution(
      std::span<const WordId> prefix) const override;
  double prob_next(std::span<const WordId> prefix, WordId word) const override;

  int order() const { return options_.order; }
  const NGramOptions& options() const { return options_; }
  // counts()[k-1] holds the k-gram table.
  const std::vector<CountTable>& counts() const { return counts_; }
  std::uint64_t count(const Gram& gram) const;
  std::uint64_t history_count(const Gram& history) const;

  nlohmann::json to_json() const;
  static NGramModel from_json(const nlohmann::json& j);

 private:
  Gram history_for(std::span<const WordId> prefix) const;
  double probability(const Gram& history, std::uint64_t history_total,
                     WordId word) const;

  Vocabulary vocab_;
  NGramOptions options_;
  std::vector<CountTable> counts_;
  CountTable history_counts_;
};

// Throws Error(kEmptyCorpus) on an empty corpus and kInvalidArgument on a
// bad order or non-positive k.
NGramModel train_ngram(const std::vector<std::vector<std::string>>& corpus,
                       const NGramOptions& options);

}  // namespace syneval

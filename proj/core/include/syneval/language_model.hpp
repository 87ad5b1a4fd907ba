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
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "syneval/vocabulary.hpp"

namespace syneval {

// Anything that maps a sentence prefix to a distribution over the next
// word. Prefixes never include <s>; models add their own start context.
// The distribution covers every vocabulary id, with <s> always at 0.
class LanguageModel {
 public:
  virtual ~LanguageModel() = default;

  virtual const Vocabulary& vocabulary() const = 0;
  virtual std::string identifier() const = 0;

  virtual std::vector<double> next_distribution(
      std::span<const WordId> prefix) const = 0;

  virtual double prob_next(std::span<const WordId> prefix, WordId word) const;

  // P(tokens[i] | tokens[0..i)) for every i, followed by P(</s> | tokens).
  // Overrides must agree exactly with prob_next.
  virtual std::vector<double> sequence_probabilities(
      std::span<const WordId> tokens) const;
};

struct SurprisalProfile {
  // The scored tokens followed by "</s>".
  std::vector<std::string> tokens;
  // -log2 P(token | prefix), in bits.
  std::vector<double> values;
  std::string model;

  double total() const;
};

void to_json(nlohmann::json& j, const SurprisalProfile& profile);

// String-level helpers; out-of-vocabulary words map to <unk>.
double prob_next(const LanguageModel& model,
                 const std::vector<std::string>& prefix,
                 const std::string& word);

// log2 P(tokens, </s>). Throws on empty input.
double sentence_logprob(const LanguageModel& model,
                        const std::vector<std::string>& tokens);

SurprisalProfile surprisal(const LanguageModel& model,
                           const std::vector<std::string>& tokens);

// Uniform over every predictable id (everything except <s>).
class UniformModel final : public LanguageModel {
 public:
  explicit UniformModel(Vocabulary vocab) : vocab_(std::move(vocab)) {}

  const Vocabulary& vocabulary() const override { return vocab_; }
  std::string identifier() const override { return "uniform"; }
  std::vector<double> next_distribution(
      std::span<const WordId> prefix) const override;

 private:
  Vocabulary vocab_;
};

// Sees only the last `window` tokens of every prefix.
class TruncatedContextModel final : public LanguageModel {
 public:
  TruncatedContextModel(std::shared_ptr<const LanguageModel> base,
                        std::size_t window);

  const Vocabulary& vocabulary() const override { return base_->vocabulary(); }
  std::string identifier() const override;
  std::vector<double> next_distribution(
      std::span<const WordId> prefix) const override;
  double prob_next(std::span<const WordId> prefix, WordId word) const override;

  std::size_t window() const { return window_; }

 private:
  std::span<const WordId> clip(std::span<const WordId> prefix) const;

  std::shared_ptr<const LanguageModel> base_;
  std::size_t window_;
};

std::shared_ptr<const LanguageModel> truncate_context(
    std::shared_ptr<const LanguageModel> model, std::size_t window);

}  // namespace syneval

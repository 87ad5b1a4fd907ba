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
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "syneval/language_model.hpp"
#include "syneval/recurrent_cell.hpp"

namespace syneval {

struct RecurrentOptions {
  CellKind cell = CellKind::kGru;
  std::size_t embedding_dim = 32;
  std::size_t hidden_dim = 32;
  double learning_rate = 0.1;
  int epochs = 2;
  // Truncation length for backpropagation through time, in time steps.
  std::size_t bptt = 20;
  // Global gradient-norm clip applied before each update; <= 0 disables.
  double clip_norm = 5.0;
  // Initial parameters are drawn uniformly from [-init_scale, init_scale].
  double init_scale = 0.1;
  std::size_t min_count = 2;
};

void to_json(nlohmann::json& j, const RecurrentOptions& o);
void from_json(const nlohmann::json& j, RecurrentOptions& o);

// Next-word predictor: embedding -> one recurrent layer -> softmax over the
// vocabulary (with <s> masked out). All parameters live in one flat vector
// laid out as [embedding | cell | output weights | output bias].
class RecurrentLM final : public LanguageModel {
 public:
  RecurrentLM(Vocabulary vocab, RecurrentOptions options, std::uint64_t seed,
              std::vector<double> parameters);

  // Fresh model with parameters drawn from the seed.
  static RecurrentLM initialize(Vocabulary vocab, RecurrentOptions options,
                                std::uint64_t seed);

  const Vocabulary& vocabulary() const override { return vocab_; }
  std::string identifier() const override;
  std::vector<double> next_distribution(
      std::span<const WordId> prefix) const override;
  std::vector<double> sequence_probabilities(
      std::span<const WordId> tokens) const override;

  const RecurrentOptions& options() const { return options_; }
  std::uint64_t seed() const { return seed_; }
  std::span<const double> parameters() const { return params_; }
  std::size_t parameter_count() const { return params_.size(); }
  static std::size_t parameter_count(std::size_t vocab_size,
                                     const RecurrentOptions& options);

  // Mean per-token cross-entropy (nats, </s> included) over the sentences
  // with full backpropagation; grad receives its gradient.
  double loss_and_gradient(const std::vector<std::vector<WordId>>& sentences,
                           std::span<double> grad) const;
  double loss(const std::vector<std::vector<WordId>>& sentences) const;

  // Plain SGD with truncated BPTT over `epochs` passes; sentence order is
  // reshuffled per epoch from the seed. Returns the mean training loss of
  // each epoch. Throws NonFiniteLossError.
  std::vector<double> fit(const std::vector<std::vector<WordId>>& sentences,
                          double learning_rate, int epochs, std::uint64_t seed);

 private:
  Vocabulary vocab_;
  RecurrentOptions options_;
  std::uint64_t seed_;
  std::vector<double> params_;
};

struct RecurrentTraining {
  RecurrentLM model;
  // Entry 0 is the loss at initialization; entry e the mean loss of epoch e.
  std::vector<double> loss_curve;
};

RecurrentTraining train_recurrent(
    const std::vector<std::vector<std::string>>& corpus,
    const RecurrentOptions& options, std::uint64_t seed);

struct AdaptOptions {
  double learning_rate = 0.05;
  int epochs = 1;
  std::uint64_t seed = 0;
};

struct Adaptation {
  RecurrentLM model;
  std::vector<double> loss_curve;
  std::vector<SurprisalProfile> before;
  std::vector<SurprisalProfile> after;

  // Mean per-token surprisal over all probe profiles.
  double mean_before() const;
  double mean_after() const;
};

// Continued training on the exposure sentences. The input model is left
// untouched; zero epochs returns an identical copy.
Adaptation adapt(const RecurrentLM& model,
                 const std::vector<std::vector<std::string>>& exposure,
                 const AdaptOptions& options,
                 const std::vector<std::vector<std::string>>& probes);

}  // namespace syneval

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
#include <utility>
#include <vector>

#include "json.hpp"
#include "syneval/recurrent_cell.hpp"
#include "syneval/vocabulary.hpp"

namespace syneval {

struct TransducerOptions {
  CellKind cell = CellKind::kGru;
  std::size_t embedding_dim = 16;
  std::size_t hidden_dim = 32;
  double learning_rate = 0.1;
  int epochs = 20;
  double clip_norm = 5.0;
  double init_scale = 0.1;
  std::size_t max_output_length = 32;
};

void to_json(nlohmann::json& j, const TransducerOptions& o);
void from_json(const nlohmann::json& j, TransducerOptions& o);

using SequencePair = std::pair<std::vector<std::string>, std::vector<std::string>>;

// Encoder-decoder without attention: the encoder's final hidden state is
// the decoder's initial state. The decoder is fed <s> and then the previous
// target token, and predicts the target followed by </s>. Parameters are
// laid out as [encoder embedding | encoder cell | decoder embedding |
// decoder cell | output weights | output bias].
class TransducerModel {
 public:
  TransducerModel(Vocabulary vocab, TransducerOptions options,
                  std::uint64_t seed, std::vector<double> parameters);

  static TransducerModel initialize(Vocabulary vocab, TransducerOptions options,
                                    std::uint64_t seed);

  // Greedy argmax decoding (lowest id wins ties); stops at </s> or after
  // max_output_length tokens. Unknown input words map to <unk>.
  std::vector<std::string> transduce(
      const std::vector<std::string>& input) const;

  const Vocabulary& vocabulary() const { return vocab_; }
  const TransducerOptions& options() const { return options_; }
  std::uint64_t seed() const { return seed_; }
  std::span<const double> parameters() const { return params_; }
  std::size_t parameter_count() const { return params_.size(); }
  static std::size_t parameter_count(std::size_t vocab_size,
                                     const TransducerOptions& options);
  std::string identifier() const;

  using EncodedPair = std::pair<std::vector<WordId>, std::vector<WordId>>;

  // Mean per-target-token teacher-forced cross-entropy (nats) and its
  // gradient.
  double loss_and_gradient(const std::vector<EncodedPair>& pairs,
                           std::span<double> grad) const;
  double loss(const std::vector<EncodedPair>& pairs) const;

  std::vector<double> fit(const std::vector<EncodedPair>& pairs,
                          double learning_rate, int epochs, std::uint64_t seed);

  EncodedPair encode(const SequencePair& pair) const;

 private:
  Vocabulary vocab_;
  TransducerOptions options_;
  std::uint64_t seed_;
  std::vector<double> params_;
};

struct TransducerTraining {
  TransducerModel model;
  std::vector<double> loss_curve;
};

// epochs may be 0, which yields the initialized model.
TransducerTraining train_transducer(const std::vector<SequencePair>& pairs,
                                    const TransducerOptions& options,
                                    std::uint64_t seed);

}  // namespace syneval

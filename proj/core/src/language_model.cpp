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

#include "syneval/language_model.hpp"

#include <cmath>

#include "syneval/error.hpp"

namespace syneval {

double LanguageModel::prob_next(std::span<const WordId> prefix,
                                WordId word) const {
  return next_distribution(prefix).at(word);
}

std::vector<double> LanguageModel::sequence_probabilities(
    std::span<const WordId> tokens) const {
  std::vector<double> out;
  out.reserve(tokens.size() + 1);
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    out.push_back(prob_next(tokens.first(i), tokens[i]));
  }
  out.push_back(prob_next(tokens, Vocabulary::kEos));
  return out;
}

double SurprisalProfile::total() const {
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum;
}

void to_json(nlohmann::json& j, const SurprisalProfile& profile) {
  j = nlohmann::json{{"model", profile.model},
                     {"tokens", profile.tokens},
                     {"surprisal", profile.values}};
}

double prob_next(const LanguageModel& model,
                 const std::vector<std::string>& prefix,
                 const std::string& word) {
  const auto& vocab = model.vocabulary();
  const auto ids = vocab.encode(prefix);
  return model.prob_next(ids, vocab.lookup(word));
}

double sentence_logprob(const LanguageModel& model,
                        const std::vector<std::string>& tokens) {
  if (tokens.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "cannot score an empty sentence");
  }
  const auto ids = model.vocabulary().encode(tokens);
  double sum = 0.0;
  for (double p : model.sequence_probabilities(ids)) sum += std::log2(p);
  return sum;
}

SurprisalProfile surprisal(const LanguageModel& model,
                           const std::vector<std::string>& tokens) {
  if (tokens.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "cannot profile an empty sentence");
  }
  SurprisalProfile profile;
  profile.model = model.identifier();
  profile.tokens = tokens;
  profile.tokens.emplace_back(Vocabulary::kEosWord);
  const auto ids = model.vocabulary().encode(tokens);
  for (double p : model.sequence_probabilities(ids)) {
    profile.values.push_back(-std::log2(p));
  }
  return profile;
}

std::vector<double> UniformModel::next_distribution(
    std::span<const WordId>) const {
  const double p = 1.0 / static_cast<double>(vocab_.size() - 1);
  std::vector<double> dist(vocab_.size(), p);
  dist[Vocabulary::kBos] = 0.0;
  return dist;
}

TruncatedContextModel::TruncatedContextModel(
    std::shared_ptr<const LanguageModel> base, std::size_t window)
    : base_(std::move(base)), window_(window) {
  if (!base_) throw Error(ErrorKind::kInvalidArgument, "null base model");
  if (window_ == 0) {
    throw Error(ErrorKind::kInvalidArgument, "context window must be >= 1");
  }
}

std::string TruncatedContextModel::identifier() const {
  return base_->identifier() + "+truncate:" + std::to_string(window_);
}

std::span<const WordId> TruncatedContextModel::clip(
    std::span<const WordId> prefix) const {
  return prefix.size() <= window_ ? prefix : prefix.last(window_);
}

std::vector<double> TruncatedContextModel::next_distribution(
    std::span<const WordId> prefix) const {
  return base_->next_distribution(clip(prefix));
}

double TruncatedContextModel::prob_next(std::span<const WordId> prefix,
                                        WordId word) const {
  return base_->prob_next(clip(prefix), word);
}

std::shared_ptr<const LanguageModel> truncate_context(
    std::shared_ptr<const LanguageModel> model, std::size_t window) {
  return std::make_shared<TruncatedContextModel>(std::move(model), window);
}

}  // namespace syneval

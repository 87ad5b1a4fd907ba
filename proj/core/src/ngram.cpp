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

#include "syneval/ngram.hpp"

#include <cmath>

#include "syneval/error.hpp"

namespace syneval {

namespace {

void validate(const NGramOptions& options) {
  if (options.order < 1) {
    throw Error(ErrorKind::kInvalidArgument, "n-gram order must be >= 1");
  }
  if (options.add_k && !(*options.add_k > 0.0 && std::isfinite(*options.add_k))) {
    throw Error(ErrorKind::kInvalidArgument, "add-k constant must be > 0");
  }
}

}  // namespace

NGramModel::NGramModel(Vocabulary vocab, NGramOptions options,
                       std::vector<CountTable> counts)
    : vocab_(std::move(vocab)),
      options_(options),
      counts_(std::move(counts)) {
  validate(options_);
  if (counts_.size() != static_cast<std::size_t>(options_.order)) {
    throw Error(ErrorKind::kFormat, "count tables do not match the order");
  }
  for (const auto& [gram, c] : counts_.back()) {
    history_counts_[Gram(gram.begin(), gram.end() - 1)] += c;
  }
}

std::string NGramModel::identifier() const {
  std::string id = "ngram:" + std::to_string(options_.order);
  if (options_.add_k) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", *options_.add_k);
    id += ":add-k=" + std::string(buf);
  } else {
    id += ":mle";
  }
  return id;
}

std::uint64_t NGramModel::count(const Gram& gram) const {
  if (gram.empty() || gram.size() > counts_.size()) return 0;
  const auto& table = counts_[gram.size() - 1];
  auto it = table.find(gram);
  return it == table.end() ? 0 : it->second;
}

std::uint64_t NGramModel::history_count(const Gram& history) const {
  auto it = history_counts_.find(history);
  return it == history_counts_.end() ? 0 : it->second;
}

NGramModel::Gram NGramModel::history_for(std::span<const WordId> prefix) const {
  const std::size_t h = static_cast<std::size_t>(options_.order) - 1;
  Gram history(h, Vocabulary::kBos);
  const std::size_t take = std::min(h, prefix.size());
  for (std::size_t i = 0; i < take; ++i) {
    history[h - take + i] = prefix[prefix.size() - take + i];
  }
  return history;
}

double NGramModel::probability(const Gram& history,
                               std::uint64_t history_total,
                               WordId word) const {
  if (word == Vocabulary::kBos || word >= vocab_.size()) return 0.0;
  const double outcomes = static_cast<double>(vocab_.size() - 1);
  Gram gram = history;
  gram.push_back(word);
  const double c = static_cast<double>(count(gram));
  if (options_.add_k) {
    const double k = *options_.add_k;
    return (c + k) / (static_cast<double>(history_total) + k * outcomes);
  }
  if (history_total == 0) return 1.0 / outcomes;
  return c / static_cast<double>(history_total);
}

double NGramModel::prob_next(std::span<const WordId> prefix,
                             WordId word) const {
  const Gram history = history_for(prefix);
  return probability(history, history_count(history), word);
}

std::vector<double> NGramModel::next_distribution(
    std::span<const WordId> prefix) const {
  const Gram history = history_for(prefix);
  const std::uint64_t total = history_count(history);
  std::vector<double> dist(vocab_.size());
  for (WordId w = 0; w < vocab_.size(); ++w) {
    dist[w] = probability(history, total, w);
  }
  return dist;
}

nlohmann::json NGramModel::to_json() const {
  nlohmann::json tables = nlohmann::json::array();
  for (const auto& table : counts_) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& [gram, c] : table) {
      nlohmann::json row = gram;
      row.push_back(c);
      rows.push_back(std::move(row));
    }
    tables.push_back(std::move(rows));
  }
  nlohmann::json j;
  j["order"] = options_.order;
  j["smoothing"] = options_.add_k ? "add-k" : "none";
  if (options_.add_k) j["k"] = *options_.add_k;
  j["min_count"] = options_.min_count;
  j["vocabulary"] = vocab_.words();
  j["counts"] = std::move(tables);
  return j;
}

NGramModel NGramModel::from_json(const nlohmann::json& j) {
  NGramOptions options;
  options.order = j.at("order").get<int>();
  const auto smoothing = j.at("smoothing").get<std::string>();
  if (smoothing == "add-k") {
    options.add_k = j.at("k").get<double>();
  } else if (smoothing == "none") {
    options.add_k.reset();
  } else {
    throw Error(ErrorKind::kFormat, "unknown smoothing '" + smoothing + "'");
  }
  options.min_count = j.value("min_count", std::size_t{2});
  auto vocab =
      Vocabulary::from_words(j.at("vocabulary").get<std::vector<std::string>>());
  std::vector<CountTable> counts;
  for (const auto& rows : j.at("counts")) {
    CountTable table;
    for (const auto& row : rows) {
      Gram gram;
      for (std::size_t i = 0; i + 1 < row.size(); ++i) {
        gram.push_back(row[i].get<WordId>());
      }
      table.emplace(std::move(gram), row.back().get<std::uint64_t>());
    }
    counts.push_back(std::move(table));
  }
  return NGramModel(std::move(vocab), options, std::move(counts));
}

NGramModel train_ngram(const std::vector<std::vector<std::string>>& corpus,
                       const NGramOptions& options) {
  validate(options);
  if (corpus.empty()) {
    throw Error(ErrorKind::kEmptyCorpus, "cannot train on an empty corpus");
  }
  Vocabulary vocab = Vocabulary::build(corpus, options.min_count);
  const auto n = static_cast<std::size_t>(options.order);
  std::vector<NGramModel::CountTable> counts(n);
  for (const auto& sentence : corpus) {
    std::vector<WordId> padded(n - 1, Vocabulary::kBos);
    for (WordId id : vocab.encode(sentence)) padded.push_back(id);
    padded.push_back(Vocabulary::kEos);
    for (std::size_t end = n - 1; end < padded.size(); ++end) {
      for (std::size_t k = 1; k <= n; ++k) {
        NGramModel::Gram gram(padded.begin() + static_cast<std::ptrdiff_t>(end + 1 - k),
                              padded.begin() + static_cast<std::ptrdiff_t>(end + 1));
        ++counts[k - 1][gram];
      }
    }
  }
  return NGramModel(std::move(vocab), options, std::move(counts));
}

}  // namespace syneval

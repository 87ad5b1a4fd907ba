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

#include "syneval/recurrent_lm.hpp"

#include <cmath>
#include <limits>

#include "linalg.hpp"
#include "syneval/error.hpp"
#include "syneval/rng.hpp"
#include "training.hpp"

namespace syneval {

void to_json(nlohmann::json& j, const RecurrentOptions& o) {
  j = nlohmann::json{{"cell", to_string(o.cell)},
                     {"embedding_dim", o.embedding_dim},
                     {"hidden_dim", o.hidden_dim},
                     {"learning_rate", o.learning_rate},
                     {"epochs", o.epochs},
                     {"bptt", o.bptt},
                     {"clip_norm", o.clip_norm},
                     {"init_scale", o.init_scale},
                     {"min_count", o.min_count}};
}

void from_json(const nlohmann::json& j, RecurrentOptions& o) {
  const auto cell = parse_cell_kind(j.at("cell").get<std::string>());
  if (!cell) throw Error(ErrorKind::kFormat, "unknown cell kind");
  o.cell = *cell;
  o.embedding_dim = j.at("embedding_dim").get<std::size_t>();
  o.hidden_dim = j.at("hidden_dim").get<std::size_t>();
  o.learning_rate = j.at("learning_rate").get<double>();
  o.epochs = j.at("epochs").get<int>();
  o.bptt = j.at("bptt").get<std::size_t>();
  o.clip_norm = j.at("clip_norm").get<double>();
  o.init_scale = j.at("init_scale").get<double>();
  o.min_count = j.at("min_count").get<std::size_t>();
}

namespace {

struct Layout {
  std::size_t vocab;
  std::size_t embed;
  std::size_t hidden;
  CellShape cell;
  std::size_t cell_offset;
  std::size_t out_w_offset;
  std::size_t out_b_offset;
  std::size_t total;

  Layout(std::size_t v, const RecurrentOptions& o)
      : vocab(v),
        embed(o.embedding_dim),
        hidden(o.hidden_dim),
        cell{o.cell, o.embedding_dim, o.hidden_dim} {
    cell_offset = vocab * embed;
    out_w_offset = cell_offset + cell.parameter_count();
    out_b_offset = out_w_offset + vocab * hidden;
    total = out_b_offset + vocab;
  }

  template <typename T>
  std::span<T> embedding(std::span<T> p, WordId id) const {
    return p.subspan(static_cast<std::size_t>(id) * embed, embed);
  }
  template <typename T>
  std::span<T> cell_params(std::span<T> p) const {
    return p.subspan(cell_offset, cell.parameter_count());
  }
  template <typename T>
  std::span<T> out_w(std::span<T> p) const {
    return p.subspan(out_w_offset, vocab * hidden);
  }
  template <typename T>
  std::span<T> out_b(std::span<T> p) const {
    return p.subspan(out_b_offset, vocab);
  }
};

void step(const Layout& L, std::span<const double> params, WordId input,
          std::vector<double>& h, CellCache* cache) {
  std::vector<double> next(L.hidden);
  cell_forward(L.cell, L.cell_params(params), L.embedding(params, input), h,
               next, cache);
  h = std::move(next);
}

std::vector<double> output_distribution(const Layout& L,
                                        std::span<const double> params,
                                        std::span<const double> h) {
  auto b = L.out_b(params);
  std::vector<double> logits(b.begin(), b.end());
  linalg::matvec_add(L.out_w(params), L.vocab, L.hidden, h, logits);
  logits[Vocabulary::kBos] = -std::numeric_limits<double>::infinity();
  linalg::softmax(logits);
  return logits;
}

// Runs inputs[t] -> targets[t] from hidden state h (updated in place) and
// returns the summed cross-entropy in nats. When grad is non-empty,
// backpropagates within this chunk only and accumulates into grad.
double run_chunk(const Layout& L, std::span<const double> params,
                 std::span<const WordId> inputs, std::span<const WordId> targets,
                 std::vector<double>& h, std::span<double> grad) {
  const std::size_t T = inputs.size();
  const bool backward = !grad.empty();
  std::vector<CellCache> caches(backward ? T : 0);
  std::vector<std::vector<double>> probs(backward ? T : 0);
  double loss = 0.0;
  for (std::size_t t = 0; t < T; ++t) {
    step(L, params, inputs[t], h, backward ? &caches[t] : nullptr);
    auto p = output_distribution(L, params, h);
    loss -= std::log(p[targets[t]]);
    if (backward) probs[t] = std::move(p);
  }
  if (!backward) return loss;

  auto d_out_w = L.out_w(grad);
  auto d_out_b = L.out_b(grad);
  auto d_cell = L.cell_params(grad);
  std::vector<double> dh_next(L.hidden, 0.0);
  for (std::size_t t = T; t-- > 0;) {
    auto& dlogits = probs[t];
    dlogits[targets[t]] -= 1.0;
    linalg::outer_add(d_out_w, dlogits, caches[t].h);
    for (std::size_t i = 0; i < L.vocab; ++i) d_out_b[i] += dlogits[i];
    std::vector<double> dh = dh_next;
    linalg::matTvec_add(L.out_w(params), L.vocab, L.hidden, dlogits, dh);
    std::vector<double> dh_prev(L.hidden, 0.0);
    cell_backward(L.cell, L.cell_params(params), caches[t], dh,
                  L.embedding(grad, inputs[t]), dh_prev, d_cell);
    dh_next = std::move(dh_prev);
  }
  return loss;
}

void split_sentence(std::span<const WordId> sentence,
                    std::vector<WordId>& inputs, std::vector<WordId>& targets) {
  inputs.assign(1, Vocabulary::kBos);
  inputs.insert(inputs.end(), sentence.begin(), sentence.end());
  targets.assign(sentence.begin(), sentence.end());
  targets.push_back(Vocabulary::kEos);
}

void validate(const RecurrentOptions& o) {
  if (o.embedding_dim < 1 || o.hidden_dim < 1) {
    throw Error(ErrorKind::kInvalidArgument,
                "embedding and hidden dimensions must be >= 1");
  }
  if (o.bptt < 1) {
    throw Error(ErrorKind::kInvalidArgument, "bptt length must be >= 1");
  }
  if (!(o.learning_rate > 0.0)) {
    throw Error(ErrorKind::kInvalidArgument, "learning rate must be > 0");
  }
}

}  // namespace

RecurrentLM::RecurrentLM(Vocabulary vocab, RecurrentOptions options,
                         std::uint64_t seed, std::vector<double> parameters)
    : vocab_(std::move(vocab)),
      options_(options),
      seed_(seed),
      params_(std::move(parameters)) {
  validate(options_);
  if (params_.size() != parameter_count(vocab_.size(), options_)) {
    throw Error(ErrorKind::kFormat,
                "parameter vector has " + std::to_string(params_.size()) +
                    " entries, expected " +
                    std::to_string(parameter_count(vocab_.size(), options_)));
  }
}

std::size_t RecurrentLM::parameter_count(std::size_t vocab_size,
                                         const RecurrentOptions& options) {
  return Layout(vocab_size, options).total;
}

RecurrentLM RecurrentLM::initialize(Vocabulary vocab, RecurrentOptions options,
                                    std::uint64_t seed) {
  validate(options);
  std::vector<double> params(parameter_count(vocab.size(), options));
  SplitMix64 rng(derive_seed(seed, "rnn/init"));
  for (double& p : params) p = rng.uniform(-options.init_scale, options.init_scale);
  return RecurrentLM(std::move(vocab), options, seed, std::move(params));
}

std::string RecurrentLM::identifier() const {
  return "rnn:" + std::string(to_string(options_.cell)) + ":e" +
         std::to_string(options_.embedding_dim) + ":h" +
         std::to_string(options_.hidden_dim) + ":seed" + std::to_string(seed_);
}

std::vector<double> RecurrentLM::next_distribution(
    std::span<const WordId> prefix) const {
  const Layout L(vocab_.size(), options_);
  std::vector<double> h(L.hidden, 0.0);
  step(L, params_, Vocabulary::kBos, h, nullptr);
  for (WordId w : prefix) step(L, params_, w, h, nullptr);
  return output_distribution(L, params_, h);
}

std::vector<double> RecurrentLM::sequence_probabilities(
    std::span<const WordId> tokens) const {
  const Layout L(vocab_.size(), options_);
  std::vector<double> h(L.hidden, 0.0);
  std::vector<double> out;
  out.reserve(tokens.size() + 1);
  step(L, params_, Vocabulary::kBos, h, nullptr);
  for (WordId w : tokens) {
    out.push_back(output_distribution(L, params_, h)[w]);
    step(L, params_, w, h, nullptr);
  }
  out.push_back(output_distribution(L, params_, h)[Vocabulary::kEos]);
  return out;
}

double RecurrentLM::loss_and_gradient(
    const std::vector<std::vector<WordId>>& sentences,
    std::span<double> grad) const {
  const Layout L(vocab_.size(), options_);
  std::fill(grad.begin(), grad.end(), 0.0);
  double total = 0.0;
  std::size_t tokens = 0;
  std::vector<WordId> inputs, targets;
  for (const auto& s : sentences) {
    split_sentence(s, inputs, targets);
    std::vector<double> h(L.hidden, 0.0);
    total += run_chunk(L, params_, inputs, targets, h, grad);
    tokens += targets.size();
  }
  if (tokens == 0) return 0.0;
  const double scale = 1.0 / static_cast<double>(tokens);
  for (double& g : grad) g *= scale;
  return total * scale;
}

double RecurrentLM::loss(
    const std::vector<std::vector<WordId>>& sentences) const {
  const Layout L(vocab_.size(), options_);
  double total = 0.0;
  std::size_t tokens = 0;
  std::vector<WordId> inputs, targets;
  for (const auto& s : sentences) {
    split_sentence(s, inputs, targets);
    std::vector<double> h(L.hidden, 0.0);
    total += run_chunk(L, params_, inputs, targets, h, {});
    tokens += targets.size();
  }
  return tokens == 0 ? 0.0 : total / static_cast<double>(tokens);
}

std::vector<double> RecurrentLM::fit(
    const std::vector<std::vector<WordId>>& sentences, double learning_rate,
    int epochs, std::uint64_t seed) {
  const Layout L(vocab_.size(), options_);
  std::vector<double> curve;
  std::vector<double> grad(params_.size());
  std::vector<WordId> inputs, targets;
  for (int epoch = 1; epoch <= epochs; ++epoch) {
    const auto order = seeded_permutation(
        sentences.size(), derive_seed(seed, "rnn/epoch/" + std::to_string(epoch)));
    double total = 0.0;
    std::size_t tokens = 0;
    for (std::size_t idx : order) {
      split_sentence(sentences[idx], inputs, targets);
      std::vector<double> h(L.hidden, 0.0);
      for (std::size_t start = 0; start < inputs.size(); start += options_.bptt) {
        const std::size_t len = std::min(options_.bptt, inputs.size() - start);
        std::fill(grad.begin(), grad.end(), 0.0);
        const double chunk = run_chunk(
            L, params_, std::span<const WordId>(inputs).subspan(start, len),
            std::span<const WordId>(targets).subspan(start, len), h, grad);
        if (!std::isfinite(chunk)) throw NonFiniteLossError(epoch);
        const double scale = 1.0 / static_cast<double>(len);
        for (double& g : grad) g *= scale;
        training::clipped_sgd_step(params_, grad, learning_rate,
                                   options_.clip_norm);
        total += chunk;
        tokens += len;
      }
    }
    const double mean = tokens == 0 ? 0.0 : total / static_cast<double>(tokens);
    if (!std::isfinite(mean)) throw NonFiniteLossError(epoch);
    curve.push_back(mean);
  }
  return curve;
}

RecurrentTraining train_recurrent(
    const std::vector<std::vector<std::string>>& corpus,
    const RecurrentOptions& options, std::uint64_t seed) {
  if (corpus.empty()) {
    throw Error(ErrorKind::kEmptyCorpus, "cannot train on an empty corpus");
  }
  validate(options);
  if (options.epochs < 1) {
    throw Error(ErrorKind::kInvalidArgument, "epochs must be >= 1");
  }
  Vocabulary vocab = Vocabulary::build(corpus, options.min_count);
  std::vector<std::vector<WordId>> encoded;
  encoded.reserve(corpus.size());
  for (const auto& s : corpus) encoded.push_back(vocab.encode(s));

  auto model = RecurrentLM::initialize(std::move(vocab), options, seed);
  std::vector<double> curve{model.loss(encoded)};
  if (!std::isfinite(curve.front())) throw NonFiniteLossError(0);
  const auto epochs =
      model.fit(encoded, options.learning_rate, options.epochs, seed);
  curve.insert(curve.end(), epochs.begin(), epochs.end());
  return {std::move(model), std::move(curve)};
}

double Adaptation::mean_before() const {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& p : before) {
    sum += p.total();
    n += p.values.size();
  }
  return n == 0 ? 0.0 : sum / static_cast<double>(n);
}

double Adaptation::mean_after() const {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& p : after) {
    sum += p.total();
    n += p.values.size();
  }
  return n == 0 ? 0.0 : sum / static_cast<double>(n);
}

Adaptation adapt(const RecurrentLM& model,
                 const std::vector<std::vector<std::string>>& exposure,
                 const AdaptOptions& options,
                 const std::vector<std::vector<std::string>>& probes) {
  if (exposure.empty()) {
    throw Error(ErrorKind::kEmptyCorpus, "exposure set is empty");
  }
  if (options.epochs < 0) {
    throw Error(ErrorKind::kInvalidArgument, "epochs must be >= 0");
  }
  if (!(options.learning_rate > 0.0)) {
    throw Error(ErrorKind::kInvalidArgument, "learning rate must be > 0");
  }
  Adaptation result{model, {}, {}, {}};
  std::vector<std::vector<WordId>> encoded;
  for (const auto& s : exposure) encoded.push_back(model.vocabulary().encode(s));
  result.loss_curve =
      result.model.fit(encoded, options.learning_rate, options.epochs,
                       derive_seed(options.seed, "adapt"));
  for (const auto& p : probes) {
    result.before.push_back(surprisal(model, p));
    result.after.push_back(surprisal(result.model, p));
  }
  return result;
}

}  // namespace syneval

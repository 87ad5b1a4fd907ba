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

#include "syneval/transducer.hpp"

#include <cmath>
#include <limits>

#include "linalg.hpp"
#include "syneval/error.hpp"
#include "syneval/rng.hpp"
#include "training.hpp"

namespace syneval {

void to_json(nlohmann::json& j, const TransducerOptions& o) {
  j = nlohmann::json{{"cell", to_string(o.cell)},
                     {"embedding_dim", o.embedding_dim},
                     {"hidden_dim", o.hidden_dim},
                     {"learning_rate", o.learning_rate},
                     {"epochs", o.epochs},
                     {"clip_norm", o.clip_norm},
                     {"init_scale", o.init_scale},
                     {"max_output_length", o.max_output_length}};
}

void from_json(const nlohmann::json& j, TransducerOptions& o) {
  const auto cell = parse_cell_kind(j.at("cell").get<std::string>());
  if (!cell) throw Error(ErrorKind::kFormat, "unknown cell kind");
  o.cell = *cell;
  o.embedding_dim = j.at("embedding_dim").get<std::size_t>();
  o.hidden_dim = j.at("hidden_dim").get<std::size_t>();
  o.learning_rate = j.at("learning_rate").get<double>();
  o.epochs = j.at("epochs").get<int>();
  o.clip_norm = j.at("clip_norm").get<double>();
  o.init_scale = j.at("init_scale").get<double>();
  o.max_output_length = j.at("max_output_length").get<std::size_t>();
}

namespace {

struct Layout {
  std::size_t vocab, embed, hidden;
  CellShape cell;
  std::size_t enc_emb, enc_cell, dec_emb, dec_cell, out_w, out_b, total;

  Layout(std::size_t v, const TransducerOptions& o)
      : vocab(v),
        embed(o.embedding_dim),
        hidden(o.hidden_dim),
        cell{o.cell, o.embedding_dim, o.hidden_dim} {
    enc_emb = 0;
    enc_cell = enc_emb + vocab * embed;
    dec_emb = enc_cell + cell.parameter_count();
    dec_cell = dec_emb + vocab * embed;
    out_w = dec_cell + cell.parameter_count();
    out_b = out_w + vocab * hidden;
    total = out_b + vocab;
  }

  template <typename T>
  std::span<T> emb(std::span<T> p, std::size_t base, WordId id) const {
    return p.subspan(base + static_cast<std::size_t>(id) * embed, embed);
  }
  template <typename T>
  std::span<T> cellp(std::span<T> p, std::size_t base) const {
    return p.subspan(base, cell.parameter_count());
  }
};

std::vector<double> output_distribution(const Layout& L,
                                        std::span<const double> p,
                                        std::span<const double> h) {
  auto b = p.subspan(L.out_b, L.vocab);
  std::vector<double> logits(b.begin(), b.end());
  linalg::matvec_add(p.subspan(L.out_w, L.vocab * L.hidden), L.vocab, L.hidden,
                     h, logits);
  logits[Vocabulary::kBos] = -std::numeric_limits<double>::infinity();
  linalg::softmax(logits);
  return logits;
}

void advance(const Layout& L, std::span<const double> p, std::size_t emb_base,
             std::size_t cell_base, WordId input, std::vector<double>& h,
             CellCache* cache) {
  std::vector<double> next(L.hidden);
  cell_forward(L.cell, L.cellp(p, cell_base), L.emb(p, emb_base, input), h,
               next, cache);
  h = std::move(next);
}

std::vector<double> encode_state(const Layout& L, std::span<const double> p,
                                 std::span<const WordId> source,
                                 std::vector<CellCache>* caches) {
  std::vector<double> h(L.hidden, 0.0);
  if (caches != nullptr) caches->resize(source.size());
  for (std::size_t t = 0; t < source.size(); ++t) {
    advance(L, p, L.enc_emb, L.enc_cell, source[t], h,
            caches != nullptr ? &(*caches)[t] : nullptr);
  }
  return h;
}

// Teacher-forced loss (nats, summed over target tokens plus </s>).
double pair_loss(const Layout& L, std::span<const double> p,
                 const TransducerModel::EncodedPair& pair,
                 std::span<double> grad) {
  const bool backward = !grad.empty();
  std::vector<CellCache> enc_caches;
  std::vector<double> h =
      encode_state(L, p, pair.first, backward ? &enc_caches : nullptr);

  std::vector<WordId> inputs{Vocabulary::kBos};
  inputs.insert(inputs.end(), pair.second.begin(), pair.second.end());
  std::vector<WordId> targets(pair.second.begin(), pair.second.end());
  targets.push_back(Vocabulary::kEos);

  const std::size_t T = inputs.size();
  std::vector<CellCache> dec_caches(backward ? T : 0);
  std::vector<std::vector<double>> probs(backward ? T : 0);
  double loss = 0.0;
  for (std::size_t t = 0; t < T; ++t) {
    advance(L, p, L.dec_emb, L.dec_cell, inputs[t], h,
            backward ? &dec_caches[t] : nullptr);
    auto dist = output_distribution(L, p, h);
    loss -= std::log(dist[targets[t]]);
    if (backward) probs[t] = std::move(dist);
  }
  if (!backward) return loss;

  auto d_out_w = grad.subspan(L.out_w, L.vocab * L.hidden);
  auto d_out_b = grad.subspan(L.out_b, L.vocab);
  auto out_w = p.subspan(L.out_w, L.vocab * L.hidden);
  std::vector<double> dh_next(L.hidden, 0.0);
  for (std::size_t t = T; t-- > 0;) {
    auto& dlogits = probs[t];
    dlogits[targets[t]] -= 1.0;
    linalg::outer_add(d_out_w, dlogits, dec_caches[t].h);
    for (std::size_t i = 0; i < L.vocab; ++i) d_out_b[i] += dlogits[i];
    std::vector<double> dh = dh_next;
    linalg::matTvec_add(out_w, L.vocab, L.hidden, dlogits, dh);
    std::vector<double> dh_prev(L.hidden, 0.0);
    cell_backward(L.cell, L.cellp(p, L.dec_cell), dec_caches[t], dh,
                  L.emb(grad, L.dec_emb, inputs[t]), dh_prev,
                  L.cellp(grad, L.dec_cell));
    dh_next = std::move(dh_prev);
  }
  for (std::size_t t = pair.first.size(); t-- > 0;) {
    std::vector<double> dh_prev(L.hidden, 0.0);
    cell_backward(L.cell, L.cellp(p, L.enc_cell), enc_caches[t], dh_next,
                  L.emb(grad, L.enc_emb, pair.first[t]), dh_prev,
                  L.cellp(grad, L.enc_cell));
    dh_next = std::move(dh_prev);
  }
  return loss;
}

void validate(const TransducerOptions& o) {
  if (o.embedding_dim < 1 || o.hidden_dim < 1) {
    throw Error(ErrorKind::kInvalidArgument,
                "embedding and hidden dimensions must be >= 1");
  }
  if (o.max_output_length < 1) {
    throw Error(ErrorKind::kInvalidArgument, "max_output_length must be >= 1");
  }
  if (!(o.learning_rate > 0.0)) {
    throw Error(ErrorKind::kInvalidArgument, "learning rate must be > 0");
  }
  if (o.epochs < 0) {
    throw Error(ErrorKind::kInvalidArgument, "epochs must be >= 0");
  }
}

}  // namespace

TransducerModel::TransducerModel(Vocabulary vocab, TransducerOptions options,
                                 std::uint64_t seed,
                                 std::vector<double> parameters)
    : vocab_(std::move(vocab)),
      options_(options),
      seed_(seed),
      params_(std::move(parameters)) {
  validate(options_);
  if (params_.size() != parameter_count(vocab_.size(), options_)) {
    throw Error(ErrorKind::kFormat, "transducer parameter count mismatch");
  }
}

std::size_t TransducerModel::parameter_count(std::size_t vocab_size,
                                             const TransducerOptions& options) {
  return Layout(vocab_size, options).total;
}

TransducerModel TransducerModel::initialize(Vocabulary vocab,
                                            TransducerOptions options,
                                            std::uint64_t seed) {
  validate(options);
  std::vector<double> params(parameter_count(vocab.size(), options));
  SplitMix64 rng(derive_seed(seed, "transducer/init"));
  for (double& p : params) p = rng.uniform(-options.init_scale, options.init_scale);
  return TransducerModel(std::move(vocab), options, seed, std::move(params));
}

std::string TransducerModel::identifier() const {
  return "seq2seq:" + std::string(to_string(options_.cell)) + ":e" +
         std::to_string(options_.embedding_dim) + ":h" +
         std::to_string(options_.hidden_dim) + ":seed" + std::to_string(seed_);
}

TransducerModel::EncodedPair TransducerModel::encode(
    const SequencePair& pair) const {
  return {vocab_.encode(pair.first), vocab_.encode(pair.second)};
}

std::vector<std::string> TransducerModel::transduce(
    const std::vector<std::string>& input) const {
  const Layout L(vocab_.size(), options_);
  const auto source = vocab_.encode(input);
  std::vector<double> h = encode_state(L, params_, source, nullptr);
  std::vector<std::string> out;
  WordId prev = Vocabulary::kBos;
  while (out.size() < options_.max_output_length) {
    advance(L, params_, L.dec_emb, L.dec_cell, prev, h, nullptr);
    const auto dist = output_distribution(L, params_, h);
    WordId best = 0;
    for (WordId w = 1; w < dist.size(); ++w) {
      if (dist[w] > dist[best]) best = w;
    }
    if (best == Vocabulary::kEos) break;
    out.push_back(vocab_.word(best));
    prev = best;
  }
  return out;
}

double TransducerModel::loss_and_gradient(const std::vector<EncodedPair>& pairs,
                                          std::span<double> grad) const {
  const Layout L(vocab_.size(), options_);
  std::fill(grad.begin(), grad.end(), 0.0);
  double total = 0.0;
  std::size_t tokens = 0;
  for (const auto& pair : pairs) {
    total += pair_loss(L, params_, pair, grad);
    tokens += pair.second.size() + 1;
  }
  if (tokens == 0) return 0.0;
  const double scale = 1.0 / static_cast<double>(tokens);
  for (double& g : grad) g *= scale;
  return total * scale;
}

double TransducerModel::loss(const std::vector<EncodedPair>& pairs) const {
  const Layout L(vocab_.size(), options_);
  double total = 0.0;
  std::size_t tokens = 0;
  for (const auto& pair : pairs) {
    total += pair_loss(L, params_, pair, {});
    tokens += pair.second.size() + 1;
  }
  return tokens == 0 ? 0.0 : total / static_cast<double>(tokens);
}

std::vector<double> TransducerModel::fit(const std::vector<EncodedPair>& pairs,
                                         double learning_rate, int epochs,
                                         std::uint64_t seed) {
  const Layout L(vocab_.size(), options_);
  std::vector<double> curve;
  std::vector<double> grad(params_.size());
  for (int epoch = 1; epoch <= epochs; ++epoch) {
    const auto order = seeded_permutation(
        pairs.size(),
        derive_seed(seed, "transducer/epoch/" + std::to_string(epoch)));
    double total = 0.0;
    std::size_t tokens = 0;
    for (std::size_t idx : order) {
      std::fill(grad.begin(), grad.end(), 0.0);
      const double loss = pair_loss(L, params_, pairs[idx], grad);
      if (!std::isfinite(loss)) throw NonFiniteLossError(epoch);
      const std::size_t len = pairs[idx].second.size() + 1;
      const double scale = 1.0 / static_cast<double>(len);
      for (double& g : grad) g *= scale;
      training::clipped_sgd_step(params_, grad, learning_rate,
                                 options_.clip_norm);
      total += loss;
      tokens += len;
    }
    curve.push_back(tokens == 0 ? 0.0 : total / static_cast<double>(tokens));
  }
  return curve;
}

TransducerTraining train_transducer(const std::vector<SequencePair>& pairs,
                                    const TransducerOptions& options,
                                    std::uint64_t seed) {
  if (pairs.empty()) {
    throw Error(ErrorKind::kEmptyCorpus, "no training pairs");
  }
  validate(options);
  std::vector<std::vector<std::string>> words;
  for (const auto& [src, tgt] : pairs) {
    words.push_back(src);
    words.push_back(tgt);
  }
  auto model = TransducerModel::initialize(Vocabulary::build(words, 1),
                                           options, seed);
  std::vector<TransducerModel::EncodedPair> encoded;
  encoded.reserve(pairs.size());
  for (const auto& p : pairs) encoded.push_back(model.encode(p));
  std::vector<double> curve{model.loss(encoded)};
  const auto epochs =
      model.fit(encoded, options.learning_rate, options.epochs, seed);
  curve.insert(curve.end(), epochs.begin(), epochs.end());
  return {std::move(model), std::move(curve)};
}

}  // namespace syneval

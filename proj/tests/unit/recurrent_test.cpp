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

#include <cmath>

#include "gtest/gtest.h"
#include "syneval/error.hpp"
#include "syneval/recurrent_lm.hpp"
#include "syneval/rng.hpp"
#include "test_support.hpp"

namespace syneval {
namespace {

const Vocabulary& tiny_vocab() {
  static const auto v =
      Vocabulary::from_words({"<unk>", "<s>", "</s>", "a", "b", "c"});
  return v;
}

std::vector<std::vector<WordId>> random_sentences(std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<std::vector<WordId>> out(3);
  for (auto& s : out) {
    const auto len = 2 + rng.uniform_below(4);
    for (std::uint64_t i = 0; i < len; ++i) {
      s.push_back(static_cast<WordId>(3 + rng.uniform_below(3)));
    }
  }
  return out;
}

RecurrentOptions small(CellKind cell) {
  RecurrentOptions o;
  o.cell = cell;
  o.embedding_dim = 3;
  o.hidden_dim = 4;
  o.init_scale = 0.5;
  return o;
}

class RecurrentGradient : public ::testing::TestWithParam<CellKind> {};

TEST_P(RecurrentGradient, MatchesFiniteDifferences) {
  const auto options = small(GetParam());
  ASSERT_LE(RecurrentLM::parameter_count(tiny_vocab().size(), options), 200u);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto model = RecurrentLM::initialize(tiny_vocab(), options, seed);
    const auto data = random_sentences(seed * 31);
    std::vector<double> grad(model.parameter_count());
    model.loss_and_gradient(data, grad);
    const std::vector<double> params(model.parameters().begin(),
                                     model.parameters().end());
    const double err = testing::max_relative_gradient_error(
        params, grad, [&](const std::vector<double>& p) {
          return RecurrentLM(tiny_vocab(), options, seed, p).loss(data);
        });
    EXPECT_LT(err, 1e-4) << "seed " << seed;
  }
}

INSTANTIATE_TEST_SUITE_P(Cells, RecurrentGradient,
                         ::testing::Values(CellKind::kGru, CellKind::kSimple));

TEST(RecurrentLM, LossAndGradientAgreeOnTheLoss) {
  const auto model = RecurrentLM::initialize(tiny_vocab(), small(CellKind::kGru), 3);
  const auto data = random_sentences(5);
  std::vector<double> grad(model.parameter_count());
  EXPECT_EQ(model.loss_and_gradient(data, grad), model.loss(data));
}

TEST(RecurrentLM, SequenceProbabilitiesMatchPrefixQueries) {
  const auto model = RecurrentLM::initialize(tiny_vocab(), small(CellKind::kGru), 4);
  const std::vector<WordId> s = {3, 5, 4, 4};
  const auto seq = model.sequence_probabilities(s);
  ASSERT_EQ(seq.size(), s.size() + 1);
  for (std::size_t i = 0; i < s.size(); ++i) {
    EXPECT_EQ(seq[i], model.prob_next(std::span(s).first(i), s[i]));
  }
  EXPECT_EQ(seq.back(), model.prob_next(s, Vocabulary::kEos));
  EXPECT_EQ(model.next_distribution(s)[Vocabulary::kBos], 0.0);
}

std::vector<std::vector<std::string>> words_corpus() {
  std::vector<std::vector<std::string>> out;
  SplitMix64 rng(99);
  const std::vector<std::string> words = {"the", "dog", "dogs", "runs", "run", "."};
  for (int i = 0; i < 60; ++i) {
    std::vector<std::string> s;
    for (int k = 0; k < 4; ++k) s.push_back(words[rng.uniform_below(words.size())]);
    out.push_back(s);
  }
  return out;
}

TEST(TrainRecurrent, IsDeterministicAndLearns) {
  RecurrentOptions o = small(CellKind::kGru);
  o.min_count = 1;
  o.epochs = 3;
  o.init_scale = 0.1;
  const auto a = train_recurrent(words_corpus(), o, 42);
  const auto b = train_recurrent(words_corpus(), o, 42);
  EXPECT_EQ(a.loss_curve, b.loss_curve);
  EXPECT_TRUE(std::equal(a.model.parameters().begin(), a.model.parameters().end(),
                         b.model.parameters().begin()));
  ASSERT_EQ(a.loss_curve.size(), 4u);
  EXPECT_LT(a.loss_curve.back(), a.loss_curve.front());
  const auto c = train_recurrent(words_corpus(), o, 43);
  EXPECT_NE(a.loss_curve, c.loss_curve);
}

TEST(TrainRecurrent, DivergenceIsReported) {
  RecurrentOptions o = small(CellKind::kSimple);
  o.min_count = 1;
  o.learning_rate = 1e200;
  o.clip_norm = 0.0;
  try {
    train_recurrent(words_corpus(), o, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kNonFiniteLoss);
  }
}

TEST(TrainRecurrent, RejectsBadInput) {
  RecurrentOptions o = small(CellKind::kGru);
  EXPECT_THROW(train_recurrent({}, o, 1), Error);
  o.epochs = 0;
  EXPECT_THROW(train_recurrent(words_corpus(), o, 1), Error);
}

TEST(Adapt, ZeroEpochsKeepsTheModel) {
  RecurrentOptions o = small(CellKind::kGru);
  o.min_count = 1;
  o.epochs = 1;
  const auto base = train_recurrent(words_corpus(), o, 7).model;
  const std::vector<std::vector<std::string>> probe = {{"the", "dog", "runs", "."}};
  AdaptOptions none;
  none.epochs = 0;
  const auto same = adapt(base, words_corpus(), none, probe);
  EXPECT_TRUE(std::equal(same.model.parameters().begin(), same.model.parameters().end(),
                         base.parameters().begin()));
  EXPECT_EQ(same.mean_before(), same.mean_after());
}

TEST(Adapt, ExposureLowersSurprisalOfRepeatedMaterial) {
  RecurrentOptions o = small(CellKind::kGru);
  o.min_count = 1;
  o.epochs = 1;
  const auto base = train_recurrent(words_corpus(), o, 7).model;
  const std::vector<std::vector<std::string>> exposure(20, {"the", "dogs", "run", "."});
  AdaptOptions opts;
  opts.epochs = 3;
  opts.learning_rate = 0.2;
  const auto adapted = adapt(base, exposure, opts, {{"the", "dogs", "run", "."}});
  EXPECT_LT(adapted.mean_after(), adapted.mean_before());
  EXPECT_EQ(adapted.before.size(), 1u);
}

}  // namespace
}  // namespace syneval

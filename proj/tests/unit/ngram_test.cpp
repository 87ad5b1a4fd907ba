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
#include "syneval/ngram.hpp"
#include "test_support.hpp"

namespace syneval {
namespace {

using Corpus = std::vector<std::vector<std::string>>;

Corpus fixture(const std::string& name) {
  return testing::split_lines(testing::slurp(testing::fixture_path(name)));
}

// Every history/word combination over the vocabulary, including unseen ones.
void check_against_hand_counts(const Corpus& corpus, int order) {
  NGramOptions mle;
  mle.order = order;
  mle.add_k.reset();
  mle.min_count = 1;
  const auto model = train_ngram(corpus, mle);
  NGramOptions smooth = mle;
  smooth.add_k = 0.5;
  const auto smoothed = train_ngram(corpus, smooth);
  const testing::HandCounts hand(corpus, order);
  const auto& vocab = model.vocabulary();
  const double outcomes = static_cast<double>(vocab.size() - 1);

  std::vector<std::vector<std::string>> histories;
  for (const auto& [h, c] : hand.histories) {
    std::vector<std::string> words;
    std::string cur;
    for (char ch : h) {
      if (ch == '\x1f') {
        words.push_back(cur);
        cur.clear();
      } else {
        cur += ch;
      }
    }
    histories.push_back(words);
  }
  histories.push_back(std::vector<std::string>(order - 1, "zzz-unseen"));

  for (const auto& h : histories) {
    std::vector<WordId> prefix;
    for (const auto& w : h) {
      if (w != "<s>") prefix.push_back(vocab.lookup(w));
    }
    const auto dist = model.next_distribution(prefix);
    const auto sdist = smoothed.next_distribution(prefix);
    ASSERT_EQ(dist.size(), vocab.size());
    EXPECT_EQ(dist[Vocabulary::kBos], 0.0);
    for (WordId id = 0; id < vocab.size(); ++id) {
      if (id == Vocabulary::kBos) continue;
      const auto& w = vocab.word(id);
      const double expected = hand.mle(h, w);
      if (expected < 0) {
        EXPECT_EQ(dist[id], 1.0 / outcomes);
      } else {
        EXPECT_EQ(dist[id], expected) << w;
      }
      EXPECT_NEAR(sdist[id], hand.add_k(h, w, 0.5, outcomes), 1e-12);
    }
  }
}

TEST(NGram, MaximumLikelihoodMatchesHandCounts) {
  for (const char* name : {"ngram_a.txt", "ngram_b.txt", "ngram_c.txt"}) {
    for (int order : {1, 2, 3}) {
      SCOPED_TRACE(std::string(name) + " order " + std::to_string(order));
      check_against_hand_counts(fixture(name), order);
    }
  }
}

TEST(NGram, DistributionsSumToOne) {
  const auto corpus = fixture("ngram_b.txt");
  const auto model = train_ngram(corpus, NGramOptions{});
  for (std::size_t i = 0; i < 20; ++i) {
    const auto ids = model.vocabulary().encode(corpus[i]);
    for (std::size_t k = 0; k <= ids.size(); ++k) {
      const auto d = model.next_distribution(std::span(ids).first(k));
      double total = 0.0;
      for (double p : d) total += p;
      EXPECT_NEAR(total, 1.0, 1e-12);
    }
  }
}

TEST(NGram, UnigramTotalsCountTokensAndEnds) {
  const auto corpus = fixture("ngram_a.txt");
  NGramOptions o;
  o.min_count = 1;
  const auto model = train_ngram(corpus, o);
  std::uint64_t total = 0;
  for (const auto& [gram, c] : model.counts()[0]) total += c;
  std::size_t tokens = 0;
  for (const auto& s : corpus) tokens += s.size() + 1;
  EXPECT_EQ(total, tokens);
}

TEST(NGram, IdentifierNamesOrderAndSmoothing) {
  const auto corpus = fixture("ngram_a.txt");
  NGramOptions o;
  o.order = 3;
  o.add_k = 0.01;
  EXPECT_EQ(train_ngram(corpus, o).identifier(), "ngram:3:add-k=0.01");
  o.add_k.reset();
  EXPECT_EQ(train_ngram(corpus, o).identifier(), "ngram:3:mle");
}

TEST(NGram, RejectsBadInput) {
  try {
    train_ngram({}, NGramOptions{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kEmptyCorpus);
  }
  NGramOptions bad;
  bad.order = 0;
  EXPECT_THROW(train_ngram(fixture("ngram_a.txt"), bad), Error);
  bad.order = 2;
  bad.add_k = 0.0;
  EXPECT_THROW(train_ngram(fixture("ngram_a.txt"), bad), Error);
}

TEST(NGram, JsonRoundTripPreservesProbabilities) {
  const auto corpus = fixture("ngram_c.txt");
  NGramOptions o;
  o.order = 3;
  const auto model = train_ngram(corpus, o);
  const auto back = NGramModel::from_json(model.to_json());
  const auto ids = model.vocabulary().encode(corpus[3]);
  EXPECT_EQ(model.sequence_probabilities(ids), back.sequence_probabilities(ids));
}

TEST(BigramConfound, FrequentBigramWinsOverGrammar) {
  const auto corpus = fixture("who_is_corpus.txt");
  int who_is = 0, who_crying = 0;
  for (const auto& s : corpus) {
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
      who_is += s[i] == "who" && s[i + 1] == "is";
      who_crying += s[i] == "who" && s[i + 1] == "crying";
    }
  }
  ASSERT_GE(who_is, 20);
  ASSERT_EQ(who_crying, 0);
  NGramOptions o;
  o.min_count = 1;
  const auto model = train_ngram(corpus, o);
  const std::vector<std::string> good = {"is", "the", "little", "boy", "who",
                                         "is", "crying", "hurt", "?"};
  const std::vector<std::string> bad = {"is", "the", "little", "boy", "who",
                                        "crying", "is", "hurt", "?"};
  EXPECT_GT(sentence_logprob(model, good), sentence_logprob(model, bad));
}

}  // namespace
}  // namespace syneval

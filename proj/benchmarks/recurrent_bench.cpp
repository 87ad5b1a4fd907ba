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

#include <benchmark/benchmark.h>

#include "syneval/lexgen.hpp"
#include "syneval/recurrent_lm.hpp"

namespace {

using namespace syneval;

void BM_RecurrentEpoch(benchmark::State& state) {
  const auto corpus = generate_corpus(Lexicon::load_default(), 500, 2);
  RecurrentOptions o;
  o.hidden_dim = static_cast<std::size_t>(state.range(0));
  o.epochs = 1;
  for (auto _ : state) benchmark::DoNotOptimize(train_recurrent(corpus, o, 3));
}
BENCHMARK(BM_RecurrentEpoch)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_RecurrentSequenceProbabilities(benchmark::State& state) {
  const auto corpus = generate_corpus(Lexicon::load_default(), 500, 2);
  RecurrentOptions o;
  o.epochs = 1;
  const auto model = train_recurrent(corpus, o, 3).model;
  const auto ids = model.vocabulary().encode(corpus[0]);
  for (auto _ : state) benchmark::DoNotOptimize(model.sequence_probabilities(ids));
}
BENCHMARK(BM_RecurrentSequenceProbabilities);

}  // namespace

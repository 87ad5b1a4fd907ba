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

// Acceptance run: one PASS/FAIL line per criterion with its wall time.
// Exit status is nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "syneval/corpus.hpp"
#include "syneval/eval.hpp"
#include "syneval/lexgen.hpp"
#include "syneval/ngram.hpp"
#include "syneval/qform.hpp"
#include "syneval/recurrent_lm.hpp"
#include "syneval/rng.hpp"
#include "syneval/transducer.hpp"
#include "syneval_cli/cli.hpp"
#include "test_support.hpp"

namespace {

using namespace syneval;
namespace fs = std::filesystem;
namespace st = syneval::testing;
using Corpus = std::vector<std::vector<std::string>>;

struct Outcome {
  bool ok = true;
  std::string detail;
};

// Records the first failed check; later ones are still evaluated.
struct Checker {
  Outcome out;
  void require(bool condition, const std::string& what) {
    if (!condition && out.ok) {
      out.ok = false;
      out.detail = what;
    }
  }
};

Corpus fixture(const std::string& name) {
  return st::split_lines(st::slurp(st::fixture_path(name)));
}

const Lexicon& lexicon() {
  static const Lexicon lex = Lexicon::load_default();
  return lex;
}

// ---- 1 --------------------------------------------------------------------

Outcome ngram_oracle() {
  Checker c;
  for (const char* name : {"ngram_a.txt", "ngram_b.txt", "ngram_c.txt"}) {
    const auto corpus = fixture(name);
    std::size_t tokens = 0;
    for (const auto& s : corpus) tokens += s.size();
    c.require(tokens <= 1000, std::string(name) + " exceeds 1000 tokens");
    for (int order : {1, 2, 3}) {
      NGramOptions mle;
      mle.order = order;
      mle.add_k.reset();
      mle.min_count = 1;
      NGramOptions smooth = mle;
      smooth.add_k = 0.1;
      const auto m = train_ngram(corpus, mle);
      const auto s = train_ngram(corpus, smooth);
      const st::HandCounts hand(corpus, order);
      const auto& vocab = m.vocabulary();
      const double outcomes = static_cast<double>(vocab.size() - 1);
      // Every history observed in the corpus, in model terms.
      for (const auto& sentence : corpus) {
        std::vector<std::string> padded(order - 1, "<s>");
        padded.insert(padded.end(), sentence.begin(), sentence.end());
        for (std::size_t end = order - 1; end <= padded.size(); ++end) {
          const std::vector<std::string> history(padded.begin() + (end + 1 - order),
                                                 padded.begin() + end);
          std::vector<WordId> prefix;
          for (std::size_t k = order - 1; k < end; ++k) prefix.push_back(vocab.lookup(padded[k]));
          const auto dm = m.next_distribution(prefix);
          const auto ds = s.next_distribution(prefix);
          for (WordId id = 0; id < vocab.size(); ++id) {
            if (id == Vocabulary::kBos) continue;
            const auto& w = vocab.word(id);
            c.require(dm[id] == hand.mle(history, w),
                      std::string(name) + ": MLE mismatch for " + w);
            c.require(std::abs(ds[id] - hand.add_k(history, w, 0.1, outcomes)) <= 1e-12,
                      std::string(name) + ": add-k mismatch for " + w);
          }
        }
      }
    }
  }
  return c.out;
}

// ---- 2 --------------------------------------------------------------------

Outcome bigram_confound() {
  Checker c;
  const auto corpus = fixture("who_is_corpus.txt");
  int who_is = 0, who_crying = 0;
  for (const auto& s : corpus) {
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
      who_is += s[i] == "who" && s[i + 1] == "is";
      who_crying += s[i] == "who" && s[i + 1] == "crying";
    }
  }
  c.require(who_is >= 20, "corpus has fewer than 20 'who is'");
  c.require(who_crying == 0, "corpus contains 'who crying'");
  NGramOptions o;
  o.min_count = 1;
  const auto bigram = train_ngram(corpus, o);
  const double b = sentence_logprob(
      bigram, {"is", "the", "little", "boy", "who", "is", "crying", "hurt", "?"});
  const double cc = sentence_logprob(
      bigram, {"is", "the", "little", "boy", "who", "crying", "is", "hurt", "?"});
  char buf[96];
  std::snprintf(buf, sizeof(buf), "log2 P(b)=%.4f log2 P(c)=%.4f", b, cc);
  c.require(b > cc, buf);
  c.out.detail = c.out.ok ? buf : c.out.detail;
  return c.out;
}

// ---- 3 --------------------------------------------------------------------

RecurrentLM small_rnn(std::uint64_t seed) {
  RecurrentOptions o;
  o.embedding_dim = 16;
  o.hidden_dim = 16;
  o.epochs = 1;
  return train_recurrent(generate_corpus(lexicon(), 500, seed), o, seed).model;
}

std::vector<WordId> random_words(const Vocabulary& v, SplitMix64& rng, std::size_t n) {
  std::vector<WordId> out;
  while (out.size() < n) {
    const auto id = static_cast<WordId>(rng.uniform_below(v.size()));
    if (id != Vocabulary::kBos && id != Vocabulary::kEos) out.push_back(id);
  }
  return out;
}

Outcome truncation_blindness() {
  Checker c;
  const auto base = std::make_shared<RecurrentLM>(small_rnn(3));
  const auto truncated = truncate_context(base, 4);
  const auto& vocab = base->vocabulary();
  SplitMix64 rng(2024);
  bool context_matters = false;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto tail = random_words(vocab, rng, 4);
    auto a = random_words(vocab, rng, 1 + rng.uniform_below(8));
    auto b = random_words(vocab, rng, 1 + rng.uniform_below(8));
    a.insert(a.end(), tail.begin(), tail.end());
    b.insert(b.end(), tail.begin(), tail.end());
    const auto da = truncated->next_distribution(a);
    c.require(da == truncated->next_distribution(b), "distributions differ");
    const WordId w = static_cast<WordId>(2 + rng.uniform_below(vocab.size() - 2));
    c.require(truncated->prob_next(a, w) == truncated->prob_next(b, w), "scores differ");
    context_matters |= base->next_distribution(a) != base->next_distribution(b);
  }
  c.require(context_matters, "base model ignores context; the check is vacuous");
  return c.out;
}

// ---- 4 --------------------------------------------------------------------

std::vector<st::ScanWord> scan_words(const std::vector<Token>& tokens) {
  std::vector<st::ScanWord> out;
  for (const auto& t : tokens) {
    out.push_back({t.pos == Pos::kNoun, t.number == Number::kSingular ? 1
                                        : t.number == Number::kPlural ? -1
                                                                      : 0});
  }
  return out;
}

Outcome attractor_counting() {
  Checker c;
  AgreementSuiteConfig cfg;
  cfg.per_cell = 20;
  cfg.seed = 4;
  std::size_t items = 0;
  for (const auto& inst : generate_agreement_suite(lexicon(), cfg)) {
    const auto head = *inst.condition.head_index;
    const int scan = st::scan_attractors(scan_words(inst.tokens), head, inst.tokens.size());
    c.require(count_attractors(inst.tokens, head, inst.tokens.size()) == scan,
              "count_attractors disagrees with scan");
    c.require(inst.condition.attractor_count == scan, "suite metadata disagrees with scan");
    ++items;
  }
  for (const auto& pair : generate_minimal_pair_suite(lexicon(), 20, 4)) {
    const auto& cond = pair.condition;
    if (!cond.head_index || !cond.target_index) continue;
    const int scan = st::scan_attractors(scan_words(pair.grammatical), *cond.head_index,
                                         *cond.target_index);
    c.require(count_attractors(pair.grammatical, *cond.head_index, *cond.target_index) == scan,
              "count_attractors disagrees with scan on a minimal pair");
    ++items;
  }
  for (const char* name : {"agreement_200.conllu", "two_sentences.conllu", "ratio.conllu",
                           "no_number.conllu"}) {
    const auto path = st::fixture_path(name);
    std::size_t skipped = 0;
    const auto expected = st::expected_dependencies(st::raw_conllu_rows(st::slurp(path)),
                                                    &skipped);
    const auto sentences = read_conllu(path);
    const auto ex = extract_dependencies(sentences);
    c.require(ex.dependencies.size() == expected.size(),
              std::string(name) + ": dependency count differs");
    for (std::size_t k = 0; k < std::min(expected.size(), ex.dependencies.size()); ++k) {
      const auto& d = ex.dependencies[k];
      c.require(std::make_tuple(d.sentence, d.subject_index, d.verb_index,
                                d.attractor_count) == expected[k],
                std::string(name) + ": dependency differs from scan");
      ++items;
    }
  }
  const auto ratio = extract_dependencies(read_conllu(st::fixture_path("ratio.conllu")));
  c.require(ratio.dependencies.size() == 1 && ratio.dependencies[0].attractor_count == 3,
            "ratio sentence does not yield 3 attractors");
  if (c.out.ok) c.out.detail = std::to_string(items) + " items";
  return c.out;
}

// ---- 5 --------------------------------------------------------------------

Outcome nonce_invariants() {
  Checker c;
  const auto pairs = generate_minimal_pair_suite(lexicon(), 40, 5);
  c.require(pairs.size() >= 1000 / 2, "too few source sentences");
  std::size_t n = 0;
  for (std::size_t i = 0; n < 1000; ++i) {
    const auto& p = pairs[i % pairs.size()];
    const auto& s = (i / pairs.size()) % 2 == 0 ? p.grammatical : p.ungrammatical;
    const auto out = nonceify(s, lexicon(), derive_seed(11, std::to_string(i)));
    ++n;
    c.require(out.size() == s.size(), "length changed");
    if (out.size() != s.size()) continue;
    for (std::size_t k = 0; k < s.size(); ++k) {
      c.require(out[k].pos == s[k].pos && out[k].number == s[k].number,
                "pos or number changed");
      if (s[k].content) {
        c.require(out[k].surface != s[k].surface, "content word unchanged");
      } else {
        c.require(out[k] == s[k], "function word moved or changed");
      }
    }
  }
  if (c.out.ok) c.out.detail = std::to_string(n) + " sentences";
  return c.out;
}

// ---- 6 --------------------------------------------------------------------

Outcome gradients() {
  Checker c;
  const auto lm_vocab = Vocabulary::from_words({"<unk>", "<s>", "</s>", "a", "b", "c"});
  const auto td_vocab =
      Vocabulary::from_words({"<unk>", "<s>", "</s>", "the", "dog", "can", "run", "?"});
  double worst = 0.0;
  for (CellKind cell : {CellKind::kGru, CellKind::kSimple}) {
    RecurrentOptions ro;
    ro.cell = cell;
    ro.embedding_dim = 3;
    ro.hidden_dim = 4;
    ro.init_scale = 0.5;
    TransducerOptions to;
    to.cell = cell;
    to.embedding_dim = 2;
    to.hidden_dim = 3;
    to.init_scale = 0.5;
    c.require(RecurrentLM::parameter_count(lm_vocab.size(), ro) <= 200, "LM too large");
    c.require(TransducerModel::parameter_count(td_vocab.size(), to) <= 200,
              "transducer too large");
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      SplitMix64 rng(derive_seed(seed, "gradient-data"));
      std::vector<std::vector<WordId>> sentences(3);
      for (auto& s : sentences) {
        for (std::uint64_t i = 0, n = 2 + rng.uniform_below(4); i < n; ++i) {
          s.push_back(static_cast<WordId>(3 + rng.uniform_below(3)));
        }
      }
      const auto lm = RecurrentLM::initialize(lm_vocab, ro, seed);
      std::vector<double> g(lm.parameter_count());
      lm.loss_and_gradient(sentences, g);
      const std::vector<double> p(lm.parameters().begin(), lm.parameters().end());
      worst = std::max(worst, st::max_relative_gradient_error(p, g, [&](const auto& q) {
        return RecurrentLM(lm_vocab, ro, seed, q).loss(sentences);
      }));

      std::vector<TransducerModel::EncodedPair> pairs(2);
      for (auto& [in, target] : pairs) {
        for (std::uint64_t i = 0, n = 2 + rng.uniform_below(3); i < n; ++i) {
          in.push_back(static_cast<WordId>(3 + rng.uniform_below(5)));
        }
        for (std::uint64_t i = 0, n = 1 + rng.uniform_below(3); i < n; ++i) {
          target.push_back(static_cast<WordId>(3 + rng.uniform_below(5)));
        }
      }
      const auto td = TransducerModel::initialize(td_vocab, to, seed);
      std::vector<double> tg(td.parameter_count());
      td.loss_and_gradient(pairs, tg);
      const std::vector<double> tp(td.parameters().begin(), td.parameters().end());
      worst = std::max(worst, st::max_relative_gradient_error(tp, tg, [&](const auto& q) {
        return TransducerModel(td_vocab, to, seed, q).loss(pairs);
      }));
    }
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "max relative error %.2e", worst);
  c.require(worst < 1e-4, buf);
  if (c.out.ok) c.out.detail = buf;
  return c.out;
}

// ---- 7 / 8 ----------------------------------------------------------------

st::FragmentReader reader_for(const qform::FragmentConfig& cfg) {
  st::FragmentReader r;
  const auto& l = cfg.lexicon;
  r.dets.insert(l.determiners.begin(), l.determiners.end());
  r.nouns.insert(l.nouns.begin(), l.nouns.end());
  r.auxes.insert(l.auxiliaries.begin(), l.auxiliaries.end());
  for (const auto& [b, g] : l.intransitive) r.intransitive.insert({b, g});
  for (const auto& [b, g] : l.transitive) r.transitive.insert({b, g});
  r.object_rc = cfg.object_rc;
  return r;
}

Outcome rule_divergence() {
  Checker c;
  const qform::FragmentConfig cfg;
  const auto all = qform::generate_fragment(cfg);
  c.require(all.size() == qform::fragment_size(cfg), "enumeration size differs from count");
  const auto reader = reader_for(cfg);
  std::size_t diverging = 0;
  for (const auto& s : all) {
    const auto r = reader.read(s.tokens);
    c.require(r.ok, "sentence outside the fragment");
    const bool presubject = r.first_aux < r.main_aux;
    c.require(presubject == s.has_presubject_rc_aux, "flag disagrees with the reader");
    const auto lin = qform::linear_rule(s);
    const auto str = qform::structural_rule(s);
    c.require((lin != str) == presubject, "rules diverge off the flagged set");
    diverging += lin != str;
    c.require(qform::classify_output(s, lin) != qform::Category::kOther, "linear is other");
    c.require(qform::classify_output(s, str) != qform::Category::kOther,
              "structural is other");
  }
  if (c.out.ok) {
    c.out.detail = std::to_string(all.size()) + " sentences, " + std::to_string(diverging) +
                   " diverging";
  }
  return c.out;
}

Outcome withholding() {
  Checker c;
  qform::FragmentConfig cfg;
  cfg.exhaustive = false;
  cfg.sample_size = 5000;
  cfg.seed = 8;
  const auto reader = reader_for(cfg);
  const auto d = qform::build_dataset(qform::generate_fragment(cfg), true, 8, 0.2);
  for (const auto& p : d.train) {
    const auto r = reader.read(p.declarative.tokens);
    c.require(!p.disambiguating && !(r.first_aux < r.main_aux),
              "disambiguating pair in training data");
    c.require(qform::linear_rule(p.declarative) == qform::structural_rule(p.declarative),
              "training pair separates the rules");
  }
  c.require(!d.test_disambiguating.empty(), "no disambiguating test pairs");
  if (c.out.ok) c.out.detail = std::to_string(d.train.size()) + " training pairs";
  return c.out;
}

// ---- 9 --------------------------------------------------------------------

struct CwdGuard {
  fs::path saved = fs::current_path();
  ~CwdGuard() { fs::current_path(saved); }
};

bool run_pipeline(const fs::path& dir, std::string* why) {
  fs::remove_all(dir);
  fs::create_directories(dir);
  CwdGuard guard;
  fs::current_path(dir);
  const std::vector<std::vector<std::string>> steps = {
      {"generate", "--suite", "agreement", "--seed", "42", "--out", "suite.jsonl"},
      {"generate", "--suite", "corpus", "--sentences", "10000", "--seed", "42", "--out",
       "corpus.txt"},
      {"train", "corpus.txt", "--model", "rnn", "--seed", "42", "--hidden", "64",
       "--embedding", "32", "--epochs", "1", "--out", "model.bin"},
      {"eval", "--model", "model.bin", "--suite", "suite.jsonl", "--report", "report.json",
       "--tsv", "report.tsv", "--asymmetry", "asymmetry.json", "--items"},
  };
  for (const auto& step : steps) {
    if (const int code = cli::run(step); code != cli::kExitOk) {
      *why = step.front() + " exited with " + std::to_string(code);
      return false;
    }
  }
  return true;
}

Outcome pipeline_determinism() {
  Checker c;
  const auto root = fs::temp_directory_path() / "syneval_acceptance_pipeline";
  std::string why;
  c.require(run_pipeline(root / "a", &why), why);
  c.require(run_pipeline(root / "b", &why), why);
  if (!c.out.ok) return c.out;
  std::set<std::string> names_a, names_b;
  for (const auto& e : fs::directory_iterator(root / "a")) names_a.insert(e.path().filename());
  for (const auto& e : fs::directory_iterator(root / "b")) names_b.insert(e.path().filename());
  c.require(names_a == names_b, "artifact sets differ");
  for (const auto& name : names_a) {
    c.require(st::slurp(root / "a" / name) == st::slurp(root / "b" / name),
              name + " differs between runs");
  }
  if (c.out.ok) c.out.detail = std::to_string(names_a.size()) + " artifacts identical";
  fs::remove_all(root);
  return c.out;
}

// ---- 10 -------------------------------------------------------------------

Outcome surprisal_identity() {
  Checker c;
  const auto corpus = generate_corpus(lexicon(), 2000, 21);
  const Corpus sentences(corpus.begin(), corpus.begin() + 500);
  std::vector<SuiteRecord> records;
  for (auto& p : generate_minimal_pair_suite(lexicon(), 5, 21)) records.push_back(p);
  NGramOptions no;
  no.order = 3;
  const auto ngram = std::make_shared<NGramModel>(train_ngram(corpus, no));
  const auto rnn = std::make_shared<RecurrentLM>(small_rnn(21));
  std::vector<std::shared_ptr<const LanguageModel>> models = {
      std::make_shared<UniformModel>(ngram->vocabulary()),
      ngram,
      rnn,
      truncate_context(rnn, 4),
      std::make_shared<MetadataOracle>(records, lexicon()),
  };
  double worst = 0.0;
  for (const auto& m : models) {
    for (const auto& s : sentences) {
      const double diff = std::abs(surprisal(*m, s).total() + sentence_logprob(*m, s));
      worst = std::max(worst, diff);
    }
  }
  char buf[96];
  std::snprintf(buf, sizeof(buf), "%zu models, max |sum + log2 P| = %.2e", models.size(),
                worst);
  c.require(worst <= 1e-9, buf);
  if (c.out.ok) c.out.detail = buf;
  return c.out;
}

// ---- 11 -------------------------------------------------------------------

Outcome oracle_bounds() {
  Checker c;
  AgreementSuiteConfig cfg;
  cfg.seed = 6;
  std::vector<SuiteRecord> agreement, pairs, mixed;
  for (auto& i : generate_agreement_suite(lexicon(), cfg)) agreement.push_back(i);
  for (auto& p : generate_minimal_pair_suite(lexicon(), 10, 6)) pairs.push_back(p);
  mixed = agreement;
  mixed.insert(mixed.end(), pairs.begin(), pairs.end());
  std::size_t items = 0;
  for (const auto* suite : {&agreement, &pairs, &mixed}) {
    const MetadataOracle oracle(*suite, lexicon());
    const auto r = evaluate_suite(oracle, *suite);
    c.require(r.overall_accuracy() == 1.0, "oracle below 100%");
    Vocabulary v;
    for (const auto& e : lexicon().entries()) v.add(e.surface);
    const UniformModel uniform(v);
    const auto u = evaluate_suite(uniform, *suite);
    c.require(u.overall_accuracy() == 0.0, "uniform above 0%");
    c.require(u.tie_count == suite->size(), "uniform ties not fully counted");
    std::size_t cell_ties = 0;
    for (const auto& cell : u.cells) cell_ties += cell.n_ties;
    c.require(cell_ties == u.tie_count, "cell ties do not sum to the total");
    items += suite->size();
  }
  if (c.out.ok) c.out.detail = std::to_string(items) + " items";
  return c.out;
}

// ---- 12 -------------------------------------------------------------------

// Fixture experiments. The language model sees 10k template sentences;
// the transducer learns from the withheld split of a small fragment whose
// objects may carry relative clauses, so "that" occurs in training.
Outcome pinned_regression() {
  Checker c;
  const auto corpus = generate_corpus(lexicon(), 10000, 42);
  RecurrentOptions ro;
  ro.learning_rate = 0.2;
  ro.epochs = 2;
  const auto rnn = train_recurrent(corpus, ro, 42).model;
  AgreementSuiteConfig cfg;
  cfg.seed = 42;
  const auto suite = generate_agreement_suite(lexicon(), cfg);
  const auto report =
      number_prediction(rnn, suite, {"agreement-seed42", std::string(kDefaultTimestamp)});
  const auto agreement = to_json(report, true).dump(2) + "\n" +
                         to_json(asymmetry_analysis(report)).dump(2) + "\n";
  c.require(st::matches_golden("fixture_rnn_agreement_report.json", agreement),
            "agreement report differs from golden");

  qform::FragmentConfig fragment;
  fragment.lexicon.determiners = {"my", "your"};
  fragment.lexicon.nouns = {"walrus", "newt", "yak"};
  fragment.object_rc = true;
  const auto data = qform::build_dataset(qform::generate_fragment(fragment), true,
                                         derive_seed(42, "qform/dataset"));
  TransducerOptions to;
  to.learning_rate = 0.3;
  to.epochs = 5;
  const auto transducer = qform::train_transducer(data.train, to, 42).model;
  std::vector<qform::TransformPair> disambiguating;
  for (std::size_t i : seeded_permutation(data.test_disambiguating.size(), 42)) {
    if (disambiguating.size() == 1000) break;
    disambiguating.push_back(data.test_disambiguating[i]);
  }
  const auto generalization = qform::evaluate_transducer(
      qform::NeuralTransducer(transducer),
      {{"test_ambiguous", data.test_ambiguous}, {"test_disambiguating", disambiguating}});
  c.require(st::matches_golden("fixture_qform_report.json",
                               qform::to_json(generalization).dump(2) + "\n"),
            "qform report differs from golden");
  if (c.out.ok) {
    const auto& fw = generalization.sets[1].first_word;
    char buf[200];
    std::snprintf(buf, sizeof(buf),
                  "agreement accuracy %.3f; qform ambiguous exact %.3f, disambiguating "
                  "fronts first aux %zu / main aux %zu of %zu",
                  report.overall_accuracy(), generalization.sets[0].accuracy(),
                  fw.at("first-aux"), fw.at("main-aux"), generalization.sets[1].n_items);
    c.out.detail = buf;
  }
  return c.out;
}

struct Criterion {
  int id;
  std::string name;
  double budget_seconds;
  std::function<Outcome()> check;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "n-gram oracle equivalence", 1, ngram_oracle},
      {2, "bigram confound reproduction", 1, bigram_confound},
      {3, "truncated-context blindness", 5, truncation_blindness},
      {4, "attractor counting", 5, attractor_counting},
      {5, "nonce invariants", 5, nonce_invariants},
      {6, "gradient correctness", 30, gradients},
      {7, "rule-divergence brute force", 10, rule_divergence},
      {8, "withholding soundness", 1, withholding},
      {9, "end-to-end determinism", 600, pipeline_determinism},
      {10, "surprisal identity", 10, surprisal_identity},
      {11, "oracle-bound sanity", 5, oracle_bounds},
      {12, "pinned-seed experiment regression", 600, pinned_regression},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.check();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (out.ok && seconds >= c.budget_seconds) {
      out = {false, "over the " + std::to_string(static_cast<int>(c.budget_seconds)) +
                        " s budget"};
    }
    failures += out.ok ? 0 : 1;
    std::printf("%s %2d %-36s %8.3f s  %s\n", out.ok ? "PASS" : "FAIL", c.id,
                c.name.c_str(), seconds, out.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}

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

#include <algorithm>
#include <fstream>
#include <map>
#include <set>

#include "gtest/gtest.h"
#include "syneval/error.hpp"
#include "syneval/lexgen.hpp"
#include "test_support.hpp"

namespace syneval {
namespace {

using testing::ScanWord;

std::vector<ScanWord> scan_words(const std::vector<Token>& tokens) {
  std::vector<ScanWord> out;
  for (const auto& t : tokens) {
    out.push_back({t.pos == Pos::kNoun,
                   t.number == Number::kSingular ? 1
                   : t.number == Number::kPlural ? -1
                                                 : 0});
  }
  return out;
}

// Raw lexicon rows, read straight from the JSON file.
struct RawEntry {
  std::string surface, lemma, pos, number, subcat;
};

std::vector<RawEntry> raw_lexicon() {
  std::ifstream in(Lexicon::default_path());
  const auto j = nlohmann::json::parse(in);
  std::vector<RawEntry> out;
  for (const auto& e : j.at("entries")) {
    out.push_back({e.at("surface"), e.at("lemma"), e.at("pos"), e.at("number"),
                   e.value("subcat", "")});
  }
  return out;
}

Template near_template() {
  Template t;
  t.id = "test_near";
  t.phenomenon = Phenomenon::kAgreementPp;
  t.intervener = Intervener::kPp;
  t.slots = {LiteralSlot{"the", {}},
             CategorySlot{Pos::kNoun, Number::kSingular, SlotRole::kHead, "inanimate"},
             LiteralSlot{"near", {}},
             LiteralSlot{"the", {}},
             CategorySlot{Pos::kNoun, Number::kPlural, SlotRole::kAttractor, "inanimate"},
             CategorySlot{Pos::kVerb, Number::kSingular, SlotRole::kTarget, "intransitive"},
             LiteralSlot{".", {}}};
  t.head_slot = 1;
  t.attractor_slots = {4};
  t.target_slot = 5;
  return t;
}

TEST(ExpandTemplate, ExhaustiveMatchesIndependentCrossProduct) {
  const auto lex = Lexicon::load_default();
  const auto raw = raw_lexicon();
  auto pick = [&](const std::string& pos, const std::string& number,
                  const std::string& subcat) {
    std::vector<std::string> out;
    for (const auto& e : raw) {
      if (e.pos == pos && e.number == number && e.subcat == subcat) out.push_back(e.surface);
    }
    return out;
  };
  std::map<std::string, std::string> lemma;
  for (const auto& e : raw) lemma[e.surface] = e.lemma;

  const auto all = testing::cross_product(
      {{"the"}, pick("NOUN", "singular", "inanimate"), {"near"}, {"the"},
       pick("NOUN", "plural", "inanimate"), pick("VERB", "singular", "intransitive"),
       {"."}});
  std::vector<std::vector<std::string>> expected;
  for (const auto& s : all) {
    if (lemma[s[1]] != lemma[s[4]]) expected.push_back(s);
  }

  const auto t = near_template();
  EXPECT_EQ(cross_product_size(t, lex), all.size());
  const auto items = expand_template(t, lex, Exhaustive{});
  ASSERT_EQ(items.size(), expected.size());
  for (std::size_t i = 0; i < items.size(); ++i) {
    ASSERT_EQ(surfaces(items[i].pair.grammatical), expected[i]) << i;
  }
}

TEST(ExpandTemplate, PairsDifferOnlyAtTheTarget) {
  const auto lex = Lexicon::load_default();
  for (const auto& item : expand_template(near_template(), lex, Sampled{200, 1})) {
    const auto& p = item.pair;
    ASSERT_EQ(p.grammatical.size(), p.ungrammatical.size());
    for (std::size_t i = 0; i < p.grammatical.size(); ++i) {
      EXPECT_EQ(p.grammatical[i] == p.ungrammatical[i],
                i < p.span_start || i >= p.span_end);
    }
    ASSERT_TRUE(item.instance);
    EXPECT_EQ(item.instance->tokens.size(), 5u);
    EXPECT_EQ(item.instance->correct.number, Number::kSingular);
    EXPECT_EQ(item.instance->incorrect.number, Number::kPlural);
    EXPECT_TRUE(check_agreement(p).grammatical_valid);
  }
}

TEST(ExpandTemplate, SamplingIsDistinctDeterministicAndBounded) {
  const auto lex = Lexicon::load_default();
  const auto t = near_template();
  const auto a = expand_template(t, lex, Sampled{300, 9});
  const auto b = expand_template(t, lex, Sampled{300, 9});
  const auto c = expand_template(t, lex, Sampled{300, 10});
  ASSERT_EQ(a.size(), 300u);
  std::set<std::string> seen;
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].pair, b[i].pair);
    seen.insert(join_surfaces(a[i].pair.grammatical));
  }
  EXPECT_EQ(seen.size(), 300u);
  bool differs = false;
  for (std::size_t i = 0; i < a.size(); ++i) differs |= !(a[i].pair == c[i].pair);
  EXPECT_TRUE(differs);

  const auto exhaustive = expand_template(t, lex, Exhaustive{});
  try {
    expand_template(t, lex, Sampled{exhaustive.size() + 1, 9});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kSampleTooLarge);
  }
}

TEST(ExpandTemplate, EmptyClassIsReported) {
  auto t = near_template();
  t.slots[5] = CategorySlot{Pos::kVerb, Number::kSingular, SlotRole::kTarget, "ditransitive"};
  try {
    expand_template(t, Lexicon::load_default(), Exhaustive{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kEmptyLexicalClass);
  }
}

bool contains(const std::vector<ExpandedItem>& items, const std::string& good,
              const std::string& bad) {
  return std::any_of(items.begin(), items.end(), [&](const ExpandedItem& it) {
    return join_surfaces(it.pair.grammatical) == good &&
           join_surfaces(it.pair.ungrammatical) == bad;
  });
}

TEST(BuiltinTemplates, CoverThePublishedExamples) {
  const auto lex = Lexicon::load_default();
  auto expand = [&](const std::string& id) {
    return expand_template(*find_template(id), lex, Exhaustive{});
  };
  EXPECT_TRUE(contains(expand("agr_orc1_sg"), "the farmer that the parents love swims .",
                       "the farmer that the parents love swim ."));
  EXPECT_TRUE(contains(expand("refl_orc_sg"),
                       "the manager that the architects like doubted himself .",
                       "the manager that the architects like doubted themselves ."));
  EXPECT_TRUE(contains(expand("npi_orc_pl"),
                       "no authors that the guard likes have ever been famous .",
                       "the authors that no guard likes have ever been famous ."));
}

TEST(BuiltinTemplates, AllValidateAndEndInPunctuation) {
  for (const auto& t : builtin_templates()) {
    EXPECT_NO_THROW(validate_template(t)) << t.id;
    const auto* last = std::get_if<LiteralSlot>(&t.slots.back());
    ASSERT_TRUE(last) << t.id;
    EXPECT_EQ(last->surface, ".");
  }
}

TEST(AgreementSuite, CellsAreBalancedAndCountsMatchTheScan) {
  const auto lex = Lexicon::load_default();
  AgreementSuiteConfig cfg;
  cfg.per_cell = 6;
  cfg.seed = 4;
  const auto suite = generate_agreement_suite(lex, cfg);
  std::map<std::tuple<int, Number, Intervener>, int> cells;
  for (const auto& inst : suite) {
    const auto& c = inst.condition;
    ++cells[{c.attractor_count, c.head_number, c.intervener}];
    EXPECT_EQ(inst.correct.number, c.head_number);
    EXPECT_EQ(inst.incorrect.number, opposite(c.head_number));
    EXPECT_EQ(testing::scan_attractors(scan_words(inst.tokens), *c.head_index,
                                       inst.tokens.size()),
              c.attractor_count);
  }
  // Zero attractors: no intervener; one to four: PP and RC; both numbers.
  EXPECT_EQ(cells.size(), 2u + 4u * 2u * 2u);
  for (const auto& [key, n] : cells) EXPECT_EQ(n, 6);
  EXPECT_EQ(suite.size(), 18u * 6u);
}

TEST(AgreementSuite, SeedDeterminesTheSuite) {
  const auto lex = Lexicon::load_default();
  AgreementSuiteConfig cfg;
  cfg.per_cell = 3;
  cfg.seed = 8;
  EXPECT_EQ(generate_agreement_suite(lex, cfg), generate_agreement_suite(lex, cfg));
  auto other = cfg;
  other.seed = 9;
  EXPECT_NE(generate_agreement_suite(lex, cfg), generate_agreement_suite(lex, other));
}

TEST(AgreementSuite, UnreachableCellIsAnError) {
  AgreementSuiteConfig cfg;
  cfg.attractor_counts = {1};
  try {
    generate_agreement_suite(Lexicon::load_default(), cfg, {near_template()});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kNoTemplateForCell);
  }
  cfg.attractor_counts = {7};
  EXPECT_THROW(generate_agreement_suite(Lexicon::load_default(), cfg), Error);
}

TEST(MinimalPairSuite, EveryPairIsWellFormed) {
  const auto lex = Lexicon::load_default();
  const auto pairs = generate_minimal_pair_suite(lex, 5, 2);
  std::set<Phenomenon> phenomena;
  for (const auto& p : pairs) {
    phenomena.insert(p.condition.phenomenon);
    const auto check = check_agreement(p);
    EXPECT_TRUE(check.grammatical_valid) << check.description;
  }
  EXPECT_EQ(phenomena.size(), 5u);
}

TEST(CountAttractors, CountsOppositeNumberNounsInBetween) {
  const auto lex = Lexicon::load_default();
  std::vector<Token> s;
  for (const char* w : {"the", "key", "to", "the", "cabinets", "near", "the", "doors", "is"}) {
    s.push_back(*lex.find(w));
  }
  EXPECT_EQ(count_attractors(s, 1, 8), 2);
  EXPECT_EQ(count_attractors(s, 1, 5), 1);
  EXPECT_EQ(count_attractors(s, 1, 2), 0);
  try {
    count_attractors(s, 0, 8);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kHeadNotNoun);
  }
  EXPECT_THROW(count_attractors(s, 5, 2), Error);
}

TEST(Nonceify, PreservesStructureAndReplacesContent) {
  const auto lex = Lexicon::load_default();
  const auto pairs = generate_minimal_pair_suite(lex, 20, 6);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& s = pairs[i].grammatical;
    const auto n = nonceify(s, lex, i);
    ASSERT_EQ(n.size(), s.size());
    for (std::size_t k = 0; k < s.size(); ++k) {
      EXPECT_EQ(n[k].pos, s[k].pos);
      EXPECT_EQ(n[k].number, s[k].number);
      if (s[k].content) {
        EXPECT_NE(n[k].surface, s[k].surface);
      } else {
        EXPECT_EQ(n[k], s[k]);
      }
    }
    EXPECT_EQ(n, nonceify(s, lex, i));
  }
}

TEST(Nonceify, SingletonClassCannotBeReplaced) {
  std::vector<Token> entries = {make_token("cat", "cat", Pos::kNoun, Number::kSingular),
                                make_token("cats", "cat", Pos::kNoun, Number::kPlural)};
  const Lexicon tiny(entries, {}, {});
  try {
    nonceify({entries[0]}, tiny, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kClassTooSmall);
  }
}

TEST(CheckAgreement, RejectsMalformedPairs) {
  const auto lex = Lexicon::load_default();
  auto pair = generate_minimal_pair_suite(lex, 1, 1).front();
  auto same = pair;
  same.ungrammatical = same.grammatical;
  const auto degenerate = check_agreement(same);
  EXPECT_FALSE(degenerate.grammatical_valid);
  EXPECT_EQ(degenerate.description.rfind("malformed", 0), 0u);
  auto bare = pair;
  bare.condition.head_index.reset();
  try {
    check_agreement(bare);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kMissingMetadata);
  }
  const auto ok = check_agreement(pair);
  EXPECT_TRUE(ok.grammatical_valid);
  EXPECT_EQ(ok.description.rfind("number mismatch", 0), 0u);
}

TEST(GenerateCorpus, SentencesAreGrammaticalSurfaces) {
  const auto lex = Lexicon::load_default();
  const auto corpus = generate_corpus(lex, 50, 3);
  ASSERT_EQ(corpus.size(), 50u);
  for (const auto& s : corpus) EXPECT_EQ(s.back(), ".");
  EXPECT_EQ(corpus, generate_corpus(lex, 50, 3));
}

}  // namespace
}  // namespace syneval

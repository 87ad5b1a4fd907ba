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

#include "syneval/qform.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "syneval/error.hpp"
#include "syneval/rng.hpp"
#include "syneval/suite.hpp"

namespace syneval::qform {

FragmentLexicon FragmentLexicon::from_json(const nlohmann::json& j) {
  FragmentLexicon lex;
  lex.determiners = j.at("determiners").get<std::vector<std::string>>();
  lex.nouns = j.at("nouns").get<std::vector<std::string>>();
  lex.auxiliaries = j.at("auxiliaries").get<std::vector<std::string>>();
  lex.intransitive =
      j.at("intransitive").get<std::vector<std::pair<std::string, std::string>>>();
  lex.transitive =
      j.at("transitive").get<std::vector<std::pair<std::string, std::string>>>();
  lex.progressive_auxiliaries =
      j.value("progressive_auxiliaries", std::vector<std::string>{"is"});
  return lex;
}

nlohmann::json FragmentLexicon::to_json() const {
  return {{"determiners", determiners},
          {"nouns", nouns},
          {"auxiliaries", auxiliaries},
          {"intransitive", intransitive},
          {"transitive", transitive},
          {"progressive_auxiliaries", progressive_auxiliaries}};
}

namespace {

struct Phrase {
  std::vector<std::string> tokens;
  std::string bracket;
  std::vector<std::size_t> aux_positions;
};

class Enumerator {
 public:
  explicit Enumerator(const FragmentConfig& c) : c_(c) {
    const auto& lex = c_.lexicon;
    auto require = [](bool ok, const char* what) {
      if (!ok) {
        throw Error(ErrorKind::kEmptyLexicalClass,
                    std::string("fragment lexicon has no ") + what);
      }
    };
    require(!lex.determiners.empty(), "determiners");
    require(!lex.nouns.empty(), "nouns");
    require(!lex.auxiliaries.empty(), "auxiliaries");
    require(!lex.intransitive.empty() || !lex.transitive.empty(), "verbs");
    if (c_.max_rc_depth < 0) {
      throw Error(ErrorKind::kInvalidArgument, "max_rc_depth must be >= 0");
    }
  }

  std::vector<Phrase> noun_phrases(int budget, bool allow_rc) const {
    std::vector<Phrase> out;
    std::vector<Phrase> rcs;
    if (allow_rc && budget > 0) rcs = relative_clauses(budget - 1);
    for (const auto& det : c_.lexicon.determiners) {
      for (const auto& noun : c_.lexicon.nouns) {
        Phrase base{{det, noun}, "(DET " + det + ") (N " + noun + ")", {}};
        out.push_back({base.tokens, "(NP " + base.bracket + ")", {}});
        for (const auto& rc : rcs) {
          Phrase np = base;
          append(np, rc, "(NP " + base.bracket + " " + rc.bracket + ")");
          out.push_back(std::move(np));
        }
      }
    }
    return out;
  }

  std::vector<Phrase> relative_clauses(int budget) const {
    std::vector<Phrase> out;
    for (const auto& aux : c_.lexicon.auxiliaries) {
      for (const auto& vp : verb_phrases(aux, budget)) {
        Phrase rc{{"that", aux}, "", {1}};
        for (auto p : vp.aux_positions) rc.aux_positions.push_back(p + 2);
        rc.tokens.insert(rc.tokens.end(), vp.tokens.begin(), vp.tokens.end());
        rc.bracket = "(RC (REL that) (AUX " + aux + ") " + vp.bracket + ")";
        out.push_back(std::move(rc));
      }
    }
    return out;
  }

  std::vector<Phrase> verb_phrases(const std::string& aux, int budget) const {
    const auto& prog = c_.lexicon.progressive_auxiliaries;
    const bool ing = std::find(prog.begin(), prog.end(), aux) != prog.end();
    std::vector<Phrase> out;
    for (const auto& [bare, part] : c_.lexicon.intransitive) {
      const auto& v = ing ? part : bare;
      out.push_back({{v}, "(VP (V " + v + "))", {}});
    }
    if (c_.lexicon.transitive.empty()) return out;
    const auto objects = noun_phrases(budget, c_.object_rc);
    for (const auto& [bare, part] : c_.lexicon.transitive) {
      const auto& v = ing ? part : bare;
      for (const auto& obj : objects) {
        Phrase vp{{v}, "", {}};
        append(vp, obj, "");
        vp.bracket = "(VP (V " + v + ") " + obj.bracket + ")";
        out.push_back(std::move(vp));
      }
    }
    return out;
  }

  std::vector<FragmentSentence> sentences() const {
    std::vector<FragmentSentence> out;
    const auto subjects = noun_phrases(c_.max_rc_depth, true);
    std::vector<std::vector<Phrase>> vps;
    for (const auto& aux : c_.lexicon.auxiliaries) {
      vps.push_back(verb_phrases(aux, c_.max_rc_depth));
    }
    for (const auto& subj : subjects) {
      for (std::size_t a = 0; a < c_.lexicon.auxiliaries.size(); ++a) {
        for (const auto& vp : vps[a]) {
          out.push_back(sentence(subj, c_.lexicon.auxiliaries[a], vp));
        }
      }
    }
    return out;
  }

  // The sentence at position rank of sentences(), built without
  // enumerating its predecessors.
  FragmentSentence sentence_at(std::uint64_t rank) const {
    const std::uint64_t A = c_.lexicon.auxiliaries.size();
    const std::uint64_t n_vp = vp_count(c_.max_rc_depth);
    const std::uint64_t vp_index = rank % n_vp;
    const std::uint64_t a = (rank / n_vp) % A;
    const std::uint64_t subj_index = rank / n_vp / A;
    const auto& aux = c_.lexicon.auxiliaries[a];
    return sentence(noun_phrase_at(c_.max_rc_depth, true, subj_index), aux,
                    verb_phrase_at(aux, c_.max_rc_depth, vp_index));
  }

 private:
  std::uint64_t np_count(int budget, bool allow_rc) const {
    const std::uint64_t rc =
        (allow_rc && budget > 0) ? c_.lexicon.auxiliaries.size() * vp_count(budget - 1) : 0;
    return c_.lexicon.determiners.size() * c_.lexicon.nouns.size() * (1 + rc);
  }

  std::uint64_t vp_count(int budget) const {
    return c_.lexicon.intransitive.size() +
           c_.lexicon.transitive.size() * np_count(budget, c_.object_rc);
  }

  Phrase noun_phrase_at(int budget, bool allow_rc, std::uint64_t index) const {
    const std::uint64_t block = np_count(budget, allow_rc) /
                                (c_.lexicon.determiners.size() * c_.lexicon.nouns.size());
    const std::uint64_t pair = index / block;
    const std::uint64_t k = index % block;
    const auto& det = c_.lexicon.determiners[pair / c_.lexicon.nouns.size()];
    const auto& noun = c_.lexicon.nouns[pair % c_.lexicon.nouns.size()];
    Phrase base{{det, noun}, "(DET " + det + ") (N " + noun + ")", {}};
    if (k == 0) return {base.tokens, "(NP " + base.bracket + ")", {}};
    const Phrase rc = relative_clause_at(budget - 1, k - 1);
    Phrase np = base;
    append(np, rc, "(NP " + base.bracket + " " + rc.bracket + ")");
    return np;
  }

  Phrase relative_clause_at(int budget, std::uint64_t index) const {
    const std::uint64_t per_aux = vp_count(budget);
    const auto& aux = c_.lexicon.auxiliaries[index / per_aux];
    const Phrase vp = verb_phrase_at(aux, budget, index % per_aux);
    Phrase rc{{"that", aux}, "", {1}};
    for (auto p : vp.aux_positions) rc.aux_positions.push_back(p + 2);
    rc.tokens.insert(rc.tokens.end(), vp.tokens.begin(), vp.tokens.end());
    rc.bracket = "(RC (REL that) (AUX " + aux + ") " + vp.bracket + ")";
    return rc;
  }

  Phrase verb_phrase_at(const std::string& aux, int budget, std::uint64_t index) const {
    const auto& prog = c_.lexicon.progressive_auxiliaries;
    const bool ing = std::find(prog.begin(), prog.end(), aux) != prog.end();
    const auto& intransitive = c_.lexicon.intransitive;
    if (index < intransitive.size()) {
      const auto& v = ing ? intransitive[index].second : intransitive[index].first;
      return {{v}, "(VP (V " + v + "))", {}};
    }
    index -= intransitive.size();
    const std::uint64_t per_verb = np_count(budget, c_.object_rc);
    const auto& [bare, part] = c_.lexicon.transitive[index / per_verb];
    const auto& v = ing ? part : bare;
    const Phrase obj = noun_phrase_at(budget, c_.object_rc, index % per_verb);
    Phrase vp{{v}, "", {}};
    append(vp, obj, "");
    vp.bracket = "(VP (V " + v + ") " + obj.bracket + ")";
    return vp;
  }

  static FragmentSentence sentence(const Phrase& subj, const std::string& aux,
                                   const Phrase& vp) {
    FragmentSentence s;
    s.tokens = subj.tokens;
    s.main_aux_index = s.tokens.size();
    s.first_aux_index =
        subj.aux_positions.empty() ? s.main_aux_index : subj.aux_positions.front();
    s.has_presubject_rc_aux = s.first_aux_index < s.main_aux_index;
    s.tokens.push_back(aux);
    s.tokens.insert(s.tokens.end(), vp.tokens.begin(), vp.tokens.end());
    s.tokens.emplace_back(".");
    s.parse = "(S " + subj.bracket + " (AUX " + aux + ") " + vp.bracket + " (PUNCT .))";
    return s;
  }

  static void append(Phrase& into, const Phrase& tail, std::string bracket) {
    const std::size_t offset = into.tokens.size();
    into.tokens.insert(into.tokens.end(), tail.tokens.begin(), tail.tokens.end());
    for (auto p : tail.aux_positions) into.aux_positions.push_back(p + offset);
    if (!bracket.empty()) into.bracket = std::move(bracket);
  }

  const FragmentConfig& c_;
};

// Closed-form counts mirroring the grammar.
struct Counter {
  const FragmentConfig& c;
  std::uint64_t D() const { return c.lexicon.determiners.size(); }
  std::uint64_t N() const { return c.lexicon.nouns.size(); }
  std::uint64_t A() const { return c.lexicon.auxiliaries.size(); }

  std::uint64_t np(int budget, bool allow_rc) const {
    const std::uint64_t rc = (allow_rc && budget > 0) ? A() * vp(budget - 1) : 0;
    return D() * N() * (1 + rc);
  }
  std::uint64_t vp(int budget) const {
    return c.lexicon.intransitive.size() +
           c.lexicon.transitive.size() * np(budget, c.object_rc);
  }
  std::uint64_t sentences() const {
    return np(c.max_rc_depth, true) * A() * vp(c.max_rc_depth);
  }
};

std::vector<std::string> front(const FragmentSentence& s, std::size_t index) {
  if (s.tokens.empty() || index >= s.tokens.size() ||
      s.main_aux_index >= s.tokens.size() || s.first_aux_index >= s.tokens.size()) {
    throw Error(ErrorKind::kNoAuxiliary, "sentence has no auxiliary to front");
  }
  std::vector<std::string> out{s.tokens[index]};
  for (std::size_t i = 0; i < s.tokens.size(); ++i) {
    if (i == index) continue;
    if (i + 1 == s.tokens.size() && s.tokens[i] == ".") continue;
    out.push_back(s.tokens[i]);
  }
  out.emplace_back("?");
  return out;
}

// Minimal s-expression reader for parse strings.
struct Node {
  std::string label;
  std::string word;  // leaves only
  std::vector<Node> children;
};

class SexpReader {
 public:
  explicit SexpReader(std::string_view text) : text_(text) {}

  Node read() {
    skip();
    expect('(');
    Node node;
    node.label = atom();
    skip();
    if (peek() != '(') {
      node.word = atom();
      skip();
      expect(')');
      return node;
    }
    while (skip(), peek() == '(') node.children.push_back(read());
    expect(')');
    return node;
  }

  void finish() {
    skip();
    if (pos_ != text_.size()) fail("trailing characters");
  }

 private:
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void skip() {
    while (pos_ < text_.size() && text_[pos_] == ' ') ++pos_;
  }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  std::string atom() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] != ' ' && text_[pos_] != '(' &&
           text_[pos_] != ')') {
      ++pos_;
    }
    if (start == pos_) fail("expected a label or word");
    return std::string(text_.substr(start, pos_ - start));
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::kFormat,
                "bad parse at offset " + std::to_string(pos_) + ": " + what);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void collect_leaves(const Node& n, std::vector<const Node*>& leaves) {
  if (n.children.empty()) {
    leaves.push_back(&n);
    return;
  }
  for (const auto& c : n.children) collect_leaves(c, leaves);
}

}  // namespace

std::uint64_t fragment_size(const FragmentConfig& config) {
  return Counter{config}.sentences();
}

std::vector<FragmentSentence> generate_fragment(const FragmentConfig& config) {
  Enumerator e(config);
  if (config.exhaustive) return e.sentences();
  if (config.sample_size == 0) {
    throw Error(ErrorKind::kInvalidArgument, "sample_size must be >= 1");
  }
  const std::uint64_t total = fragment_size(config);
  if (config.sample_size > total) {
    throw Error(ErrorKind::kSampleTooLarge,
                "requested " + std::to_string(config.sample_size) +
                    " sentences from a fragment of " + std::to_string(total));
  }
  // Floyd's algorithm: sample_size distinct ranks from [0, total).
  SplitMix64 rng(derive_seed(config.seed, "qform/sample"));
  std::set<std::uint64_t> ranks;
  for (std::uint64_t j = total - config.sample_size; j < total; ++j) {
    const std::uint64_t t = rng.uniform_below(j + 1);
    ranks.insert(ranks.count(t) ? j : t);
  }
  std::vector<FragmentSentence> out;
  out.reserve(ranks.size());
  for (auto r : ranks) out.push_back(e.sentence_at(r));
  return out;
}

FragmentSentence parse_fragment(std::string_view bracketed) {
  SexpReader reader(bracketed);
  Node root = reader.read();
  reader.finish();
  if (root.label != "S") {
    throw Error(ErrorKind::kFormat, "parse must be rooted in S");
  }
  std::vector<const Node*> leaves;
  collect_leaves(root, leaves);
  FragmentSentence s;
  s.parse = std::string(bracketed);
  std::optional<std::size_t> first, main;
  // Position of the S-level AUX among the leaves.
  std::size_t offset = 0;
  for (const auto& child : root.children) {
    std::vector<const Node*> sub;
    collect_leaves(child, sub);
    if (child.children.empty() && child.label == "AUX" && !main) main = offset;
    offset += sub.size();
  }
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    s.tokens.push_back(leaves[i]->word);
    if (leaves[i]->label == "AUX" && !first) first = i;
  }
  if (!main || !first) {
    throw Error(ErrorKind::kNoAuxiliary, "parse has no main-clause auxiliary");
  }
  s.main_aux_index = *main;
  s.first_aux_index = *first;
  s.has_presubject_rc_aux = *first < *main;
  return s;
}

std::vector<std::string> linear_rule(const FragmentSentence& s) {
  return front(s, s.first_aux_index);
}

std::vector<std::string> structural_rule(const FragmentSentence& s) {
  return front(s, s.main_aux_index);
}

std::string_view to_string(Category c) {
  switch (c) {
    case Category::kStructural: return "structural";
    case Category::kLinear: return "linear";
    case Category::kBoth: return "both";
    case Category::kOther: return "other";
  }
  return "?";
}

Category classify_output(const FragmentSentence& s,
                         const std::vector<std::string>& output) {
  const bool structural = output == structural_rule(s);
  const bool linear = output == linear_rule(s);
  if (structural && linear) return Category::kBoth;
  if (structural) return Category::kStructural;
  if (linear) return Category::kLinear;
  return Category::kOther;
}

TransformPair make_pair(const FragmentSentence& s) {
  return {s, structural_rule(s), s.has_presubject_rc_aux};
}

Dataset build_dataset(const std::vector<FragmentSentence>& sentences,
                      bool withhold_disambiguating, std::uint64_t split_seed,
                      double test_fraction) {
  if (sentences.empty()) {
    throw Error(ErrorKind::kEmptyCorpus, "no sentences to build a dataset from");
  }
  if (!(test_fraction >= 0.0 && test_fraction < 1.0)) {
    throw Error(ErrorKind::kInvalidArgument, "test_fraction must lie in [0, 1)");
  }
  std::vector<std::size_t> pool;
  Dataset d;
  if (withhold_disambiguating) {
    std::size_t disambiguating = 0;
    for (std::size_t i = 0; i < sentences.size(); ++i) {
      if (sentences[i].has_presubject_rc_aux) {
        ++disambiguating;
      } else {
        pool.push_back(i);
      }
    }
    if (disambiguating == 0) {
      throw Error(ErrorKind::kNoDisambiguatingSentences,
                  "withholding requested but no sentence is disambiguating");
    }
    if (pool.empty()) {
      throw Error(ErrorKind::kInvalidArgument,
                  "withholding requested but no sentence is ambiguous");
    }
    for (const auto& s : sentences) {
      if (s.has_presubject_rc_aux) d.test_disambiguating.push_back(make_pair(s));
    }
  } else {
    for (std::size_t i = 0; i < sentences.size(); ++i) pool.push_back(i);
  }

  const auto order = seeded_permutation(pool.size(), derive_seed(split_seed, "qform/split"));
  const auto n_test = static_cast<std::size_t>(
      std::llround(test_fraction * static_cast<double>(pool.size())));
  std::vector<std::size_t> test, train;
  for (std::size_t k = 0; k < order.size(); ++k) {
    (k < n_test ? test : train).push_back(pool[order[k]]);
  }
  std::sort(test.begin(), test.end());
  std::sort(train.begin(), train.end());
  for (auto i : train) d.train.push_back(make_pair(sentences[i]));
  for (auto i : test) {
    auto p = make_pair(sentences[i]);
    (p.disambiguating ? d.test_disambiguating : d.test_ambiguous)
        .push_back(std::move(p));
  }
  return d;
}

nlohmann::json to_json(const TransformPair& pair) {
  return {{"schema_version", kSchemaVersion},
          {"declarative", pair.declarative.tokens},
          {"question", pair.question},
          {"disambiguating", pair.disambiguating},
          {"parse", pair.declarative.parse}};
}

TransformPair transform_pair_from_json(const nlohmann::json& j) {
  TransformPair p;
  p.declarative = parse_fragment(j.at("parse").get<std::string>());
  if (p.declarative.tokens != j.at("declarative").get<std::vector<std::string>>()) {
    throw Error(ErrorKind::kFormat, "declarative tokens disagree with parse");
  }
  p.question = j.at("question").get<std::vector<std::string>>();
  p.disambiguating = j.at("disambiguating").get<bool>();
  if (p.disambiguating != p.declarative.has_presubject_rc_aux) {
    throw Error(ErrorKind::kFormat, "disambiguating flag disagrees with parse");
  }
  return p;
}

std::string to_jsonl(const std::vector<TransformPair>& pairs) {
  std::string out;
  for (const auto& p : pairs) {
    out += to_json(p).dump();
    out += '\n';
  }
  return out;
}

std::vector<TransformPair> read_pairs(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorKind::kIoFailure, "cannot open '" + path.string() + "'");
  }
  std::vector<TransformPair> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(transform_pair_from_json(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::exception& ex) {
      throw Error(ErrorKind::kFormat, path.string() + ":" +
                                          std::to_string(line_no) + ": " + ex.what());
    }
  }
  return out;
}

double SetReport::fraction(Category c) const {
  if (n_items == 0) return 0.0;
  auto it = counts.find(c);
  const std::size_t k = it == counts.end() ? 0 : it->second;
  return static_cast<double>(k) / static_cast<double>(n_items);
}

double SetReport::accuracy() const {
  return n_items == 0 ? 0.0
                      : static_cast<double>(exact_match) /
                            static_cast<double>(n_items);
}

std::string first_word(const FragmentSentence& s, const std::vector<std::string>& output) {
  if (output.empty()) return "neither";
  const auto& main = s.tokens.at(s.main_aux_index);
  const auto& first = s.tokens.at(s.first_aux_index);
  const bool is_main = output.front() == main;
  const bool is_first = output.front() == first;
  if (is_main && is_first) return "either";
  if (is_main) return "main-aux";
  if (is_first) return "first-aux";
  return "neither";
}

GeneralizationReport evaluate_transducer(
    const Transducer& model,
    const std::vector<std::pair<std::string, std::vector<TransformPair>>>& sets) {
  GeneralizationReport report;
  report.model = model.identifier();
  for (const auto& [name, pairs] : sets) {
    SetReport r;
    r.name = name;
    for (auto c : {Category::kStructural, Category::kLinear, Category::kBoth,
                   Category::kOther}) {
      r.counts[c] = 0;
    }
    for (const char* k : {"main-aux", "first-aux", "either", "neither"}) r.first_word[k] = 0;
    for (const auto& p : pairs) {
      const auto out = model.transduce(p.declarative);
      ++r.counts[classify_output(p.declarative, out)];
      ++r.first_word[first_word(p.declarative, out)];
      if (out == p.question) ++r.exact_match;
      ++r.n_items;
    }
    report.sets.push_back(std::move(r));
  }
  return report;
}

nlohmann::json to_json(const GeneralizationReport& report) {
  nlohmann::json sets = nlohmann::json::array();
  for (const auto& s : report.sets) {
    nlohmann::json counts, fractions;
    for (const auto& [c, n] : s.counts) {
      counts[std::string(to_string(c))] = n;
      fractions[std::string(to_string(c))] = s.fraction(c);
    }
    sets.push_back({{"name", s.name},
                    {"n_items", s.n_items},
                    {"counts", counts},
                    {"fractions", fractions},
                    {"first_word", s.first_word},
                    {"exact_match", s.exact_match},
                    {"accuracy", s.accuracy()}});
  }
  return {{"schema_version", kSchemaVersion},
          {"model", report.model},
          {"sets", sets}};
}

TransducerTraining train_transducer(const std::vector<TransformPair>& pairs,
                                    const TransducerOptions& options,
                                    std::uint64_t seed) {
  std::vector<SequencePair> seqs;
  seqs.reserve(pairs.size());
  for (const auto& p : pairs) seqs.emplace_back(p.declarative.tokens, p.question);
  return syneval::train_transducer(seqs, options, seed);
}

}  // namespace syneval::qform

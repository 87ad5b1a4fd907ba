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

#include "syneval/eval.hpp"

#include <cmath>

#include "syneval/corpus.hpp"
#include "syneval/error.hpp"
#include "syneval/lexgen.hpp"
#include "syneval/rng.hpp"

namespace syneval {

namespace {

std::string format_double(double x) { return nlohmann::json(x).dump(); }

double ratio(std::size_t a, std::size_t b) {
  return b == 0 ? 0.0 : static_cast<double>(a) / static_cast<double>(b);
}

class ReportBuilder {
 public:
  ReportBuilder(const LanguageModel& model, const EvalOptions& options) {
    report_.model = model.identifier();
    report_.suite = options.suite_id;
    report_.timestamp = options.timestamp;
  }

  void add(const Condition& c, ItemResult item) {
    auto& cell = cells_[cell_key(c)];
    cell.key = cell_key(c);
    ++cell.n_items;
    if (item.correct) ++cell.n_correct;
    if (item.tie) {
      ++cell.n_ties;
      ++report_.tie_count;
    }
    report_.items.push_back(item);
  }

  void count_unk(std::size_t n) { report_.unk_count += n; }
  void saw(const char* protocol) { protocols_.insert(protocol); }

  EvaluationReport finish() {
    for (auto& [key, cell] : cells_) report_.cells.push_back(cell);
    if (protocols_.size() == 1) {
      report_.protocol = *protocols_.begin();
    } else {
      report_.protocol = "mixed";
    }
    return std::move(report_);
  }

 private:
  EvaluationReport report_;
  std::map<CellKey, CellRecord> cells_;
  std::set<std::string> protocols_;
};

ItemResult compare(double good, double bad) {
  ItemResult r;
  r.score_good = good;
  r.score_bad = bad;
  r.correct = good > bad;
  r.tie = good == bad;
  return r;
}

ItemResult score_instance(const LanguageModel& model, const SuiteInstance& inst,
                          std::size_t& unk) {
  const auto& vocab = model.vocabulary();
  const auto prefix = vocab.encode(surfaces(inst.tokens), &unk);
  const auto good = vocab.encode({inst.correct.surface}, &unk).front();
  const auto bad = vocab.encode({inst.incorrect.surface}, &unk).front();
  return compare(model.prob_next(prefix, good), model.prob_next(prefix, bad));
}

double logprob(const LanguageModel& model, const std::vector<Token>& tokens,
               std::size_t& unk) {
  if (tokens.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "cannot score an empty sentence");
  }
  const auto ids = model.vocabulary().encode(surfaces(tokens), &unk);
  double sum = 0.0;
  for (double p : model.sequence_probabilities(ids)) sum += std::log2(p);
  return sum;
}

ItemResult score_pair(const LanguageModel& model, const MinimalPair& pair,
                      std::size_t& unk) {
  const double good = logprob(model, pair.grammatical, unk);
  const double bad = logprob(model, pair.ungrammatical, unk);
  return compare(good, bad);
}

std::string token_shape(const Token& t) {
  if (t.content) {
    return std::string(to_string(t.pos)) + "/" + std::string(to_string(t.number));
  }
  return t.surface;
}

}  // namespace

CellKey cell_key(const Condition& c) {
  return {c.phenomenon, c.attractor_count, c.head_number, c.intervener};
}

double CellRecord::accuracy() const { return ratio(n_correct, n_items); }

std::size_t EvaluationReport::n_items() const {
  std::size_t n = 0;
  for (const auto& c : cells) n += c.n_items;
  return n;
}

std::size_t EvaluationReport::n_correct() const {
  std::size_t n = 0;
  for (const auto& c : cells) n += c.n_correct;
  return n;
}

double EvaluationReport::overall_accuracy() const {
  return ratio(n_correct(), n_items());
}

EvaluationReport number_prediction(const LanguageModel& model,
                                   const std::vector<SuiteInstance>& instances,
                                   const EvalOptions& options) {
  if (instances.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "no suite instances to evaluate");
  }
  std::vector<SuiteRecord> records(instances.begin(), instances.end());
  return evaluate_suite(model, records, options);
}

EvaluationReport minimal_pair_score(const LanguageModel& model,
                                    const std::vector<MinimalPair>& pairs,
                                    const EvalOptions& options) {
  if (pairs.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "no minimal pairs to evaluate");
  }
  std::vector<SuiteRecord> records(pairs.begin(), pairs.end());
  return evaluate_suite(model, records, options);
}

EvaluationReport evaluate_suite(const LanguageModel& model,
                                const std::vector<SuiteRecord>& records,
                                const EvalOptions& options) {
  if (records.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "empty suite");
  }
  ReportBuilder builder(model, options);
  for (const auto& record : records) {
    std::size_t unk = 0;
    if (const auto* inst = std::get_if<SuiteInstance>(&record)) {
      builder.saw("number-prediction");
      builder.add(inst->condition, score_instance(model, *inst, unk));
    } else {
      const auto& pair = std::get<MinimalPair>(record);
      builder.saw("minimal-pair");
      builder.add(pair.condition, score_pair(model, pair, unk));
    }
    builder.count_unk(unk);
  }
  return builder.finish();
}

nlohmann::json to_json(const EvaluationReport& report, bool include_items) {
  nlohmann::json cells = nlohmann::json::array();
  for (const auto& c : report.cells) {
    cells.push_back({{"phenomenon", to_string(c.key.phenomenon)},
                     {"attractor_count", c.key.attractor_count},
                     {"head_number", to_string(c.key.head_number)},
                     {"intervener", to_string(c.key.intervener)},
                     {"n_items", c.n_items},
                     {"n_correct", c.n_correct},
                     {"n_ties", c.n_ties},
                     {"accuracy", c.accuracy()}});
  }
  nlohmann::json j = {{"schema_version", report.schema_version},
                      {"model", report.model},
                      {"suite", report.suite},
                      {"protocol", report.protocol},
                      {"timestamp", report.timestamp},
                      {"n_items", report.n_items()},
                      {"n_correct", report.n_correct()},
                      {"tie_count", report.tie_count},
                      {"unk_count", report.unk_count},
                      {"overall_accuracy", report.overall_accuracy()},
                      {"cells", cells}};
  if (include_items) {
    nlohmann::json items = nlohmann::json::array();
    for (const auto& it : report.items) {
      items.push_back({{"correct", it.correct},
                       {"tie", it.tie},
                       {"score_good", it.score_good},
                       {"score_bad", it.score_bad}});
    }
    j["items"] = items;
  }
  return j;
}

EvaluationReport evaluation_report_from_json(const nlohmann::json& j) {
  EvaluationReport r;
  r.schema_version = j.at("schema_version").get<int>();
  if (r.schema_version != kSchemaVersion) {
    throw Error(ErrorKind::kFormat, "unsupported report schema_version " +
                                        std::to_string(r.schema_version));
  }
  r.model = j.at("model").get<std::string>();
  r.suite = j.at("suite").get<std::string>();
  r.protocol = j.at("protocol").get<std::string>();
  r.timestamp = j.at("timestamp").get<std::string>();
  r.tie_count = j.at("tie_count").get<std::size_t>();
  r.unk_count = j.at("unk_count").get<std::size_t>();
  for (const auto& c : j.at("cells")) {
    CellRecord cell;
    const auto ph = parse_phenomenon(c.at("phenomenon").get<std::string>());
    const auto num = parse_number(c.at("head_number").get<std::string>());
    const auto iv = parse_intervener(c.at("intervener").get<std::string>());
    if (!ph || !num || !iv) throw Error(ErrorKind::kFormat, "bad report cell");
    cell.key = {*ph, c.at("attractor_count").get<int>(), *num, *iv};
    cell.n_items = c.at("n_items").get<std::size_t>();
    cell.n_correct = c.at("n_correct").get<std::size_t>();
    cell.n_ties = c.at("n_ties").get<std::size_t>();
    r.cells.push_back(cell);
  }
  if (j.contains("items")) {
    for (const auto& it : j.at("items")) {
      r.items.push_back({it.at("correct").get<bool>(), it.at("tie").get<bool>(),
                         it.at("score_good").get<double>(),
                         it.at("score_bad").get<double>()});
    }
  }
  return r;
}

std::string to_tsv(const EvaluationReport& report) {
  std::string out =
      "phenomenon\tattractor_count\thead_number\tintervener\tn_items\t"
      "n_correct\tn_ties\taccuracy\n";
  for (const auto& c : report.cells) {
    out += std::string(to_string(c.key.phenomenon)) + '\t' +
           std::to_string(c.key.attractor_count) + '\t' +
           std::string(to_string(c.key.head_number)) + '\t' +
           std::string(to_string(c.key.intervener)) + '\t' +
           std::to_string(c.n_items) + '\t' + std::to_string(c.n_correct) +
           '\t' + std::to_string(c.n_ties) + '\t' + format_double(c.accuracy()) +
           '\n';
  }
  return out;
}

AsymmetryRates asymmetry_analysis(const EvaluationReport& report) {
  struct Tally {
    std::size_t items = 0, errors = 0;
  } sg, pl, pp, rc;
  for (const auto& c : report.cells) {
    const std::size_t errors = c.n_items - c.n_correct;
    Tally* by_number = c.key.head_number == Number::kSingular ? &sg
                       : c.key.head_number == Number::kPlural ? &pl
                                                              : nullptr;
    Tally* by_intervener = c.key.intervener == Intervener::kPp   ? &pp
                           : c.key.intervener == Intervener::kRc ? &rc
                                                                 : nullptr;
    for (Tally* t : {by_number, by_intervener}) {
      if (t) {
        t->items += c.n_items;
        t->errors += errors;
      }
    }
  }
  auto need = [](const Tally& t, const char* name) {
    if (t.items == 0) {
      throw Error(ErrorKind::kMissingStratum,
                  std::string("report has no items in the ") + name + " stratum");
    }
  };
  need(sg, "singular-head");
  need(pl, "plural-head");
  need(pp, "pp-intervener");
  need(rc, "rc-intervener");
  return {ratio(sg.errors, sg.items), ratio(pl.errors, pl.items),
          ratio(pp.errors, pp.items), ratio(rc.errors, rc.items)};
}

nlohmann::json to_json(const AsymmetryRates& r) {
  return {{"singular_head_error_rate", r.singular_head_error_rate},
          {"plural_head_error_rate", r.plural_head_error_rate},
          {"pp_error_rate", r.pp_error_rate},
          {"rc_error_rate", r.rc_error_rate}};
}

std::vector<SuiteRecord> nonce_suite(const std::vector<SuiteRecord>& records,
                                     const Lexicon& lexicon, std::uint64_t seed) {
  std::vector<SuiteRecord> out;
  out.reserve(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto item_seed = derive_seed(seed, "nonce/" + std::to_string(i));
    if (const auto* inst = std::get_if<SuiteInstance>(&records[i])) {
      SuiteInstance copy = *inst;
      copy.tokens = nonceify(inst->tokens, lexicon, item_seed);
      out.emplace_back(std::move(copy));
      continue;
    }
    const auto& pair = std::get<MinimalPair>(records[i]);
    MinimalPair copy = pair;
    copy.grammatical = nonceify(pair.grammatical, lexicon, item_seed);
    copy.ungrammatical = copy.grammatical;
    for (std::size_t k = pair.span_start; k < pair.span_end; ++k) {
      copy.grammatical[k] = pair.grammatical[k];
      copy.ungrammatical[k] = pair.ungrammatical[k];
    }
    out.emplace_back(std::move(copy));
  }
  return out;
}

double NonceComparison::delta() const {
  return nonce.overall_accuracy() - original.overall_accuracy();
}

NonceComparison nonce_comparison(const LanguageModel& model,
                                 const std::vector<SuiteRecord>& records,
                                 const Lexicon& lexicon, std::uint64_t seed,
                                 const EvalOptions& options) {
  NonceComparison out;
  out.nonce_records = nonce_suite(records, lexicon, seed);
  out.original = evaluate_suite(model, records, options);
  EvalOptions nonce_options = options;
  nonce_options.suite_id += "+nonce";
  out.nonce = evaluate_suite(model, out.nonce_records, nonce_options);
  return out;
}

nlohmann::json to_json(const NonceComparison& c) {
  return {{"schema_version", kSchemaVersion},
          {"original", to_json(c.original, true)},
          {"nonce", to_json(c.nonce, true)},
          {"original_accuracy", c.original.overall_accuracy()},
          {"nonce_accuracy", c.nonce.overall_accuracy()},
          {"delta", c.delta()}};
}

SurprisalReport surprisal_report(const LanguageModel& model,
                                 const std::vector<AnnotatedSentence>& sentences) {
  SurprisalReport out;
  std::map<std::string, std::pair<double, std::size_t>> sums;
  for (std::size_t s = 0; s < sentences.size(); ++s) {
    auto profile = surprisal(model, sentences[s].tokens);
    for (const auto& region : sentences[s].regions) {
      if (region.start >= region.end || region.end > profile.values.size()) {
        throw Error(ErrorKind::kRegionOutOfRange,
                    "region '" + region.name + "' [" + std::to_string(region.start) +
                        ", " + std::to_string(region.end) + ") of sentence " +
                        std::to_string(s) + " is outside [0, " +
                        std::to_string(profile.values.size()) + ")");
      }
      double sum = 0.0;
      for (std::size_t k = region.start; k < region.end; ++k) sum += profile.values[k];
      const double mean = sum / static_cast<double>(region.end - region.start);
      out.regions.push_back({s, region, mean});
      auto& acc = sums[region.name];
      acc.first += mean;
      ++acc.second;
    }
    out.profiles.push_back(std::move(profile));
  }
  for (const auto& [name, acc] : sums) {
    out.by_name[name] = acc.first / static_cast<double>(acc.second);
  }
  return out;
}

nlohmann::json to_json(const SurprisalReport& report) {
  nlohmann::json profiles = nlohmann::json::array();
  for (const auto& p : report.profiles) {
    nlohmann::json pj = p;
    pj["total"] = p.total();
    profiles.push_back(std::move(pj));
  }
  nlohmann::json regions = nlohmann::json::array();
  for (const auto& r : report.regions) {
    regions.push_back({{"sentence", r.sentence},
                       {"name", r.region.name},
                       {"start", r.region.start},
                       {"end", r.region.end},
                       {"mean_surprisal", r.mean_surprisal}});
  }
  return {{"schema_version", kSchemaVersion},
          {"profiles", profiles},
          {"regions", regions},
          {"by_name", report.by_name}};
}

AnnotatedSentence annotated_sentence_from_line(std::string_view line) {
  AnnotatedSentence out;
  const auto first = line.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return out;
  if (line[first] != '{') {
    auto sentences = tokenize_plain(line);
    if (!sentences.empty()) out.tokens = std::move(sentences.front());
    return out;
  }
  const auto j = nlohmann::json::parse(line);
  if (j.contains("tokens")) {
    out.tokens = j.at("tokens").get<std::vector<std::string>>();
  } else {
    auto sentences = tokenize_plain(j.at("text").get<std::string>());
    if (!sentences.empty()) out.tokens = std::move(sentences.front());
  }
  for (const auto& r : j.value("regions", nlohmann::json::array())) {
    out.regions.push_back({r.at("name").get<std::string>(),
                           r.at("start").get<std::size_t>(),
                           r.at("end").get<std::size_t>()});
  }
  return out;
}

MetadataOracle::MetadataOracle(const std::vector<SuiteRecord>& records,
                               const Lexicon& lexicon, double leak)
    : leak_(leak) {
  if (!(leak > 0.0 && leak < 1.0)) {
    throw Error(ErrorKind::kInvalidArgument, "oracle leak must lie in (0, 1)");
  }
  shapes_ = {std::string(Vocabulary::kUnkWord), std::string(Vocabulary::kBosWord),
             std::string(Vocabulary::kEosWord)};
  auto add = [&](const Token& t) {
    if (vocab_.contains(t.surface)) return;
    vocab_.add(t.surface);
    shapes_.push_back(token_shape(t));
  };
  for (const auto& t : lexicon.entries()) add(t);

  auto shapes = [](const std::vector<Token>& tokens, std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(token_shape(tokens[i]));
    return out;
  };
  for (const auto& record : records) {
    if (const auto* inst = std::get_if<SuiteInstance>(&record)) {
      for (const auto& t : inst->tokens) add(t);
      add(inst->correct);
      add(inst->incorrect);
      continuations_[shapes(inst->tokens, inst->tokens.size())].insert(
          token_shape(inst->correct));
    } else {
      const auto& pair = std::get<MinimalPair>(record);
      for (const auto& t : pair.grammatical) add(t);
      for (const auto& t : pair.ungrammatical) add(t);
      const auto& g = pair.grammatical;
      for (std::size_t k = 0; k <= g.size(); ++k) {
        continuations_[shapes(g, k)].insert(
            k < g.size() ? token_shape(g[k]) : std::string(Vocabulary::kEosWord));
      }
    }
  }
}

std::string MetadataOracle::shape_of(WordId id) const { return shapes_.at(id); }

std::vector<double> MetadataOracle::next_distribution(
    std::span<const WordId> prefix) const {
  const std::size_t v = vocab_.size();
  const std::size_t support = v - 1;  // everything but <s>
  std::vector<double> dist(v, 1.0 / static_cast<double>(support));
  dist[Vocabulary::kBos] = 0.0;

  std::vector<std::string> key;
  key.reserve(prefix.size());
  for (WordId id : prefix) key.push_back(shape_of(id));
  const auto it = continuations_.find(key);
  if (it == continuations_.end()) return dist;

  std::vector<bool> favored(v, false);
  std::size_t m = 0;
  for (std::size_t id = 0; id < v; ++id) {
    if (id == Vocabulary::kBos) continue;
    if (it->second.count(shapes_[id])) {
      favored[id] = true;
      ++m;
    }
  }
  if (m == 0 || m == support) return dist;
  const double hi = (1.0 - leak_) / static_cast<double>(m);
  const double lo = leak_ / static_cast<double>(support - m);
  for (std::size_t id = 0; id < v; ++id) {
    if (id == Vocabulary::kBos) continue;
    dist[id] = favored[id] ? hi : lo;
  }
  return dist;
}

}  // namespace syneval

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

#include "syneval_cli/cli.hpp"

#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "syneval/corpus.hpp"
#include "syneval/error.hpp"
#include "syneval/eval.hpp"
#include "syneval/lexgen.hpp"
#include "syneval/model_io.hpp"
#include "syneval/ngram.hpp"
#include "syneval/qform.hpp"
#include "syneval/recurrent_lm.hpp"
#include "syneval/rng.hpp"
#include "syneval/transducer.hpp"

namespace syneval::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr std::string_view kToolVersion = "syneval 0.1.0";

struct OutputFile {
  std::string path;
  std::string hash;
  std::optional<std::size_t> items;
};

class Run {
 public:
  Run(std::string command, const CLI::App& app, std::uint64_t seed)
      : command_(std::move(command)), app_(app), seed_(seed) {}

  void emit(const fs::path& path, std::string_view contents,
            std::optional<std::size_t> items = std::nullopt) {
    write_file(path, contents);
    outputs_.push_back({path.generic_string(), content_hash(contents), items});
  }

  void input(const fs::path& path) {
    inputs_.push_back({path.generic_string(), content_hash(read_file(path)), {}});
  }

  json& extra() { return extra_; }

  void write_manifest(const fs::path& path) {
    auto files = [](const std::vector<OutputFile>& list) {
      json out = json::array();
      for (const auto& f : list) {
        json j = {{"path", f.path}, {"content_hash", f.hash}};
        if (f.items) j["items"] = *f.items;
        out.push_back(std::move(j));
      }
      return out;
    };
    json manifest = {{"schema_version", kSchemaVersion},
                     {"tool", kToolVersion},
                     {"command", command_},
                     {"seed", seed_},
                     {"config", "[" + app_.get_name() + "]\n" + app_.config_to_str(true, false)},
                     {"inputs", files(inputs_)},
                     {"outputs", files(outputs_)}};
    if (!extra_.is_null()) manifest["extra"] = extra_;
    write_file(path, manifest.dump(2) + "\n");
  }

 private:
  std::string command_;
  const CLI::App& app_;
  std::uint64_t seed_;
  std::vector<OutputFile> inputs_;
  std::vector<OutputFile> outputs_;
  json extra_;
};

fs::path manifest_for(const fs::path& output) {
  return fs::path(output.string() + ".manifest.json");
}

Lexicon load_lexicon(const std::string& path) {
  return path.empty() ? Lexicon::load_default() : Lexicon::load(path);
}

std::string plain_lines(const std::vector<std::vector<std::string>>& sentences) {
  std::string out;
  for (const auto& s : sentences) {
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (i) out += ' ';
      out += s[i];
    }
    out += '\n';
  }
  return out;
}

std::string jsonl(const std::vector<json>& rows) {
  std::string out;
  for (const auto& r : rows) out += r.dump() + "\n";
  return out;
}

std::vector<std::string> suite_words(const std::vector<SuiteRecord>& records) {
  std::vector<std::vector<std::string>> sentences;
  for (const auto& r : records) {
    if (const auto* inst = std::get_if<SuiteInstance>(&r)) {
      auto s = surfaces(inst->tokens);
      s.push_back(inst->correct.surface);
      s.push_back(inst->incorrect.surface);
      sentences.push_back(std::move(s));
    } else {
      const auto& p = std::get<MinimalPair>(r);
      sentences.push_back(surfaces(p.grammatical));
      sentences.push_back(surfaces(p.ungrammatical));
    }
  }
  return Vocabulary::build(sentences, 1).words();
}

// "uniform", "oracle" or a model file, optionally wrapped by a baseline.
struct ModelSpec {
  std::string model;
  std::string baseline;
  std::string lexicon;
};

std::shared_ptr<const LanguageModel> resolve_model(
    const ModelSpec& spec, const std::vector<SuiteRecord>* records,
    const std::vector<std::vector<std::string>>* sentences, Run& run) {
  std::shared_ptr<const LanguageModel> model;
  if (spec.model == "uniform") {
    std::vector<std::string> words;
    if (records) {
      words = suite_words(*records);
    } else if (sentences) {
      words = Vocabulary::build(*sentences, 1).words();
    }
    model = std::make_shared<UniformModel>(Vocabulary::from_words(
        words.empty() ? Vocabulary().words() : words));
  } else if (spec.model == "oracle") {
    if (!records) {
      throw Error(ErrorKind::kInvalidArgument,
                  "the metadata oracle needs an annotated suite");
    }
    model = std::make_shared<MetadataOracle>(*records, load_lexicon(spec.lexicon));
  } else {
    run.input(spec.model);
    model = as_language_model(load_model(spec.model));
  }
  if (spec.baseline.empty()) return model;
  constexpr std::string_view kTruncate = "truncate:";
  if (!spec.baseline.starts_with(kTruncate)) {
    throw Error(ErrorKind::kInvalidArgument,
                "unknown baseline '" + spec.baseline + "'; expected truncate:K");
  }
  std::size_t window = 0;
  try {
    window = std::stoul(spec.baseline.substr(kTruncate.size()));
  } catch (const std::exception&) {
    throw Error(ErrorKind::kInvalidArgument, "bad baseline '" + spec.baseline + "'");
  }
  return truncate_context(model, window);
}

void add_model_options(CLI::App* sub, ModelSpec& spec) {
  sub->add_option("--model", spec.model,
                  "Model file, or 'uniform' / 'oracle'")
      ->required();
  sub->add_option("--baseline", spec.baseline, "Wrap the model, e.g. truncate:4");
  sub->add_option("--lexicon", spec.lexicon, "Lexicon JSON (default: built-in)");
}

std::vector<AnnotatedSentence> read_annotated(const fs::path& path) {
  std::istringstream in(read_file(path));
  std::vector<AnnotatedSentence> out;
  std::string line;
  while (std::getline(in, line)) {
    auto s = annotated_sentence_from_line(line);
    if (!s.tokens.empty()) out.push_back(std::move(s));
  }
  return out;
}

// ---- generate / qform-gen ------------------------------------------------

struct GenerateArgs {
  std::string suite;
  std::string lexicon;
  std::vector<int> attractors = {0, 1, 2, 3, 4};
  std::size_t per_cell = 10;
  std::size_t per_template = 10;
  std::vector<std::string> phenomena;
  std::size_t sentences = 1000;
  std::uint64_t seed = 0;
  std::string out;
  // qform
  std::string out_dir = "qform";
  std::string fragment_lexicon;
  bool withhold = false;
  int depth = 1;
  bool object_rc = false;
  std::size_t sample = 0;
  double test_fraction = 0.2;
};

void add_qform_options(CLI::App* sub, GenerateArgs& a) {
  sub->add_option("--out-dir", a.out_dir, "Directory for the qform split files");
  sub->add_option("--fragment-lexicon", a.fragment_lexicon,
                  "Fragment word lists as JSON (default: built-in)");
  sub->add_flag("--withhold", a.withhold,
                "Keep every disambiguating pair out of training");
  sub->add_option("--depth", a.depth, "Maximum relative-clause depth")
      ->check(CLI::Range(0, 4));
  sub->add_flag("--object-rc", a.object_rc, "Allow relative clauses on objects");
  sub->add_option("--sample", a.sample, "Sample this many sentences (0: all)");
  sub->add_option("--test-fraction", a.test_fraction, "Held-out share of the pool")
      ->check(CLI::Range(0.0, 0.99));
}

void generate_qform(const CLI::App& app, const GenerateArgs& a) {
  qform::FragmentConfig config;
  if (!a.fragment_lexicon.empty()) {
    config.lexicon =
        qform::FragmentLexicon::from_json(json::parse(read_file(a.fragment_lexicon)));
  }
  config.max_rc_depth = a.depth;
  config.object_rc = a.object_rc;
  config.exhaustive = a.sample == 0;
  config.sample_size = a.sample;
  config.seed = a.seed;
  const auto sentences = qform::generate_fragment(config);
  const auto data = qform::build_dataset(sentences, a.withhold,
                                         derive_seed(a.seed, "qform/dataset"),
                                         a.test_fraction);
  Run run("qform-gen", app, a.seed);
  const fs::path dir(a.out_dir);
  run.emit(dir / "train.jsonl", qform::to_jsonl(data.train), data.train.size());
  run.emit(dir / "test_ambiguous.jsonl", qform::to_jsonl(data.test_ambiguous),
           data.test_ambiguous.size());
  run.emit(dir / "test_disambiguating.jsonl",
           qform::to_jsonl(data.test_disambiguating),
           data.test_disambiguating.size());
  std::size_t train_disambiguating = 0;
  for (const auto& p : data.train) train_disambiguating += p.disambiguating;
  run.extra() = {{"fragment_sentences", sentences.size()},
                 {"withhold", a.withhold},
                 {"train_disambiguating", train_disambiguating}};
  run.write_manifest(dir / "manifest.json");
}

void generate(const CLI::App& app, const GenerateArgs& a) {
  if (a.suite == "qform") return generate_qform(app, a);
  const Lexicon lexicon = load_lexicon(a.lexicon);
  Run run("generate", app, a.seed);
  if (!a.lexicon.empty()) run.input(a.lexicon);
  const fs::path out = a.out.empty() ? fs::path(a.suite + ".jsonl") : fs::path(a.out);

  std::vector<SuiteRecord> records;
  if (a.suite == "agreement") {
    AgreementSuiteConfig config;
    config.attractor_counts = std::set<int>(a.attractors.begin(), a.attractors.end());
    config.per_cell = a.per_cell;
    config.seed = a.seed;
    for (auto& inst : generate_agreement_suite(lexicon, config)) {
      records.emplace_back(std::move(inst));
    }
  } else if (a.suite == "minimal-pairs") {
    std::set<Phenomenon> phenomena;
    for (const auto& name : a.phenomena) {
      const auto p = parse_phenomenon(name);
      if (!p) throw Error(ErrorKind::kInvalidArgument, "unknown phenomenon '" + name + "'");
      phenomena.insert(*p);
    }
    for (auto& pair :
         generate_minimal_pair_suite(lexicon, a.per_template, a.seed, phenomena)) {
      records.emplace_back(std::move(pair));
    }
  } else {  // corpus
    const auto sentences = generate_corpus(lexicon, a.sentences, a.seed);
    const fs::path text_out = a.out.empty() ? fs::path("corpus.txt") : out;
    run.emit(text_out, plain_lines(sentences), sentences.size());
    run.write_manifest(manifest_for(text_out));
    return;
  }
  run.emit(out, to_jsonl(records), records.size());
  run.write_manifest(manifest_for(out));
}

// ---- train ---------------------------------------------------------------

struct TrainArgs {
  std::string model = "ngram";
  std::string input;
  std::string out = "model.bin";
  std::uint64_t seed = 0;
  int order = 2;
  std::string smoothing = "add-k";
  double k = 0.01;
  std::size_t min_count = 2;
  std::string cell = "gru";
  std::size_t embedding = 0;
  std::size_t hidden = 0;
  double lr = -1.0;
  int epochs = -1;
  std::size_t bptt = 20;
  double clip = 5.0;
  double init_scale = 0.1;
};

void train(const CLI::App& app, const TrainArgs& a) {
  Run run("train", app, a.seed);
  run.input(a.input);
  std::optional<AnyModel> model;
  std::vector<double> curve;
  if (a.model == "ngram") {
    NGramOptions opts;
    opts.order = a.order;
    opts.min_count = a.min_count;
    if (a.smoothing == "mle") {
      opts.add_k.reset();
    } else {
      opts.add_k = a.k;
    }
    model.emplace(train_ngram(read_plain(a.input), opts));
  } else if (a.model == "rnn") {
    RecurrentOptions opts;
    opts.cell = *parse_cell_kind(a.cell);
    if (a.embedding) opts.embedding_dim = a.embedding;
    if (a.hidden) opts.hidden_dim = a.hidden;
    if (a.lr >= 0) opts.learning_rate = a.lr;
    if (a.epochs >= 0) opts.epochs = a.epochs;
    opts.bptt = a.bptt;
    opts.clip_norm = a.clip;
    opts.init_scale = a.init_scale;
    opts.min_count = a.min_count;
    auto trained = train_recurrent(read_plain(a.input), opts, a.seed);
    curve = trained.loss_curve;
    model.emplace(std::move(trained.model));
  } else {  // seq2seq
    TransducerOptions opts;
    opts.cell = *parse_cell_kind(a.cell);
    if (a.embedding) opts.embedding_dim = a.embedding;
    if (a.hidden) opts.hidden_dim = a.hidden;
    if (a.lr >= 0) opts.learning_rate = a.lr;
    if (a.epochs >= 0) opts.epochs = a.epochs;
    opts.clip_norm = a.clip;
    opts.init_scale = a.init_scale;
    auto trained = qform::train_transducer(qform::read_pairs(a.input), opts, a.seed);
    curve = trained.loss_curve;
    model.emplace(std::move(trained.model));
  }
  const StoredModel stored{std::move(*model), {{"loss_curve", curve}}};
  const fs::path out(a.out);
  run.emit(out, serialize_model(stored));
  run.emit(fs::path(a.out + ".loss.json"),
           json{{"schema_version", kSchemaVersion}, {"loss_curve", curve}}.dump(2) + "\n");
  run.write_manifest(manifest_for(out));
}

// ---- eval ----------------------------------------------------------------

struct EvalArgs {
  ModelSpec spec;
  std::string suite;
  std::string report = "report.json";
  std::string tsv;
  std::string asymmetry;
  std::string suite_id;
  std::string timestamp = std::string(kDefaultTimestamp);
  bool items = false;
};

void evaluate(const CLI::App& app, const EvalArgs& a) {
  Run run("eval", app, 0);
  run.input(a.suite);
  const auto records = read_suite(a.suite);
  const auto model = resolve_model(a.spec, &records, nullptr, run);
  EvalOptions opts;
  opts.suite_id = a.suite_id.empty() ? fs::path(a.suite).filename().string() : a.suite_id;
  opts.timestamp = a.timestamp;
  const auto report = evaluate_suite(*model, records, opts);
  run.emit(a.report, to_json(report, a.items).dump(2) + "\n", report.n_items());
  if (!a.tsv.empty()) run.emit(a.tsv, to_tsv(report));
  if (!a.asymmetry.empty()) {
    run.emit(a.asymmetry, to_json(asymmetry_analysis(report)).dump(2) + "\n");
  }
  run.write_manifest(manifest_for(a.report));
}

// ---- surprisal -----------------------------------------------------------

struct SurprisalArgs {
  ModelSpec spec;
  std::string in;
  std::string out = "profiles.jsonl";
  std::string report;
};

void surprisal_cmd(const CLI::App& app, const SurprisalArgs& a) {
  Run run("surprisal", app, 0);
  run.input(a.in);
  const auto sentences = read_annotated(a.in);
  std::vector<std::vector<std::string>> plain;
  for (const auto& s : sentences) plain.push_back(s.tokens);
  const auto model = resolve_model(a.spec, nullptr, &plain, run);
  const auto report = surprisal_report(*model, sentences);
  std::vector<json> rows;
  for (const auto& p : report.profiles) {
    json j = p;
    j["total"] = p.total();
    rows.push_back(std::move(j));
  }
  run.emit(a.out, jsonl(rows), rows.size());
  if (!a.report.empty()) run.emit(a.report, to_json(report).dump(2) + "\n");
  run.write_manifest(manifest_for(a.out));
}

// ---- nonce ---------------------------------------------------------------

struct NonceArgs {
  std::string suite;
  std::string lexicon;
  std::uint64_t seed = 0;
  std::string out = "nonce.jsonl";
  std::string model;
  std::string baseline;
  std::string report;
  std::string timestamp = std::string(kDefaultTimestamp);
};

void nonce_cmd(const CLI::App& app, const NonceArgs& a) {
  Run run("nonce", app, a.seed);
  run.input(a.suite);
  const auto records = read_suite(a.suite);
  const Lexicon lexicon = load_lexicon(a.lexicon);
  if (a.model.empty()) {
    const auto twin = nonce_suite(records, lexicon, a.seed);
    run.emit(a.out, to_jsonl(twin), twin.size());
  } else {
    const auto model =
        resolve_model({a.model, a.baseline, a.lexicon}, &records, nullptr, run);
    EvalOptions opts;
    opts.suite_id = fs::path(a.suite).filename().string();
    opts.timestamp = a.timestamp;
    const auto cmp = nonce_comparison(*model, records, lexicon, a.seed, opts);
    run.emit(a.out, to_jsonl(cmp.nonce_records), cmp.nonce_records.size());
    if (!a.report.empty()) run.emit(a.report, to_json(cmp).dump(2) + "\n");
  }
  run.write_manifest(manifest_for(a.out));
}

// ---- adapt ---------------------------------------------------------------

struct AdaptArgs {
  std::string model;
  std::string exposure;
  std::string probe;
  std::uint64_t seed = 0;
  double lr = 0.05;
  int epochs = 1;
  std::string out = "adaptation.json";
  std::string tsv;
  std::string save;
};

void adapt_cmd(const CLI::App& app, const AdaptArgs& a) {
  Run run("adapt", app, a.seed);
  run.input(a.model);
  run.input(a.exposure);
  run.input(a.probe);
  auto stored = load_model(a.model);
  const auto* rnn = std::get_if<RecurrentLM>(&stored.model);
  if (!rnn) {
    throw Error(ErrorKind::kInvalidArgument, "adapt needs a recurrent model");
  }
  AdaptOptions opts{a.lr, a.epochs, a.seed};
  const auto probes = read_plain(a.probe);
  const auto result = adapt(*rnn, read_plain(a.exposure), opts, probes);

  json rows = json::array();
  std::string tsv = "probe\tbefore_total\tafter_total\tdelta\n";
  for (std::size_t i = 0; i < probes.size(); ++i) {
    const double before = result.before[i].total();
    const double after = result.after[i].total();
    std::string sentence;
    for (const auto& w : probes[i]) sentence += (sentence.empty() ? "" : " ") + w;
    rows.push_back({{"probe", sentence},
                    {"before_total", before},
                    {"after_total", after},
                    {"delta", after - before},
                    {"before", result.before[i]},
                    {"after", result.after[i]}});
    tsv += sentence + '\t' + json(before).dump() + '\t' + json(after).dump() + '\t' +
           json(after - before).dump() + '\n';
  }
  json table = {{"schema_version", kSchemaVersion},
                {"model", rnn->identifier()},
                {"loss_curve", result.loss_curve},
                {"mean_before", result.mean_before()},
                {"mean_after", result.mean_after()},
                {"mean_delta", result.mean_after() - result.mean_before()},
                {"probes", rows}};
  run.emit(a.out, table.dump(2) + "\n", probes.size());
  if (!a.tsv.empty()) run.emit(a.tsv, tsv);
  if (!a.save.empty()) {
    run.emit(a.save, serialize_model({result.model, {{"loss_curve", result.loss_curve}}}));
  }
  run.write_manifest(manifest_for(a.out));
}

// ---- qform-eval ----------------------------------------------------------

struct QformEvalArgs {
  std::string model;
  std::string data_dir = "qform";
  std::vector<std::string> sets = {"test_ambiguous", "test_disambiguating"};
  std::string report = "qform_report.json";
};

void qform_eval(const CLI::App& app, const QformEvalArgs& a) {
  Run run("qform-eval", app, 0);
  std::unique_ptr<qform::Transducer> owned;
  std::optional<TransducerModel> neural;
  if (a.model == "linear-rule") {
    owned = std::make_unique<qform::LinearRuleTransducer>();
  } else if (a.model == "structural-rule") {
    owned = std::make_unique<qform::StructuralRuleTransducer>();
  } else {
    run.input(a.model);
    auto stored = load_model(a.model);
    auto* t = std::get_if<TransducerModel>(&stored.model);
    if (!t) throw Error(ErrorKind::kInvalidArgument, "qform-eval needs a seq2seq model");
    neural.emplace(std::move(*t));
    owned = std::make_unique<qform::NeuralTransducer>(*neural);
  }
  std::vector<std::pair<std::string, std::vector<qform::TransformPair>>> sets;
  for (const auto& name : a.sets) {
    const fs::path path = fs::path(a.data_dir) / (name + ".jsonl");
    run.input(path);
    sets.emplace_back(name, qform::read_pairs(path));
  }
  const auto report = qform::evaluate_transducer(*owned, sets);
  run.emit(a.report, qform::to_json(report).dump(2) + "\n");
  run.write_manifest(manifest_for(a.report));
}

void report_error(std::string_view kind, std::string_view message) {
  std::cerr << json{{"error", kind}, {"message", message}, {"exit_code", kExitDomainError}}
                   .dump()
            << "\n";
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"Targeted syntactic evaluation workbench", "syneval"};
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));
  std::size_t jobs = 1;
  app.add_option("--jobs", jobs, "Worker cap (work currently runs sequentially)")
      ->check(CLI::PositiveNumber);

  // One TOML file may carry a [section] per command; flags override it.
  app.set_config("--config", "", "TOML file with a [command] section of option values");
  app.fallthrough();
  app.option_defaults()->always_capture_default();
  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "Write a test suite or corpus");
  g->add_option("--suite", gen.suite, "agreement | minimal-pairs | corpus | qform")
      ->required()
      ->check(CLI::IsMember({"agreement", "minimal-pairs", "corpus", "qform"}));
  g->add_option("--lexicon", gen.lexicon, "Lexicon JSON (default: built-in)");
  g->add_option("--attractors", gen.attractors, "Attractor counts, e.g. 0,1,2")
      ->delimiter(',');
  g->add_option("--per-cell", gen.per_cell, "Agreement items per cell");
  g->add_option("--per-template", gen.per_template, "Minimal pairs per template");
  g->add_option("--phenomena", gen.phenomena, "Restrict minimal pairs to these")
      ->delimiter(',');
  g->add_option("--sentences", gen.sentences, "Corpus size in sentences");
  g->add_option("--seed", gen.seed, "Global seed");
  g->add_option("--out", gen.out, "Output file");
  add_qform_options(g, gen);

  GenerateArgs qgen;
  qgen.suite = "qform";
  auto* qg = app.add_subcommand("qform-gen", "Write question-formation splits");
  qg->add_option("--seed", qgen.seed, "Global seed");
  add_qform_options(qg, qgen);

  TrainArgs tr;
  auto* t = app.add_subcommand("train", "Train a model");
  t->add_option("input", tr.input, "Plain-text corpus, or pairs JSONL for seq2seq")
      ->required();
  t->add_option("--model", tr.model, "ngram | rnn | seq2seq")
      ->check(CLI::IsMember({"ngram", "rnn", "seq2seq"}));
  t->add_option("--out", tr.out, "Model file");
  t->add_option("--seed", tr.seed, "Global seed");
  t->add_option("--order", tr.order, "N-gram order")->check(CLI::Range(1, 8));
  t->add_option("--smoothing", tr.smoothing, "add-k | mle")
      ->check(CLI::IsMember({"add-k", "mle"}));
  t->add_option("--k", tr.k, "Additive smoothing constant")->check(CLI::PositiveNumber);
  t->add_option("--min-count", tr.min_count, "Rarer words become <unk>");
  t->add_option("--cell", tr.cell, "gru | simple")->check(CLI::IsMember({"gru", "simple"}));
  t->add_option("--embedding", tr.embedding, "Embedding size");
  t->add_option("--hidden", tr.hidden, "Hidden size");
  t->add_option("--lr", tr.lr, "Learning rate");
  t->add_option("--epochs", tr.epochs, "Training epochs");
  t->add_option("--bptt", tr.bptt, "Truncation length for backpropagation");
  t->add_option("--clip", tr.clip, "Gradient norm clip");
  t->add_option("--init-scale", tr.init_scale, "Initial parameter range");

  EvalArgs ev;
  auto* e = app.add_subcommand("eval", "Score a suite and write a report");
  add_model_options(e, ev.spec);
  e->add_option("--suite", ev.suite, "Suite JSONL")->required();
  e->add_option("--report", ev.report, "Report JSON");
  e->add_option("--tsv", ev.tsv, "Also write one row per cell as TSV");
  e->add_option("--asymmetry", ev.asymmetry, "Also write stratum error rates");
  e->add_option("--suite-id", ev.suite_id, "Suite identifier (default: file name)");
  e->add_option("--timestamp", ev.timestamp, "Timestamp recorded in the report");
  e->add_flag("--items", ev.items, "Include per-item scores");

  SurprisalArgs su;
  auto* s = app.add_subcommand("surprisal", "Per-token surprisal profiles");
  add_model_options(s, su.spec);
  s->add_option("--in", su.in, "Sentences, plain or JSON lines with regions")->required();
  s->add_option("--out", su.out, "Profile JSONL");
  s->add_option("--report", su.report, "Region aggregates JSON");

  NonceArgs no;
  auto* n = app.add_subcommand("nonce", "Nonce twin of a suite");
  n->add_option("--suite", no.suite, "Suite JSONL")->required();
  n->add_option("--lexicon", no.lexicon, "Lexicon JSON (default: built-in)");
  n->add_option("--seed", no.seed, "Global seed");
  n->add_option("--out", no.out, "Nonce suite JSONL (line i pairs with line i)");
  n->add_option("--model", no.model, "Also compare accuracy under this model");
  n->add_option("--baseline", no.baseline, "Wrap the model, e.g. truncate:4");
  n->add_option("--report", no.report, "Comparison JSON");
  n->add_option("--timestamp", no.timestamp, "Timestamp recorded in reports");

  AdaptArgs ad;
  auto* d = app.add_subcommand("adapt", "Continue training and compare surprisal");
  d->add_option("--model", ad.model, "Recurrent model file")->required();
  d->add_option("--exposure", ad.exposure, "Exposure sentences")->required();
  d->add_option("--probe", ad.probe, "Probe sentences")->required();
  d->add_option("--seed", ad.seed, "Global seed");
  d->add_option("--lr", ad.lr, "Learning rate");
  d->add_option("--epochs", ad.epochs, "Exposure epochs")->check(CLI::NonNegativeNumber);
  d->add_option("--out", ad.out, "Before/after table JSON");
  d->add_option("--tsv", ad.tsv, "Also write the table as TSV");
  d->add_option("--save", ad.save, "Write the adapted model");

  QformEvalArgs qe;
  auto* q = app.add_subcommand("qform-eval", "Diagnose question formation");
  q->add_option("--model", qe.model, "seq2seq model file, linear-rule or structural-rule")
      ->required();
  q->add_option("--data-dir", qe.data_dir, "Directory written by qform-gen");
  q->add_option("--sets", qe.sets, "Split names to evaluate")->delimiter(',');
  q->add_option("--report", qe.report, "Report JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& ex) {
    const int code = app.exit(ex);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (g->parsed()) generate(*g, gen);
    if (qg->parsed()) generate(*qg, qgen);
    if (t->parsed()) train(*t, tr);
    if (e->parsed()) evaluate(*e, ev);
    if (s->parsed()) surprisal_cmd(*s, su);
    if (n->parsed()) nonce_cmd(*n, no);
    if (d->parsed()) adapt_cmd(*d, ad);
    if (q->parsed()) qform_eval(*q, qe);
  } catch (const Error& ex) {
    report_error(to_string(ex.kind()), ex.what());
    return kExitDomainError;
  } catch (const nlohmann::json::exception& ex) {
    report_error(to_string(ErrorKind::kFormat), ex.what());
    return kExitDomainError;
  } catch (const std::exception& ex) {
    report_error("Internal", ex.what());
    return kExitDomainError;
  }
  return kExitOk;
}

int run(const std::vector<std::string>& args) {
  std::vector<const char*> argv{"syneval"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data());
}

}  // namespace syneval::cli

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

#include "syneval/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "syneval/error.hpp"
#include "syneval/lexgen.hpp"

namespace syneval {

namespace {

std::vector<std::string> split_tabs(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    out.emplace_back(line.substr(start, tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return out;
}

bool parse_index(std::string_view s, std::size_t& out) {
  if (s.empty()) return false;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end;
}

Number number_from_feats(std::string_view feats) {
  std::size_t start = 0;
  while (start <= feats.size()) {
    auto bar = feats.find('|', start);
    if (bar == std::string_view::npos) bar = feats.size();
    const auto feat = feats.substr(start, bar - start);
    if (feat == "Number=Sing") return Number::kSingular;
    if (feat == "Number=Plur") return Number::kPlural;
    start = bar + 1;
  }
  return Number::kNone;
}

void validate_tree(const ParsedSentence& s, std::size_t first_line) {
  const std::size_t n = s.tokens.size();
  std::size_t roots = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& t = s.tokens[i];
    if (t.id != i + 1) {
      throw MalformedLineError(first_line, "word ids are not consecutive from 1");
    }
    if (t.head > n) {
      throw MalformedLineError(first_line, "head " + std::to_string(t.head) +
                                               " of word " + std::to_string(t.id) +
                                               " is out of range");
    }
    if (t.head == t.id) {
      throw MalformedLineError(first_line,
                               "word " + std::to_string(t.id) + " heads itself");
    }
    if (t.head == 0) ++roots;
  }
  if (roots != 1) {
    throw MalformedLineError(first_line, "sentence has " + std::to_string(roots) +
                                             " roots; expected exactly one");
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t cur = i + 1;
    for (std::size_t steps = 0; cur != 0; ++steps) {
      if (steps > n) {
        throw MalformedLineError(first_line, "head graph has a cycle through word " +
                                                 std::to_string(i + 1));
      }
      cur = s.tokens[cur - 1].head;
    }
  }
}

bool is_subject_relation(std::string_view deprel) {
  return deprel == "nsubj" || deprel.starts_with("nsubj:");
}

bool is_verbal(std::string_view upos) { return upos == "VERB" || upos == "AUX"; }

}  // namespace

std::vector<ParsedSentence> parse_conllu(std::string_view text) {
  std::vector<ParsedSentence> out;
  ParsedSentence current;
  std::size_t sentence_line = 0;
  bool open = false;
  auto flush = [&] {
    if (open && !current.tokens.empty()) {
      validate_tree(current, sentence_line);
      out.push_back(std::move(current));
    }
    current = ParsedSentence{};
    open = false;
  };

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) {
      flush();
      if (nl == text.size()) break;
      continue;
    }
    if (!open) {
      open = true;
      sentence_line = line_no;
    }
    if (line.front() == '#') {
      std::string_view c = line.substr(1);
      if (!c.empty() && c.front() == ' ') c.remove_prefix(1);
      current.comments.emplace_back(c);
      continue;
    }
    auto cols = split_tabs(line);
    if (cols.size() != 10) {
      throw MalformedLineError(line_no, "expected 10 tab-separated columns, found " +
                                            std::to_string(cols.size()));
    }
    if (cols[0].find('-') != std::string::npos ||
        cols[0].find('.') != std::string::npos) {
      continue;  // multiword range or empty node
    }
    ConlluToken tok;
    if (!parse_index(cols[0], tok.id)) {
      throw MalformedLineError(line_no, "bad word id '" + cols[0] + "'");
    }
    if (!parse_index(cols[6], tok.head)) {
      throw MalformedLineError(line_no, "bad head '" + cols[6] + "'");
    }
    if (tok.id != current.tokens.size() + 1) {
      throw MalformedLineError(line_no, "word id " + cols[0] + " out of sequence");
    }
    tok.form = cols[1];
    tok.lemma = cols[2];
    tok.upos = cols[3];
    tok.xpos = cols[4];
    tok.feats = cols[5];
    tok.deprel = cols[7];
    tok.deps = cols[8];
    tok.misc = cols[9];
    tok.number = number_from_feats(tok.feats);
    if (tok.form.empty() || tok.deprel.empty()) {
      throw MalformedLineError(line_no, "empty form or relation");
    }
    current.tokens.push_back(std::move(tok));
  }
  flush();
  return out;
}

std::vector<ParsedSentence> read_conllu(const std::filesystem::path& path) {
  return parse_conllu(read_file(path));
}

std::string write_conllu(const std::vector<ParsedSentence>& sentences) {
  std::string out;
  for (const auto& s : sentences) {
    for (const auto& c : s.comments) out += "# " + c + "\n";
    for (const auto& t : s.tokens) {
      out += std::to_string(t.id) + '\t' + t.form + '\t' + t.lemma + '\t' +
             t.upos + '\t' + t.xpos + '\t' + t.feats + '\t' +
             std::to_string(t.head) + '\t' + t.deprel + '\t' + t.deps + '\t' +
             t.misc + '\n';
    }
    out += '\n';
  }
  return out;
}

std::vector<Token> as_tokens(const ParsedSentence& sentence) {
  std::vector<Token> out;
  out.reserve(sentence.tokens.size());
  for (const auto& t : sentence.tokens) {
    Token tok;
    tok.surface = t.form;
    tok.lemma = t.lemma;
    if (t.upos == "NOUN") {
      tok.pos = Pos::kNoun;
    } else if (is_verbal(t.upos)) {
      tok.pos = t.upos == "AUX" ? Pos::kAux : Pos::kVerb;
    } else {
      tok.pos = Pos::kPunct;  // only nouns matter for attractor counting
    }
    tok.number = t.number;
    out.push_back(std::move(tok));
  }
  return out;
}

Extraction extract_dependencies(const std::vector<ParsedSentence>& sentences) {
  Extraction ex;
  for (std::size_t si = 0; si < sentences.size(); ++si) {
    const auto& s = sentences[si];
    std::vector<Token> tokens;  // built lazily
    for (std::size_t i = 0; i < s.tokens.size(); ++i) {
      const auto& subj = s.tokens[i];
      if (!is_subject_relation(subj.deprel)) continue;
      if (subj.upos != "NOUN") {
        ++ex.skipped["subject not a noun"];
        continue;
      }
      const bool coordinated = std::any_of(
          s.tokens.begin(), s.tokens.end(),
          [&](const ConlluToken& t) { return t.head == subj.id && t.deprel == "conj"; });
      if (coordinated) {
        ++ex.skipped["coordinated subject"];
        continue;
      }
      const auto& pred = s.tokens[subj.head - 1];
      std::optional<std::size_t> verb;
      if (is_verbal(pred.upos) && pred.number != Number::kNone) {
        verb = subj.head - 1;
      } else {
        for (std::size_t j = 0; j < s.tokens.size(); ++j) {
          const auto& t = s.tokens[j];
          if (t.head == pred.id && (t.deprel == "aux" || t.deprel == "cop") &&
              t.number != Number::kNone) {
            verb = j;
            break;
          }
        }
      }
      if (!verb) {
        ++ex.skipped[is_verbal(pred.upos) ? "no number" : "copular"];
        continue;
      }
      if (subj.number == Number::kNone) {
        ++ex.skipped["no number"];
        continue;
      }
      if (*verb < i) {
        ++ex.skipped["verb before subject"];
        continue;
      }
      if (tokens.empty()) tokens = as_tokens(s);
      AgreementDependency dep;
      dep.sentence = si;
      dep.subject_index = i;
      dep.verb_index = *verb;
      dep.head_number = subj.number;
      dep.attractor_count = count_attractors(tokens, i, *verb);
      for (std::size_t k = i + 1; k < *verb; ++k) {
        if (tokens[k].pos == Pos::kNoun) dep.interveners.push_back({k, tokens[k].number});
      }
      ex.dependencies.push_back(std::move(dep));
    }
  }
  return ex;
}

std::map<int, HistogramBin> attractor_histogram(
    const std::vector<AgreementDependency>& dependencies) {
  std::map<int, HistogramBin> out;
  for (const auto& d : dependencies) ++out[d.attractor_count].frequency;
  const double total = static_cast<double>(dependencies.size());
  for (auto& [count, bin] : out) {
    bin.proportion = static_cast<double>(bin.frequency) / total;
  }
  return out;
}

nlohmann::json to_json(const AgreementDependency& dep) {
  nlohmann::json interveners = nlohmann::json::array();
  for (const auto& n : dep.interveners) {
    interveners.push_back({{"index", n.index}, {"number", to_string(n.number)}});
  }
  return {{"sentence", dep.sentence},
          {"subject_index", dep.subject_index},
          {"verb_index", dep.verb_index},
          {"head_number", to_string(dep.head_number)},
          {"attractor_count", dep.attractor_count},
          {"interveners", interveners}};
}

nlohmann::json to_json(const Extraction& extraction) {
  nlohmann::json deps = nlohmann::json::array();
  for (const auto& d : extraction.dependencies) deps.push_back(to_json(d));
  return {{"schema_version", 1}, {"dependencies", deps}, {"skipped", extraction.skipped}};
}

nlohmann::json histogram_to_json(const std::map<int, HistogramBin>& histogram) {
  nlohmann::json bins = nlohmann::json::array();
  for (const auto& [count, bin] : histogram) {
    bins.push_back({{"attractor_count", count},
                    {"frequency", bin.frequency},
                    {"proportion", bin.proportion}});
  }
  return {{"schema_version", 1}, {"bins", bins}};
}

std::vector<std::vector<std::string>> tokenize_plain(std::string_view text) {
  std::vector<std::vector<std::string>> out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    for (auto& c : line) {
      c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    std::istringstream words(line);
    std::vector<std::string> sentence;
    std::string w;
    while (words >> w) sentence.push_back(w);
    if (sentence.empty()) continue;
    std::vector<std::string> trailing;
    auto& last = sentence.back();
    while (last.size() > 1 &&
           (last.back() == '.' || last.back() == '?' || last.back() == '!')) {
      trailing.insert(trailing.begin(), std::string(1, last.back()));
      last.pop_back();
    }
    sentence.insert(sentence.end(), trailing.begin(), trailing.end());
    out.push_back(std::move(sentence));
  }
  return out;
}

std::vector<std::vector<std::string>> read_plain(const std::filesystem::path& path) {
  return tokenize_plain(read_file(path));
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIoFailure, "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kIoFailure, "cannot write '" + path.string() + "'");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw Error(ErrorKind::kIoFailure, "write failed for '" + path.string() + "'");
}

}  // namespace syneval

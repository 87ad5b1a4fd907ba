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

#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "syneval/token.hpp"

namespace syneval {

// One CoNLL-U word line. id is the 1-based word index; head 0 is the root.
struct ConlluToken {
  std::size_t id = 0;
  std::string form;
  std::string lemma;
  std::string upos;
  std::string xpos = "_";
  std::string feats = "_";
  std::size_t head = 0;
  std::string deprel;
  std::string deps = "_";
  std::string misc = "_";
  // From Number=Sing|Plur in feats.
  Number number = Number::kNone;

  friend bool operator==(const ConlluToken&, const ConlluToken&) = default;
};

struct ParsedSentence {
  std::vector<std::string> comments;  // without the leading '#'
  std::vector<ConlluToken> tokens;

  friend bool operator==(const ParsedSentence&, const ParsedSentence&) = default;
};

// Multiword ranges (1-2) and empty nodes (1.1) are skipped. Each sentence
// must have heads in range, exactly one root and no cycles.
std::vector<ParsedSentence> parse_conllu(std::string_view text);
std::vector<ParsedSentence> read_conllu(const std::filesystem::path& path);
std::string write_conllu(const std::vector<ParsedSentence>& sentences);

struct InterveningNoun {
  std::size_t index = 0;
  Number number = Number::kNone;

  friend bool operator==(const InterveningNoun&, const InterveningNoun&) = default;
};

// Indices are 0-based positions into ParsedSentence::tokens.
struct AgreementDependency {
  std::size_t sentence = 0;
  std::size_t subject_index = 0;
  std::size_t verb_index = 0;
  Number head_number = Number::kNone;
  int attractor_count = 0;
  std::vector<InterveningNoun> interveners;

  friend bool operator==(const AgreementDependency&,
                         const AgreementDependency&) = default;
};

struct Extraction {
  std::vector<AgreementDependency> dependencies;
  // Reason -> number of nsubj relations skipped for it.
  std::map<std::string, std::size_t> skipped;
};

// Subjects are nouns attached by nsubj or nsubj:*. The agreeing word is the
// head when it is a numbered VERB or AUX, else its first numbered aux/cop
// child. Coordinated subjects, unnumbered words and verb-first orders are
// skipped and tallied.
Extraction extract_dependencies(const std::vector<ParsedSentence>& sentences);

// The sentence as lexgen tokens (NOUN -> noun, everything else non-noun).
std::vector<Token> as_tokens(const ParsedSentence& sentence);

struct HistogramBin {
  std::size_t frequency = 0;
  double proportion = 0.0;
};

std::map<int, HistogramBin> attractor_histogram(
    const std::vector<AgreementDependency>& dependencies);

nlohmann::json to_json(const AgreementDependency& dep);
nlohmann::json to_json(const Extraction& extraction);
nlohmann::json histogram_to_json(const std::map<int, HistogramBin>& histogram);

// One sentence per non-empty line; lower-cased, whitespace split, with
// sentence-final . ? ! split off as separate tokens.
std::vector<std::vector<std::string>> tokenize_plain(std::string_view text);
std::vector<std::vector<std::string>> read_plain(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace syneval

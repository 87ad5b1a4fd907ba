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

#include "syneval/vocabulary.hpp"

#include <map>

#include "syneval/error.hpp"

namespace syneval {

Vocabulary::Vocabulary() {
  add(std::string(kUnkWord));
  add(std::string(kBosWord));
  add(std::string(kEosWord));
}

WordId Vocabulary::add(const std::string& word) {
  if (auto it = index_.find(word); it != index_.end()) return it->second;
  const auto id = static_cast<WordId>(words_.size());
  words_.push_back(word);
  index_.emplace(word, id);
  return id;
}

Vocabulary Vocabulary::build(
    const std::vector<std::vector<std::string>>& corpus,
    std::size_t min_count) {
  std::unordered_map<std::string, std::size_t> counts;
  for (const auto& sentence : corpus) {
    for (const auto& w : sentence) ++counts[w];
  }
  Vocabulary vocab;
  for (const auto& sentence : corpus) {
    for (const auto& w : sentence) {
      if (counts[w] >= min_count) vocab.add(w);
    }
  }
  return vocab;
}

Vocabulary Vocabulary::from_words(const std::vector<std::string>& words) {
  if (words.size() < 3 || words[0] != kUnkWord || words[1] != kBosWord ||
      words[2] != kEosWord) {
    throw Error(ErrorKind::kFormat,
                "vocabulary must start with <unk>, <s>, </s>");
  }
  Vocabulary vocab;
  for (std::size_t i = 3; i < words.size(); ++i) {
    if (vocab.contains(words[i])) {
      throw Error(ErrorKind::kFormat, "duplicate vocabulary word '" + words[i] + "'");
    }
    vocab.add(words[i]);
  }
  return vocab;
}

WordId Vocabulary::lookup(std::string_view word) const {
  auto it = index_.find(std::string(word));
  return it == index_.end() ? kUnk : it->second;
}

bool Vocabulary::contains(std::string_view word) const {
  return index_.count(std::string(word)) != 0;
}

std::vector<WordId> Vocabulary::encode(const std::vector<std::string>& words,
                                       std::size_t* unk_count) const {
  std::vector<WordId> ids;
  ids.reserve(words.size());
  for (const auto& w : words) {
    const WordId id = lookup(w);
    if (id == kUnk && unk_count != nullptr && w != kUnkWord) ++*unk_count;
    ids.push_back(id);
  }
  return ids;
}

}  // namespace syneval

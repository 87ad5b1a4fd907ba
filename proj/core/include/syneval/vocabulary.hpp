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
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace syneval {

using WordId = std::uint32_t;

// Dense word index. Ids 0, 1, 2 are always <unk>, <s>, </s>; the remaining
// words follow in first-seen order so a vocabulary round-trips through its
// word list.
class Vocabulary {
 public:
  static constexpr WordId kUnk = 0;
  static constexpr WordId kBos = 1;
  static constexpr WordId kEos = 2;
  static constexpr std::string_view kUnkWord = "<unk>";
  static constexpr std::string_view kBosWord = "<s>";
  static constexpr std::string_view kEosWord = "</s>";

  Vocabulary();

  // Words occurring fewer than min_count times map to <unk>.
  static Vocabulary build(const std::vector<std::vector<std::string>>& corpus,
                          std::size_t min_count = 2);

  // Inverse of words(); reserved symbols must lead the list.
  static Vocabulary from_words(const std::vector<std::string>& words);

  WordId add(const std::string& word);

  WordId lookup(std::string_view word) const;
  bool contains(std::string_view word) const;
  const std::string& word(WordId id) const { return words_.at(id); }
  const std::vector<std::string>& words() const { return words_; }
  std::size_t size() const { return words_.size(); }

  // Maps words to ids; each <unk> mapping of a word that is not literally
  // "<unk>" increments *unk_count when supplied.
  std::vector<WordId> encode(const std::vector<std::string>& words,
                             std::size_t* unk_count = nullptr) const;

  friend bool operator==(const Vocabulary& a, const Vocabulary& b) {
    return a.words_ == b.words_;
  }

 private:
  std::vector<std::string> words_;
  std::unordered_map<std::string, WordId> index_;
};

}  // namespace syneval

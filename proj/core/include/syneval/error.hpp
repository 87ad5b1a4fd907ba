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

#include <stdexcept>
#include <string>
#include <string_view>

namespace syneval {

// Every failure the library reports carries one of these kinds, so that
// callers (and the CLI's machine-readable error output) can dispatch on it.
enum class ErrorKind {
  kInvalidArgument,
  kEmptyLexicalClass,
  kSampleTooLarge,
  kNoTemplateForCell,
  kHeadNotNoun,
  kClassTooSmall,
  kMissingMetadata,
  kMalformedPair,
  kInvalidLexicon,
  kEmptyCorpus,
  kNonFiniteLoss,
  kNoAuxiliary,
  kNoDisambiguatingSentences,
  kMalformedLine,
  kIoFailure,
  kMissingStratum,
  kRegionOutOfRange,
  kFormat,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Raised by read_conllu; line is 1-based.
class MalformedLineError : public Error {
 public:
  MalformedLineError(std::size_t line, const std::string& message)
      : Error(ErrorKind::kMalformedLine,
              "line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Raised by training when the loss stops being finite; epoch is 1-based.
class NonFiniteLossError : public Error {
 public:
  explicit NonFiniteLossError(int epoch)
      : Error(ErrorKind::kNonFiniteLoss,
              "training loss became non-finite in epoch " +
                  std::to_string(epoch)),
        epoch_(epoch) {}

  int epoch() const noexcept { return epoch_; }

 private:
  int epoch_;
};

}  // namespace syneval

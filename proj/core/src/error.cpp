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

#include "syneval/error.hpp"

namespace syneval {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidArgument: return "InvalidArgument";
    case ErrorKind::kEmptyLexicalClass: return "EmptyLexicalClass";
    case ErrorKind::kSampleTooLarge: return "SampleTooLarge";
    case ErrorKind::kNoTemplateForCell: return "NoTemplateForCell";
    case ErrorKind::kHeadNotNoun: return "HeadNotNoun";
    case ErrorKind::kClassTooSmall: return "ClassTooSmall";
    case ErrorKind::kMissingMetadata: return "MissingMetadata";
    case ErrorKind::kMalformedPair: return "MalformedPair";
    case ErrorKind::kInvalidLexicon: return "InvalidLexicon";
    case ErrorKind::kEmptyCorpus: return "EmptyCorpus";
    case ErrorKind::kNonFiniteLoss: return "NonFiniteLoss";
    case ErrorKind::kNoAuxiliary: return "NoAuxiliary";
    case ErrorKind::kNoDisambiguatingSentences: return "NoDisambiguatingSentences";
    case ErrorKind::kMalformedLine: return "MalformedLine";
    case ErrorKind::kIoFailure: return "IoFailure";
    case ErrorKind::kMissingStratum: return "MissingStratum";
    case ErrorKind::kRegionOutOfRange: return "RegionOutOfRange";
    case ErrorKind::kFormat: return "Format";
  }
  return "Unknown";
}

}  // namespace syneval

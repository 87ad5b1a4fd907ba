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

#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <variant>

#include "json.hpp"
#include "syneval/ngram.hpp"
#include "syneval/recurrent_lm.hpp"
#include "syneval/transducer.hpp"

namespace syneval {

// Model container, version 1:
//   bytes 0-7    magic "SYNMODEL"
//   u32 LE       container version
//   u64 LE       header length H
//   H bytes      UTF-8 JSON header {kind, vocabulary, options, seed, extra}
//   u64 LE       parameter count P
//   P x f64 LE   parameters (IEEE-754 bit patterns, copied verbatim)
// Saving a loaded model reproduces the file byte for byte.
inline constexpr std::uint32_t kModelContainerVersion = 1;

using AnyModel = std::variant<NGramModel, RecurrentLM, TransducerModel>;

struct StoredModel {
  AnyModel model;
  // Free-form metadata stored alongside the model (loss curves, manifests).
  nlohmann::json extra = nlohmann::json::object();
};

std::string serialize_model(const StoredModel& stored);
StoredModel deserialize_model(std::string_view bytes);

void save_model(const std::filesystem::path& path, const StoredModel& stored);
StoredModel load_model(const std::filesystem::path& path);

// Language-model view of a stored model; throws for transducers.
std::shared_ptr<const LanguageModel> as_language_model(StoredModel stored);

}  // namespace syneval

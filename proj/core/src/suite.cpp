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

#include "syneval/suite.hpp"

#include <fstream>
#include <sstream>

#include "syneval/error.hpp"

namespace syneval {

std::string_view to_string(Phenomenon p) {
  switch (p) {
    case Phenomenon::kAgreementSimple: return "agreement-simple";
    case Phenomenon::kAgreementPp: return "agreement-pp";
    case Phenomenon::kAgreementRc: return "agreement-rc";
    case Phenomenon::kReflexive: return "reflexive";
    case Phenomenon::kNpi: return "npi";
  }
  return "?";
}

std::string_view to_string(Intervener i) {
  switch (i) {
    case Intervener::kNone: return "none";
    case Intervener::kPp: return "pp";
    case Intervener::kRc: return "rc";
  }
  return "?";
}

std::optional<Phenomenon> parse_phenomenon(std::string_view text) {
  for (auto p : {Phenomenon::kAgreementSimple, Phenomenon::kAgreementPp,
                 Phenomenon::kAgreementRc, Phenomenon::kReflexive,
                 Phenomenon::kNpi}) {
    if (to_string(p) == text) return p;
  }
  return std::nullopt;
}

std::optional<Intervener> parse_intervener(std::string_view text) {
  for (auto i : {Intervener::kNone, Intervener::kPp, Intervener::kRc}) {
    if (to_string(i) == text) return i;
  }
  return std::nullopt;
}

namespace {

void write_condition(nlohmann::json& j, const Condition& c) {
  j["phenomenon"] = to_string(c.phenomenon);
  j["attractor_count"] = c.attractor_count;
  j["head_number"] = to_string(c.head_number);
  j["intervener"] = to_string(c.intervener);
  j["template_id"] = c.template_id;
  if (c.head_index) j["head_index"] = *c.head_index;
  if (c.target_index) j["target_index"] = *c.target_index;
}

template <typename T, typename Parse>
T parse_field(const nlohmann::json& j, const char* key, Parse parse) {
  const auto text = j.at(key).get<std::string>();
  const auto value = parse(text);
  if (!value) {
    throw Error(ErrorKind::kFormat,
                std::string("bad value '") + text + "' for " + key);
  }
  return *value;
}

Condition read_condition(const nlohmann::json& j) {
  Condition c;
  c.phenomenon = parse_field<Phenomenon>(j, "phenomenon", parse_phenomenon);
  c.attractor_count = j.at("attractor_count").get<int>();
  c.head_number = parse_field<Number>(j, "head_number", parse_number);
  c.intervener = parse_field<Intervener>(j, "intervener", parse_intervener);
  c.template_id = j.value("template_id", std::string{});
  if (j.contains("head_index")) c.head_index = j["head_index"].get<std::size_t>();
  if (j.contains("target_index")) {
    c.target_index = j["target_index"].get<std::size_t>();
  }
  return c;
}

}  // namespace

nlohmann::json to_json(const SuiteInstance& instance) {
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "suite_instance";
  j["tokens"] = instance.tokens;
  j["correct"] = instance.correct;
  j["incorrect"] = instance.incorrect;
  write_condition(j, instance.condition);
  return j;
}

nlohmann::json to_json(const MinimalPair& pair) {
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "minimal_pair";
  j["grammatical"] = pair.grammatical;
  j["ungrammatical"] = pair.ungrammatical;
  j["diverging_span"] = {pair.span_start, pair.span_end};
  write_condition(j, pair.condition);
  return j;
}

SuiteInstance suite_instance_from_json(const nlohmann::json& j) {
  SuiteInstance s;
  s.tokens = j.at("tokens").get<std::vector<Token>>();
  s.correct = j.at("correct").get<Token>();
  s.incorrect = j.at("incorrect").get<Token>();
  s.condition = read_condition(j);
  return s;
}

MinimalPair minimal_pair_from_json(const nlohmann::json& j) {
  MinimalPair p;
  p.grammatical = j.at("grammatical").get<std::vector<Token>>();
  p.ungrammatical = j.at("ungrammatical").get<std::vector<Token>>();
  const auto& span = j.at("diverging_span");
  p.span_start = span.at(0).get<std::size_t>();
  p.span_end = span.at(1).get<std::size_t>();
  p.condition = read_condition(j);
  return p;
}

std::string to_jsonl(const std::vector<SuiteRecord>& records) {
  std::string out;
  for (const auto& r : records) {
    out += std::visit([](const auto& item) { return to_json(item).dump(); }, r);
    out += '\n';
  }
  return out;
}

std::vector<SuiteRecord> parse_suite(std::string_view text) {
  std::vector<SuiteRecord> records;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      const int version = j.at("schema_version").get<int>();
      if (version != kSchemaVersion) {
        throw Error(ErrorKind::kFormat,
                    "unsupported schema_version " + std::to_string(version));
      }
      const auto kind = j.value("kind", std::string{});
      if (kind == "minimal_pair" || (kind.empty() && j.contains("grammatical"))) {
        records.emplace_back(minimal_pair_from_json(j));
      } else {
        records.emplace_back(suite_instance_from_json(j));
      }
    } catch (const nlohmann::json::exception& ex) {
      throw Error(ErrorKind::kFormat, "suite line " + std::to_string(line_no) +
                                          ": " + ex.what());
    } catch (const Error& ex) {
      throw Error(ex.kind(),
                  "suite line " + std::to_string(line_no) + ": " + ex.what());
    }
  }
  return records;
}

std::vector<SuiteRecord> read_suite(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorKind::kIoFailure,
                "cannot open suite file '" + path.string() + "'");
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_suite(buf.str());
}

}  // namespace syneval

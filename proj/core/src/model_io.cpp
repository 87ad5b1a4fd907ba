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

#include "syneval/model_io.hpp"

#include <cstring>
#include <fstream>
#include <sstream>

#include "syneval/error.hpp"

namespace syneval {

namespace {

constexpr char kMagic[8] = {'S', 'Y', 'N', 'M', 'O', 'D', 'E', 'L'};

void put_u64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

class Reader {
 public:
  explicit Reader(std::string_view bytes) : bytes_(bytes) {}

  std::string_view take(std::size_t n) {
    if (n > bytes_.size() - pos_) {
      throw Error(ErrorKind::kFormat, "model file is truncated");
    }
    auto out = bytes_.substr(pos_, n);
    pos_ += n;
    return out;
  }

  std::uint64_t u64() { return little_endian(take(8)); }
  std::uint32_t u32() { return static_cast<std::uint32_t>(little_endian(take(4))); }
  bool done() const { return pos_ == bytes_.size(); }

 private:
  static std::uint64_t little_endian(std::string_view b) {
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < b.size(); ++i) {
      v |= static_cast<std::uint64_t>(static_cast<unsigned char>(b[i])) << (8 * i);
    }
    return v;
  }

  std::string_view bytes_;
  std::size_t pos_ = 0;
};

std::string pack(const nlohmann::json& header, std::span<const double> params) {
  const std::string text = header.dump();
  std::string out(kMagic, sizeof(kMagic));
  put_u32(out, kModelContainerVersion);
  put_u64(out, text.size());
  out += text;
  put_u64(out, params.size());
  for (double p : params) {
    std::uint64_t bits;
    std::memcpy(&bits, &p, sizeof(bits));
    put_u64(out, bits);
  }
  return out;
}

}  // namespace

std::string serialize_model(const StoredModel& stored) {
  nlohmann::json header;
  header["extra"] = stored.extra;
  return std::visit(
      [&](const auto& m) -> std::string {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, NGramModel>) {
          header["kind"] = "ngram";
          header["ngram"] = m.to_json();
          return pack(header, {});
        } else if constexpr (std::is_same_v<T, RecurrentLM>) {
          header["kind"] = "recurrent";
          header["vocabulary"] = m.vocabulary().words();
          header["options"] = m.options();
          header["seed"] = m.seed();
          return pack(header, m.parameters());
        } else {
          header["kind"] = "transducer";
          header["vocabulary"] = m.vocabulary().words();
          header["options"] = m.options();
          header["seed"] = m.seed();
          return pack(header, m.parameters());
        }
      },
      stored.model);
}

StoredModel deserialize_model(std::string_view bytes) {
  Reader in(bytes);
  if (in.take(sizeof(kMagic)) != std::string_view(kMagic, sizeof(kMagic))) {
    throw Error(ErrorKind::kFormat, "not a syneval model file (bad magic)");
  }
  const auto version = in.u32();
  if (version != kModelContainerVersion) {
    throw Error(ErrorKind::kFormat,
                "unsupported model container version " + std::to_string(version));
  }
  const auto header_len = in.u64();
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(in.take(header_len));
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorKind::kFormat, std::string("bad model header: ") + ex.what());
  }
  const auto count = in.u64();
  std::vector<double> params;
  params.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    const std::uint64_t bits = in.u64();
    double p;
    std::memcpy(&p, &bits, sizeof(p));
    params.push_back(p);
  }
  if (!in.done()) throw Error(ErrorKind::kFormat, "trailing bytes in model file");

  try {
    const auto kind = header.at("kind").get<std::string>();
    nlohmann::json extra = header.value("extra", nlohmann::json::object());
    if (kind == "ngram") {
      return {NGramModel::from_json(header.at("ngram")), std::move(extra)};
    }
    auto vocab = Vocabulary::from_words(
        header.at("vocabulary").get<std::vector<std::string>>());
    const auto seed = header.at("seed").get<std::uint64_t>();
    if (kind == "recurrent") {
      return {RecurrentLM(std::move(vocab),
                          header.at("options").get<RecurrentOptions>(), seed,
                          std::move(params)),
              std::move(extra)};
    }
    if (kind == "transducer") {
      return {TransducerModel(std::move(vocab),
                              header.at("options").get<TransducerOptions>(),
                              seed, std::move(params)),
              std::move(extra)};
    }
    throw Error(ErrorKind::kFormat, "unknown model kind '" + kind + "'");
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorKind::kFormat, std::string("bad model header: ") + ex.what());
  }
}

void save_model(const std::filesystem::path& path, const StoredModel& stored) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorKind::kIoFailure, "cannot write '" + path.string() + "'");
  }
  const auto bytes = serialize_model(stored);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) {
    throw Error(ErrorKind::kIoFailure, "write failed for '" + path.string() + "'");
  }
}

StoredModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::kIoFailure,
                "cannot open model file '" + path.string() + "'");
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return deserialize_model(buf.str());
}

std::shared_ptr<const LanguageModel> as_language_model(StoredModel stored) {
  if (auto* n = std::get_if<NGramModel>(&stored.model)) {
    return std::make_shared<NGramModel>(std::move(*n));
  }
  if (auto* r = std::get_if<RecurrentLM>(&stored.model)) {
    return std::make_shared<RecurrentLM>(std::move(*r));
  }
  throw Error(ErrorKind::kInvalidArgument,
              "a transducer is not a language model");
}

}  // namespace syneval

/*
 * Copyright 2026 The cutsynth Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "manifest_io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "errors.hpp"

namespace cutsynth {

using nlohmann::json;

namespace {

constexpr const char* kFormat = "cutsynth-manifest";
constexpr int kFormatVersion = 1;

json LabelToJson(const std::optional<Coarseness>& label) {
  return label ? json(LabelName(*label)) : json(nullptr);
}

std::optional<Coarseness> LabelFromJson(const json& j) {
  if (j.is_null()) return std::nullopt;
  const auto s = j.get<std::string>();
  if (s == "coarse") return Coarseness::kCoarse;
  if (s == "fine") return Coarseness::kFine;
  throw Error(ErrorCode::kParse, "bad label '" + s + "'");
}

template <typename T>
json OptionalToJson(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

template <typename T>
std::optional<T> OptionalFromJson(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<T>();
}

json MetadataToJson(const ManifestMetadata& m) {
  json sources = json::array();
  for (const auto& s : m.sources) {
    sources.push_back({{"source_id", s.source_id},
                       {"object_name", s.object_name},
                       {"accepted", s.accepted},
                       {"rejected", s.rejected},
                       {"error", s.error}});
  }
  return {{"format", kFormat},
          {"format_version", kFormatVersion},
          {"tool_version", m.tool_version},
          {"global_seed", m.global_seed},
          {"grid", GridSpecToJson(m.grid)},
          {"cells_per_source", m.cells_per_source},
          {"accepted", m.accepted},
          {"rejected", m.rejected},
          {"sources", sources},
          {"train_fraction", OptionalToJson(m.train_fraction)},
          {"split_seed", OptionalToJson(m.split_seed)},
          {"target", m.target}};
}

ManifestMetadata MetadataFromJson(const json& j) {
  if (j.value("format", "") != kFormat) {
    throw Error(ErrorCode::kParse, "manifest header lacks format tag");
  }
  ManifestMetadata m;
  m.tool_version = j.at("tool_version").get<std::string>();
  m.global_seed = j.at("global_seed").get<std::uint64_t>();
  m.grid = GridSpecFromJson(j.at("grid"));
  m.cells_per_source = j.at("cells_per_source").get<std::size_t>();
  m.accepted = j.at("accepted").get<std::size_t>();
  m.rejected = j.at("rejected").get<std::size_t>();
  for (const auto& s : j.at("sources")) {
    m.sources.push_back({s.at("source_id").get<std::string>(),
                         s.at("object_name").get<std::string>(),
                         s.at("accepted").get<std::size_t>(),
                         s.at("rejected").get<std::size_t>(),
                         s.at("error").get<std::string>()});
  }
  m.train_fraction = OptionalFromJson<double>(j.value("train_fraction", json()));
  m.split_seed = OptionalFromJson<std::uint64_t>(j.value("split_seed", json()));
  m.target = j.value("target", std::string("change_ratio"));
  return m;
}

}  // namespace

json GridSpecToJson(const GridSpec& spec) {
  json strategies = json::array();
  for (auto s : spec.strategies) strategies.push_back(StrategyName(s));
  json intervals = json::array();
  for (const auto& m : spec.move_intervals) intervals.push_back({m.lo, m.hi});
  return {{"seed_counts", spec.seed_counts},
          {"strategies", strategies},
          {"move_intervals", intervals},
          {"noises", spec.noises},
          {"anchor", spec.anchor.fixed_id ? json(*spec.anchor.fixed_id)
                                          : json("random")}};
}

GridSpec GridSpecFromJson(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::kParse, "grid spec must be an object");
  for (const auto& [key, value] : j.items()) {
    if (key != "seed_counts" && key != "strategies" && key != "move_intervals" &&
        key != "noises" && key != "anchor") {
      throw Error(ErrorCode::kParse, "unknown grid spec key '" + key + "'");
    }
  }
  GridSpec spec;
  try {
    if (j.contains("seed_counts")) {
      spec.seed_counts = j.at("seed_counts").get<std::vector<int>>();
    }
    if (j.contains("strategies")) {
      spec.strategies.clear();
      for (const auto& s : j.at("strategies")) {
        spec.strategies.push_back(ParseStrategy(s.get<std::string>()));
      }
    }
    if (j.contains("move_intervals")) {
      spec.move_intervals.clear();
      for (const auto& m : j.at("move_intervals")) {
        if (!m.is_array() || m.size() != 2) {
          throw Error(ErrorCode::kParse, "move interval must be [lo, hi]");
        }
        spec.move_intervals.push_back({m[0].get<double>(), m[1].get<double>()});
      }
    }
    if (j.contains("noises")) spec.noises = j.at("noises").get<std::vector<double>>();
    if (j.contains("anchor")) {
      const auto& a = j.at("anchor");
      if (a.is_string() && a.get<std::string>() == "random") {
        spec.anchor.fixed_id.reset();
      } else if (a.is_number_integer()) {
        spec.anchor.fixed_id = a.get<int>();
      } else {
        throw Error(ErrorCode::kParse, "anchor must be \"random\" or 0..8");
      }
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("grid spec: ") + e.what());
  }
  return spec;
}

json RecordToJson(const AugRecord& r) {
  json params = {{"n_seeds", r.params.n_seeds},
                 {"strategy", StrategyName(r.params.strategy)},
                 {"move_lo", r.params.move.lo},
                 {"move_hi", r.params.move.hi},
                 {"noise", r.params.noise},
                 {"anchor_id", r.params.anchor_id}};
  return {{"source_id", r.source_id},
          {"aug_id", r.aug_id},
          {"object_name", r.object_name},
          {"params", params},
          {"c", r.c},
          {"label_c", LabelToJson(r.label_c)},
          {"label_seeds", LabelToJson(r.label_seeds)},
          {"reg_target", OptionalToJson(r.reg_target)},
          {"reg_target_seeds", OptionalToJson(r.reg_target_seeds)},
          {"split", r.split ? json(SplitName(*r.split)) : json(nullptr)},
          {"image_path", r.image_path},
          {"mask_path", r.mask_path}};
}

AugRecord RecordFromJson(const json& j) {
  AugRecord r;
  r.source_id = j.at("source_id").get<std::string>();
  r.aug_id = j.at("aug_id").get<std::string>();
  r.object_name = j.at("object_name").get<std::string>();
  const json& p = j.at("params");
  r.params.n_seeds = p.at("n_seeds").get<int>();
  r.params.strategy = ParseStrategy(p.at("strategy").get<std::string>());
  r.params.move = {p.at("move_lo").get<double>(), p.at("move_hi").get<double>()};
  r.params.noise = p.at("noise").get<double>();
  r.params.anchor_id = p.at("anchor_id").get<int>();
  r.c = j.at("c").get<double>();
  r.label_c = LabelFromJson(j.at("label_c"));
  r.label_seeds = LabelFromJson(j.at("label_seeds"));
  r.reg_target = OptionalFromJson<double>(j.at("reg_target"));
  r.reg_target_seeds = OptionalFromJson<double>(j.at("reg_target_seeds"));
  const json& split = j.at("split");
  if (!split.is_null()) {
    const auto s = split.get<std::string>();
    if (s == "train") {
      r.split = Split::kTrain;
    } else if (s == "test") {
      r.split = Split::kTest;
    } else {
      throw Error(ErrorCode::kParse, "bad split '" + s + "'");
    }
  }
  r.image_path = j.at("image_path").get<std::string>();
  r.mask_path = j.at("mask_path").get<std::string>();
  if (!(r.c >= 0.0 && r.c <= 1.0)) {
    throw Error(ErrorCode::kParse, "record " + r.aug_id + " has c outside [0,1]");
  }
  return r;
}

void WriteManifest(const Manifest& manifest, std::ostream& out) {
  out << MetadataToJson(manifest.metadata).dump() << '\n';
  for (const auto& r : manifest.records) out << RecordToJson(r).dump() << '\n';
}

void WriteManifest(const Manifest& manifest, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  WriteManifest(manifest, out);
  if (!out) throw Error(ErrorCode::kIo, "failed writing " + path.string());
}

std::string ManifestToString(const Manifest& manifest) {
  std::ostringstream out;
  WriteManifest(manifest, out);
  return out.str();
}

Manifest ReadManifest(std::istream& in) {
  Manifest manifest;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::map<std::string, bool> seen_ids;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      const json j = json::parse(line);
      if (!have_header) {
        manifest.metadata = MetadataFromJson(j);
        have_header = true;
        continue;
      }
      AugRecord r = RecordFromJson(j);
      if (!seen_ids.emplace(r.aug_id, true).second) {
        throw Error(ErrorCode::kParse, "duplicate aug_id " + r.aug_id);
      }
      manifest.records.push_back(std::move(r));
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kParse,
                  "manifest line " + std::to_string(line_no) + ": " + e.what());
    } catch (const Error& e) {
      throw Error(e.code(),
                  "manifest line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (!have_header) throw Error(ErrorCode::kParse, "manifest is empty");
  return manifest;
}

Manifest ReadManifest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  return ReadManifest(in);
}

}  // namespace cutsynth

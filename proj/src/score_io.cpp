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

#include "score_io.hpp"

#include <fstream>
#include <map>
#include <set>

#include "errors.hpp"

namespace cutsynth {

using nlohmann::json;

ScoreFile ReadScoreFile(std::istream& in) {
  ScoreFile file;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::set<std::string> ids;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      const json j = json::parse(line);
      if (!have_header) {
        if (!j.is_object() || j.contains("item_id")) {
          throw Error(ErrorCode::kParse, "first line must be the header object");
        }
        file.producer = j.value("producer", std::string());
        if (j.contains("sampling_rate") && !j["sampling_rate"].is_null()) {
          file.sampling_rate = j["sampling_rate"].get<double>();
        }
        have_header = true;
        continue;
      }
      ScoreEntry e;
      e.item_id = j.at("item_id").get<std::string>();
      e.score = j.at("score").get<double>();
      if (!(e.score >= 0.0 && e.score <= 1.0)) {
        throw Error(ErrorCode::kParse, "score outside [0,1] for " + e.item_id);
      }
      if (j.contains("label") && !j["label"].is_null()) {
        const auto l = j["label"].get<std::string>();
        if (l == "fine") {
          e.label = Coarseness::kFine;
        } else if (l == "coarse") {
          e.label = Coarseness::kCoarse;
        } else {
          throw Error(ErrorCode::kParse, "bad label '" + l + "'");
        }
      }
      if (j.contains("object_name") && !j["object_name"].is_null()) {
        e.object_name = j["object_name"].get<std::string>();
      }
      if (j.contains("seen") && !j["seen"].is_null()) e.seen = j["seen"].get<bool>();
      if (j.contains("video_id") && !j["video_id"].is_null()) {
        e.video_id = j["video_id"].get<std::string>();
      }
      if (!ids.insert(e.item_id).second) {
        throw Error(ErrorCode::kParse, "duplicate item_id " + e.item_id);
      }
      file.entries.push_back(std::move(e));
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kParse,
                  "score line " + std::to_string(line_no) + ": " + e.what());
    } catch (const Error& e) {
      throw Error(e.code(),
                  "score line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (!have_header) throw Error(ErrorCode::kParse, "score file is empty");
  return file;
}

ScoreFile ReadScoreFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  return ReadScoreFile(in);
}

void WriteScoreFile(const ScoreFile& file, std::ostream& out) {
  json header = {{"producer", file.producer}};
  if (file.sampling_rate) header["sampling_rate"] = *file.sampling_rate;
  out << header.dump() << '\n';
  for (const auto& e : file.entries) {
    json row = {{"item_id", e.item_id}, {"score", e.score}};
    if (e.label) row["label"] = LabelName(*e.label);
    if (e.object_name) row["object_name"] = *e.object_name;
    if (e.seen) row["seen"] = *e.seen;
    if (e.video_id) row["video_id"] = *e.video_id;
    out << row.dump() << '\n';
  }
}

ScoreTable JoinScores(const ScoreFile& scores, const Manifest* manifest) {
  std::map<std::string, const AugRecord*> by_id;
  std::set<std::string> train_objects;
  bool have_split = false;
  if (manifest) {
    for (const auto& r : manifest->records) {
      by_id[r.aug_id] = &r;
      if (r.split) have_split = true;
      if (r.split == Split::kTrain) train_objects.insert(r.object_name);
    }
  }

  ScoreTable table;
  table.reserve(scores.entries.size());
  for (const auto& e : scores.entries) {
    ScoreRow row;
    row.item_id = e.item_id;
    row.score = e.score;
    const AugRecord* rec = nullptr;
    if (auto it = by_id.find(e.item_id); it != by_id.end()) rec = it->second;
    if (e.label) {
      row.label = *e.label;
    } else if (rec && rec->label_c) {
      row.label = *rec->label_c;
    } else {
      throw Error(ErrorCode::kParse, "no label available for item " + e.item_id);
    }
    if (e.object_name) {
      row.object_name = *e.object_name;
    } else if (rec) {
      row.object_name = rec->object_name;
    }
    if (e.seen) {
      row.seen = *e.seen;
    } else {
      row.seen = !have_split || train_objects.count(row.object_name) > 0;
    }
    table.push_back(std::move(row));
  }
  return table;
}

namespace {

json BucketToJson(const BucketResult& b) {
  json j = {{"count", b.count}, {"fine", b.fine}, {"coarse", b.coarse}};
  if (b.map) {
    j["map"] = *b.map;
    j["ap_fine"] = b.ap->fine;
    j["ap_coarse"] = b.ap->coarse;
  } else {
    j["map"] = nullptr;
    j["error"] = b.error;
  }
  return j;
}

}  // namespace

json ReportToJson(const EvalReport& report, double random_baseline) {
  auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  return {{"map_all", opt(report.all.map)},
          {"map_seen", opt(report.seen.map)},
          {"map_unseen", opt(report.unseen.map)},
          {"random_baseline", random_baseline},
          {"buckets",
           {{"all", BucketToJson(report.all)},
            {"seen", BucketToJson(report.seen)},
            {"unseen", BucketToJson(report.unseen)}}}};
}

std::vector<VideoScore> AggregateVideoFile(const ScoreFile& file,
                                           double top_fraction) {
  if (!file.sampling_rate) {
    throw Error(ErrorCode::kParse, "video score header lacks sampling_rate");
  }
  if (*file.sampling_rate != kVideoSamplingRate) {
    throw Error(ErrorCode::kParse,
                "video scores must be sampled at 2 fps, header declares " +
                    std::to_string(*file.sampling_rate));
  }
  std::vector<std::string> order;
  std::map<std::string, std::vector<double>> groups;
  for (const auto& e : file.entries) {
    const std::string id = e.video_id.value_or("video");
    auto [it, inserted] = groups.try_emplace(id);
    if (inserted) order.push_back(id);
    it->second.push_back(e.score);
  }
  if (order.empty()) throw Error(ErrorCode::kEmptyScores, "no frame scores");
  std::vector<VideoScore> out;
  for (const auto& id : order) {
    const auto& frames = groups[id];
    out.push_back({id, frames.size(), AggregateVideo(frames, top_fraction)});
  }
  return out;
}

}  // namespace cutsynth

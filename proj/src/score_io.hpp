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

#ifndef CUTSYNTH_SCORE_IO_HPP_
#define CUTSYNTH_SCORE_IO_HPP_

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dataset.hpp"
#include "evaluation.hpp"

namespace cutsynth {

// Frame sampling rate (frames per second) required of video score files.
inline constexpr double kVideoSamplingRate = 2.0;

struct ScoreEntry {
  std::string item_id;
  double score = 0.0;
  // Optional inline annotations; when absent they come from a manifest.
  std::optional<Coarseness> label;
  std::optional<std::string> object_name;
  std::optional<bool> seen;
  std::optional<std::string> video_id;
};

// JSON Lines: a header object on line 1 ({"producer": ..., optional
// "sampling_rate": ...}) followed by one {"item_id", "score", ...} per line.
struct ScoreFile {
  std::string producer;
  std::optional<double> sampling_rate;
  std::vector<ScoreEntry> entries;
};

ScoreFile ReadScoreFile(std::istream& in);
ScoreFile ReadScoreFile(const std::filesystem::path& path);
void WriteScoreFile(const ScoreFile& file, std::ostream& out);

// Builds the evaluation table. Labels and object names missing from the score
// rows are taken from the manifest record with aug_id == item_id (its
// label_c). An item is "seen" when its object name occurs among train-split
// records; without split information every item counts as seen.
ScoreTable JoinScores(const ScoreFile& scores, const Manifest* manifest);

nlohmann::json ReportToJson(const EvalReport& report, double random_baseline);

struct VideoScore {
  std::string video_id;
  std::size_t frames = 0;
  double score = 0.0;
};

// Groups rows by video_id (rows without one form the group "video") and
// aggregates each group in first-appearance order. Throws kParse unless the
// header declares the 2 fps sampling rate.
std::vector<VideoScore> AggregateVideoFile(const ScoreFile& file,
                                           double top_fraction);

}  // namespace cutsynth

#endif  // CUTSYNTH_SCORE_IO_HPP_

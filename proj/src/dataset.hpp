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

#ifndef CUTSYNTH_DATASET_HPP_
#define CUTSYNTH_DATASET_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "augment.hpp"
#include "cut_geometry.hpp"
#include "labels.hpp"
#include "random.hpp"

namespace cutsynth {

struct AnchorPolicy {
  // Random per cell when unset.
  std::optional<int> fixed_id;
  friend bool operator==(const AnchorPolicy&, const AnchorPolicy&) = default;
};

struct GridSpec {
  std::vector<int> seed_counts{2, 3, 5, 10, 20, 30, 40, 50};
  std::vector<SeedStrategy> strategies{
      SeedStrategy::kDiagonalMain, SeedStrategy::kDiagonalSecondary,
      SeedStrategy::kGrid, SeedStrategy::kHorizontal, SeedStrategy::kVertical};
  std::vector<MoveInterval> move_intervals{{2, 5}, {5, 10}, {10, 20}};
  std::vector<double> noises{0, 5, 10, 20, 50};
  AnchorPolicy anchor;

  std::size_t CellCount() const {
    return seed_counts.size() * strategies.size() * move_intervals.size() *
           noises.size();
  }
  // Throws kEmptySpec for an empty list, kInvalidArgument / kInvalidCount /
  // kInvalidAnchor for bad values.
  void Validate() const;
  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

// Cartesian product ordered by (seed count, strategy, interval, noise), last
// varying fastest. Random anchors are drawn from `rng` in cell order.
std::vector<AugParams> EnumerateGrid(const GridSpec& spec, RandomStream& rng);

struct AugRecord {
  std::string source_id;
  std::string aug_id;
  std::string object_name;
  AugParams params;
  double c = 0.0;
  std::optional<Coarseness> label_c;
  std::optional<Coarseness> label_seeds;
  std::optional<double> reg_target;
  std::optional<double> reg_target_seeds;
  std::optional<Split> split;
  std::string image_path;
  std::string mask_path;

  friend bool operator==(const AugRecord&, const AugRecord&) = default;
};

struct SourceSummary {
  std::string source_id;
  std::string object_name;
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::string error;  // empty when the source was processed

  friend bool operator==(const SourceSummary&, const SourceSummary&) = default;
};

struct ManifestMetadata {
  std::uint64_t global_seed = 0;
  GridSpec grid;
  std::string tool_version;
  std::size_t cells_per_source = 0;
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::vector<SourceSummary> sources;
  std::optional<double> train_fraction;
  std::optional<std::uint64_t> split_seed;
  // Regression target column requested for training.
  std::string target = "change_ratio";

  friend bool operator==(const ManifestMetadata&,
                         const ManifestMetadata&) = default;
};

struct Manifest {
  ManifestMetadata metadata;
  std::vector<AugRecord> records;

  friend bool operator==(const Manifest&, const Manifest&) = default;
};

// Either file paths or in-memory pixels. In-memory fields take precedence.
struct SourceInput {
  std::string source_id;
  std::string object_name;
  std::filesystem::path image_path;
  std::filesystem::path mask_path;
  std::filesystem::path background_path;  // optional precomputed fill
  std::optional<RgbImage> image;
  std::optional<BinaryMask> mask;
  std::optional<RgbImage> background;
};

struct BuildOptions {
  std::uint64_t global_seed = 0;
  int workers = 1;
  // When set, images/<aug_id>.png and masks/<aug_id>.png are written here.
  std::optional<std::filesystem::path> out_dir;
};

// Task index reserved for the per-source anchor stream.
inline constexpr std::uint64_t kGridStreamIndex = ~std::uint64_t{0};

// Runs every grid cell on every source. Output is independent of
// `options.workers`. Sources that fail to load are reported in the metadata
// and skipped.
Manifest BuildDataset(const std::vector<SourceInput>& sources,
                      const GridSpec& spec, const BuildOptions& options);

std::string MakeAugId(const std::string& source_id, std::size_t cell_index);

// Median split per source group on c and on seed count; fills the regression
// targets. Groups with fewer than two records keep unset labels and produce a
// warning. Idempotent.
Manifest AssignLabels(Manifest manifest,
                      std::vector<std::string>* warnings = nullptr);

double Median(std::vector<double> values);

// Assigns whole sources to train/test so the record-level train share is
// close to `train_fraction` (greedy, largest sources first, random order among
// equal sizes). Throws kTooFewSources with fewer than two sources.
Manifest SplitTrainTest(Manifest manifest, double train_fraction,
                        RandomStream& rng);

}  // namespace cutsynth

#endif  // CUTSYNTH_DATASET_HPP_

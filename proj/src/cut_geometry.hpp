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

#ifndef CUTSYNTH_CUT_GEOMETRY_HPP_
#define CUTSYNTH_CUT_GEOMETRY_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "mask_core.hpp"
#include "random.hpp"

namespace cutsynth {

enum class SeedStrategy {
  kGrid,
  kHorizontal,
  kVertical,
  kDiagonalMain,
  kDiagonalSecondary,
};

std::string_view StrategyName(SeedStrategy strategy);
// Accepts the names produced by StrategyName. Throws kParse otherwise.
SeedStrategy ParseStrategy(std::string_view name);

// Continuous pixel coordinates; pixel (x, y) sits at integer (x, y).
struct Point {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point&, const Point&) = default;
};

struct Offset {
  int dx = 0;
  int dy = 0;
  friend bool operator==(const Offset&, const Offset&) = default;
};

struct MoveInterval {
  double lo = 0.0;
  double hi = 0.0;
  friend bool operator==(const MoveInterval&, const MoveInterval&) = default;
};

inline constexpr int kAnchorCount = 9;

// Evenly spaced layout over `bbox` followed by independent uniform jitter in
// [-noise, +noise] on each axis. Layout positions are cell centres
// (i + 0.5) / n of the box extent; off-axis coordinates sit on the box
// midline. Jittered points are not clamped.
std::vector<Point> SampleSeedPoints(const Rect& bbox, int n,
                                    SeedStrategy strategy, double noise,
                                    RandomStream& rng);

// Nearest-seed (Voronoi) assignment of the set pixels of a mask.
struct RegionPartition {
  int width = 0;
  int height = 0;
  int region_count = 0;
  // Per image pixel, row-major; kNoRegion for background pixels.
  std::vector<int> region_of;
  std::vector<std::size_t> pixel_count;
  // Mean pixel coordinate; meaningful only where pixel_count > 0.
  std::vector<Point> centroids;
  // Tight box of each region; meaningful only where pixel_count > 0.
  std::vector<Rect> extents;

  static constexpr int kNoRegion = -1;

  int RegionAt(int x, int y) const {
    return region_of[static_cast<std::size_t>(y) * width + x];
  }
  bool HasPixels(int region) const { return pixel_count[region] > 0; }
};

// Each set pixel goes to the seed at minimum Euclidean distance; ties go to
// the lowest seed index.
RegionPartition PartitionMask(const BinaryMask& mask,
                              std::span<const Point> seeds);

// Anchor ids 0..8 index a 3x3 grid over the box, row-major:
// row = id / 3 picks {y0, mid, y1}, col = id % 3 picks {x0, mid, x1}.
Point ReferenceAnchorPoint(const Rect& bbox, int anchor_id);

// Pushes every nonempty region away from `reference` by a magnitude drawn
// uniformly from the interval, rounded to whole pixels. Returns one offset
// per region (zero for empty regions), or std::nullopt when any displaced
// region would leave `image_bounds` (the augmentation is rejected).
std::optional<std::vector<Offset>> DisplaceRegions(
    const RegionPartition& partition, const Point& reference,
    const MoveInterval& interval, RandomStream& rng, const Rect& image_bounds);

}  // namespace cutsynth

#endif  // CUTSYNTH_CUT_GEOMETRY_HPP_

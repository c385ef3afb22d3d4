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

#include "cut_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "errors.hpp"

namespace cutsynth {
namespace {

constexpr double kDegenerateDistance = 1e-9;

// Unjittered layout positions.
std::vector<Point> Layout(const Rect& bbox, int n, SeedStrategy strategy) {
  const double w = bbox.width();
  const double h = bbox.height();
  const double mid_x = 0.5 * (bbox.x0 + bbox.x1);
  const double mid_y = 0.5 * (bbox.y0 + bbox.y1);
  auto along = [n](int i) { return (i + 0.5) / n; };

  std::vector<Point> points;
  points.reserve(n);
  switch (strategy) {
    case SeedStrategy::kGrid: {
      const int rows = static_cast<int>(std::lround(std::sqrt(double(n))));
      const int cols = (n + rows - 1) / rows;
      for (int r = 0; r < rows && int(points.size()) < n; ++r) {
        for (int c = 0; c < cols && int(points.size()) < n; ++c) {
          points.push_back({bbox.x0 + (c + 0.5) / cols * w,
                            bbox.y0 + (r + 0.5) / rows * h});
        }
      }
      break;
    }
    case SeedStrategy::kHorizontal:
      for (int i = 0; i < n; ++i) points.push_back({bbox.x0 + along(i) * w, mid_y});
      break;
    case SeedStrategy::kVertical:
      for (int i = 0; i < n; ++i) points.push_back({mid_x, bbox.y0 + along(i) * h});
      break;
    case SeedStrategy::kDiagonalMain:
      for (int i = 0; i < n; ++i) {
        points.push_back({bbox.x0 + along(i) * w, bbox.y0 + along(i) * h});
      }
      break;
    case SeedStrategy::kDiagonalSecondary:
      for (int i = 0; i < n; ++i) {
        points.push_back(
            {bbox.x0 + (1.0 - along(i)) * w, bbox.y0 + along(i) * h});
      }
      break;
  }
  return points;
}

}  // namespace

std::string_view StrategyName(SeedStrategy strategy) {
  switch (strategy) {
    case SeedStrategy::kGrid: return "grid";
    case SeedStrategy::kHorizontal: return "horizontal";
    case SeedStrategy::kVertical: return "vertical";
    case SeedStrategy::kDiagonalMain: return "diagonal_main";
    case SeedStrategy::kDiagonalSecondary: return "diagonal_secondary";
  }
  return "unknown";
}

SeedStrategy ParseStrategy(std::string_view name) {
  for (auto s : {SeedStrategy::kGrid, SeedStrategy::kHorizontal,
                 SeedStrategy::kVertical, SeedStrategy::kDiagonalMain,
                 SeedStrategy::kDiagonalSecondary}) {
    if (StrategyName(s) == name) return s;
  }
  throw Error(ErrorCode::kParse,
              "unknown seed strategy '" + std::string(name) + "'");
}

std::vector<Point> SampleSeedPoints(const Rect& bbox, int n,
                                    SeedStrategy strategy, double noise,
                                    RandomStream& rng) {
  if (n < 1) {
    throw Error(ErrorCode::kInvalidCount,
                "seed count must be at least 1, got " + std::to_string(n));
  }
  if (!(noise >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "seed noise must be >= 0");
  }
  std::vector<Point> points = Layout(bbox, n, strategy);
  for (auto& p : points) {
    p.x += rng.Uniform(-noise, noise);
    p.y += rng.Uniform(-noise, noise);
  }
  return points;
}

RegionPartition PartitionMask(const BinaryMask& mask,
                              std::span<const Point> seeds) {
  if (seeds.empty()) throw Error(ErrorCode::kNoSeeds, "no seed points given");
  if (mask.empty() || mask.CountSet() == 0) {
    throw Error(ErrorCode::kEmptyMask, "cannot partition an empty mask");
  }

  const int n = static_cast<int>(seeds.size());
  RegionPartition part;
  part.width = mask.width();
  part.height = mask.height();
  part.region_count = n;
  part.region_of.assign(mask.size(), RegionPartition::kNoRegion);
  part.pixel_count.assign(n, 0);
  part.centroids.assign(n, Point{});
  part.extents.assign(n, Rect{mask.width(), mask.height(), -1, -1});

  std::vector<double> sum_x(n, 0.0);
  std::vector<double> sum_y(n, 0.0);
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      if (!mask.at(x, y)) continue;
      int best = 0;
      double best_d2 = std::numeric_limits<double>::infinity();
      for (int s = 0; s < n; ++s) {
        const double dx = x - seeds[s].x;
        const double dy = y - seeds[s].y;
        const double d2 = dx * dx + dy * dy;
        if (d2 < best_d2) {
          best_d2 = d2;
          best = s;
        }
      }
      part.region_of[static_cast<std::size_t>(y) * mask.width() + x] = best;
      ++part.pixel_count[best];
      sum_x[best] += x;
      sum_y[best] += y;
      Rect& e = part.extents[best];
      e.x0 = std::min(e.x0, x);
      e.y0 = std::min(e.y0, y);
      e.x1 = std::max(e.x1, x);
      e.y1 = std::max(e.y1, y);
    }
  }
  for (int r = 0; r < n; ++r) {
    if (part.pixel_count[r] == 0) continue;
    const double count = static_cast<double>(part.pixel_count[r]);
    part.centroids[r] = {sum_x[r] / count, sum_y[r] / count};
  }
  return part;
}

Point ReferenceAnchorPoint(const Rect& bbox, int anchor_id) {
  if (anchor_id < 0 || anchor_id >= kAnchorCount) {
    throw Error(ErrorCode::kInvalidAnchor,
                "anchor id must be in [0,8], got " + std::to_string(anchor_id));
  }
  const double xs[3] = {double(bbox.x0), 0.5 * (bbox.x0 + bbox.x1),
                        double(bbox.x1)};
  const double ys[3] = {double(bbox.y0), 0.5 * (bbox.y0 + bbox.y1),
                        double(bbox.y1)};
  return {xs[anchor_id % 3], ys[anchor_id / 3]};
}

std::optional<std::vector<Offset>> DisplaceRegions(
    const RegionPartition& partition, const Point& reference,
    const MoveInterval& interval, RandomStream& rng, const Rect& image_bounds) {
  if (!(interval.lo > 0.0) || !(interval.lo <= interval.hi)) {
    throw Error(ErrorCode::kInvalidArgument,
                "movement interval must satisfy 0 < lo <= hi");
  }
  std::vector<Offset> offsets(partition.region_count);
  bool rejected = false;
  for (int r = 0; r < partition.region_count; ++r) {
    if (!partition.HasPixels(r)) continue;
    double dx = partition.centroids[r].x - reference.x;
    double dy = partition.centroids[r].y - reference.y;
    const double len = std::hypot(dx, dy);
    if (len < kDegenerateDistance) {
      dx = 1.0;
      dy = 0.0;
    } else {
      dx /= len;
      dy /= len;
    }
    // Draw for every region even after a rejection so the stream position
    // does not depend on which region failed.
    const double magnitude = rng.Uniform(interval.lo, interval.hi);
    const Offset off{static_cast<int>(std::lround(dx * magnitude)),
                     static_cast<int>(std::lround(dy * magnitude))};
    offsets[r] = off;
    const Rect& e = partition.extents[r];
    if (!image_bounds.Contains(e.x0 + off.dx, e.y0 + off.dy) ||
        !image_bounds.Contains(e.x1 + off.dx, e.y1 + off.dy)) {
      rejected = true;
    }
  }
  if (rejected) return std::nullopt;
  return offsets;
}

}  // namespace cutsynth

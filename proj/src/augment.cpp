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

#include "augment.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "errors.hpp"

namespace cutsynth {

RgbImage::RgbImage(int width, int height, Pixel fill)
    : width_(width), height_(height) {
  if (width <= 0 || height <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "image dimensions must be positive");
  }
  data_.resize(static_cast<std::size_t>(width) * height * 3);
  for (std::size_t i = 0; i < data_.size(); i += 3) {
    data_[i] = fill[0];
    data_[i + 1] = fill[1];
    data_[i + 2] = fill[2];
  }
}

RgbImage::RgbImage(int width, int height, std::vector<std::uint8_t> samples)
    : width_(width), height_(height), data_(std::move(samples)) {
  if (width <= 0 || height <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "image dimensions must be positive");
  }
  if (data_.size() != static_cast<std::size_t>(width) * height * 3) {
    throw Error(ErrorCode::kDimensionMismatch, "RGB buffer size mismatch");
  }
}

void AugParams::Validate() const {
  if (n_seeds < 1) {
    throw Error(ErrorCode::kInvalidCount, "n_seeds must be at least 1");
  }
  if (!(move.lo > 0.0) || !(move.lo <= move.hi)) {
    throw Error(ErrorCode::kInvalidArgument,
                "movement interval must satisfy 0 < lo <= hi");
  }
  if (!(noise >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "noise must be >= 0");
  }
  if (anchor_id < 0 || anchor_id >= kAnchorCount) {
    throw Error(ErrorCode::kInvalidAnchor, "anchor id must be in [0,8]");
  }
}

namespace {

void CheckSameSize(const RgbImage& image, const BinaryMask& mask) {
  if (image.width() != mask.width() || image.height() != mask.height()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "image is " + std::to_string(image.width()) + "x" +
                    std::to_string(image.height()) + " but mask is " +
                    std::to_string(mask.width()) + "x" +
                    std::to_string(mask.height()));
  }
}

}  // namespace

RgbImage FillBackground(const RgbImage& image, const BinaryMask& mask) {
  CheckSameSize(image, mask);
  if (mask.CountSet() == 0) {
    throw Error(ErrorCode::kEmptyMask, "fill needs a nonempty hole");
  }
  const int w = image.width();
  const int h = image.height();
  const std::size_t npix = static_cast<std::size_t>(w) * h;

  // Boundary ring: known pixels 4-adjacent to the hole.
  double ring_sum[3] = {0.0, 0.0, 0.0};
  std::size_t ring_count = 0;
  constexpr int kDx[4] = {1, -1, 0, 0};
  constexpr int kDy[4] = {0, 0, 1, -1};
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (mask.at(x, y)) continue;
      bool touches = false;
      for (int k = 0; k < 4 && !touches; ++k) {
        const int nx = x + kDx[k];
        const int ny = y + kDy[k];
        touches = nx >= 0 && ny >= 0 && nx < w && ny < h && mask.at(nx, ny);
      }
      if (!touches) continue;
      const auto p = image.at(x, y);
      for (int c = 0; c < 3; ++c) ring_sum[c] += p[c];
      ++ring_count;
    }
  }

  RgbImage out = image;
  if (ring_count == 0) {
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) out.set(x, y, kHoleDefault);
    return out;
  }

  // Working field in double precision; only hole entries change.
  std::vector<double> field(npix * 3);
  const auto src = image.samples();
  for (std::size_t i = 0; i < npix * 3; ++i) field[i] = src[i];
  std::vector<std::size_t> hole;
  for (std::size_t i = 0; i < npix; ++i) {
    if (!mask.bits()[i]) continue;
    hole.push_back(i);
    for (int c = 0; c < 3; ++c) field[i * 3 + c] = ring_sum[c] / ring_count;
  }

  std::vector<double> next(hole.size() * 3);
  for (int iter = 0; iter < kFillMaxIterations; ++iter) {
    double max_change = 0.0;
    for (std::size_t k = 0; k < hole.size(); ++k) {
      const int x = static_cast<int>(hole[k] % w);
      const int y = static_cast<int>(hole[k] / w);
      double acc[3] = {0.0, 0.0, 0.0};
      int count = 0;
      for (int d = 0; d < 4; ++d) {
        const int nx = x + kDx[d];
        const int ny = y + kDy[d];
        if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
        const std::size_t j = static_cast<std::size_t>(ny) * w + nx;
        for (int c = 0; c < 3; ++c) acc[c] += field[j * 3 + c];
        ++count;
      }
      for (int c = 0; c < 3; ++c) {
        next[k * 3 + c] = acc[c] / count;
        max_change = std::max(
            max_change, std::abs(next[k * 3 + c] - field[hole[k] * 3 + c]));
      }
    }
    for (std::size_t k = 0; k < hole.size(); ++k) {
      for (int c = 0; c < 3; ++c) field[hole[k] * 3 + c] = next[k * 3 + c];
    }
    if (max_change < kFillTolerance) break;
  }

  for (std::size_t i : hole) {
    RgbImage::Pixel p{};
    for (int c = 0; c < 3; ++c) {
      p[c] = static_cast<std::uint8_t>(
          std::clamp(std::lround(field[i * 3 + c]), 0L, 255L));
    }
    out.set(static_cast<int>(i % w), static_cast<int>(i / w), p);
  }
  return out;
}

Composite CompositeRegions(const RgbImage& background, const RgbImage& source,
                           const RegionPartition& partition,
                           std::span<const Offset> offsets) {
  if (background.width() != source.width() ||
      background.height() != source.height() ||
      source.width() != partition.width ||
      source.height() != partition.height) {
    throw Error(ErrorCode::kDimensionMismatch,
                "composite inputs differ in size");
  }
  if (offsets.size() != static_cast<std::size_t>(partition.region_count)) {
    throw Error(ErrorCode::kInvalidArgument,
                "one offset per region is required");
  }
  const int w = partition.width;
  const int h = partition.height;
  Composite out{background, BinaryMask(w, h)};

  // Bucket pixels by region so writes happen in ascending region order.
  std::vector<std::vector<std::size_t>> members(partition.region_count);
  for (std::size_t i = 0; i < partition.region_of.size(); ++i) {
    const int r = partition.region_of[i];
    if (r != RegionPartition::kNoRegion) members[r].push_back(i);
  }
  for (int r = 0; r < partition.region_count; ++r) {
    const Offset off = offsets[r];
    for (std::size_t i : members[r]) {
      const int x = static_cast<int>(i % w);
      const int y = static_cast<int>(i / w);
      const int tx = x + off.dx;
      const int ty = y + off.dy;
      if (tx < 0 || ty < 0 || tx >= w || ty >= h) {
        throw Error(ErrorCode::kOutOfBounds,
                    "region " + std::to_string(r) + " displaced out of bounds");
      }
      out.image.set(tx, ty, source.at(x, y));
      out.mask.set(tx, ty);
    }
  }
  return out;
}

PreparedSource PrepareSource(std::string source_id, RgbImage image,
                             BinaryMask mask,
                             std::optional<RgbImage> background) {
  CheckSameSize(image, mask);
  PreparedSource prepared;
  prepared.bbox = BoundingBox(mask);
  if (background) {
    if (background->width() != image.width() ||
        background->height() != image.height()) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "background differs in size from its source image");
    }
    prepared.background = std::move(*background);
  } else {
    prepared.background = FillBackground(image, mask);
  }
  prepared.source_id = std::move(source_id);
  prepared.image = std::move(image);
  prepared.mask = std::move(mask);
  return prepared;
}

std::optional<AugmentedSample> AugmentOnce(const PreparedSource& source,
                                           const AugParams& params,
                                           RandomStream& rng) {
  params.Validate();
  const auto seeds = SampleSeedPoints(source.bbox, params.n_seeds,
                                      params.strategy, params.noise, rng);
  const RegionPartition partition = PartitionMask(source.mask, seeds);
  const Point reference = ReferenceAnchorPoint(source.bbox, params.anchor_id);
  const auto offsets = DisplaceRegions(partition, reference, params.move, rng,
                                       source.mask.Bounds());
  if (!offsets) return std::nullopt;

  Composite comp =
      CompositeRegions(source.background, source.image, partition, *offsets);
  AugmentedSample sample;
  sample.c = ChangeRatio(comp.mask, source.mask);
  sample.image = std::move(comp.image);
  sample.mask = std::move(comp.mask);
  sample.params = params;
  sample.source_id = source.source_id;
  return sample;
}

std::optional<AugmentedSample> AugmentOnce(const RgbImage& image,
                                           const BinaryMask& mask,
                                           const AugParams& params,
                                           RandomStream& rng) {
  return AugmentOnce(PrepareSource("", image, mask), params, rng);
}

}  // namespace cutsynth

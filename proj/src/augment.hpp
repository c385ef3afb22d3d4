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

#ifndef CUTSYNTH_AUGMENT_HPP_
#define CUTSYNTH_AUGMENT_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cut_geometry.hpp"
#include "mask_core.hpp"
#include "random.hpp"

namespace cutsynth {

// 8-bit RGB, row-major, interleaved.
class RgbImage {
 public:
  using Pixel = std::array<std::uint8_t, 3>;

  RgbImage() = default;
  RgbImage(int width, int height, Pixel fill = {0, 0, 0});
  RgbImage(int width, int height, std::vector<std::uint8_t> samples);

  int width() const { return width_; }
  int height() const { return height_; }

  Pixel at(int x, int y) const {
    const std::size_t i = Index(x, y);
    return {data_[i], data_[i + 1], data_[i + 2]};
  }
  void set(int x, int y, const Pixel& p) {
    const std::size_t i = Index(x, y);
    data_[i] = p[0];
    data_[i + 1] = p[1];
    data_[i + 2] = p[2];
  }

  std::span<const std::uint8_t> samples() const { return data_; }

  friend bool operator==(const RgbImage&, const RgbImage&) = default;

 private:
  std::size_t Index(int x, int y) const {
    return (static_cast<std::size_t>(y) * width_ + x) * 3;
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> data_;
};

struct AugParams {
  int n_seeds = 2;
  SeedStrategy strategy = SeedStrategy::kGrid;
  MoveInterval move{2.0, 5.0};
  double noise = 0.0;
  int anchor_id = 4;

  // Throws kInvalidArgument / kInvalidCount / kInvalidAnchor.
  void Validate() const;
  friend bool operator==(const AugParams&, const AugParams&) = default;
};

inline constexpr int kFillMaxIterations = 256;
inline constexpr double kFillTolerance = 0.5;
inline constexpr RgbImage::Pixel kHoleDefault = {128, 128, 128};

// Removes the masked object: masked pixels are filled by repeated 4-neighbour
// averaging, starting from the mean colour of the hole's boundary ring.
// Pixels outside the mask are returned unchanged.
RgbImage FillBackground(const RgbImage& image, const BinaryMask& mask);

struct Composite {
  RgbImage image;
  BinaryMask mask;
};

// Copies each region's source pixels to its displaced position over the
// background, in ascending region order (later regions win on overlap).
Composite CompositeRegions(const RgbImage& background, const RgbImage& source,
                           const RegionPartition& partition,
                           std::span<const Offset> offsets);

struct AugmentedSample {
  RgbImage image;
  BinaryMask mask;
  double c = 0.0;
  AugParams params;
  std::string source_id;
};

// Source scene with its object already removed. Building one per source lets
// the fill run once for all parameter cells.
struct PreparedSource {
  std::string source_id;
  RgbImage image;
  BinaryMask mask;
  RgbImage background;
  Rect bbox;
};

// Throws kDimensionMismatch / kEmptyMask. When `background` is absent the
// built-in fill is used.
PreparedSource PrepareSource(std::string source_id, RgbImage image,
                             BinaryMask mask,
                             std::optional<RgbImage> background = std::nullopt);

// One augmentation; std::nullopt means the cell was rejected because a
// displaced region left the image.
std::optional<AugmentedSample> AugmentOnce(const PreparedSource& source,
                                           const AugParams& params,
                                           RandomStream& rng);

std::optional<AugmentedSample> AugmentOnce(const RgbImage& image,
                                           const BinaryMask& mask,
                                           const AugParams& params,
                                           RandomStream& rng);

}  // namespace cutsynth

#endif  // CUTSYNTH_AUGMENT_HPP_

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

#ifndef CUTSYNTH_MASK_CORE_HPP_
#define CUTSYNTH_MASK_CORE_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace cutsynth {

// Inclusive pixel rectangle.
struct Rect {
  int x0 = 0;
  int y0 = 0;
  int x1 = 0;
  int y1 = 0;

  int width() const { return x1 - x0 + 1; }
  int height() const { return y1 - y0 + 1; }
  bool Contains(int x, int y) const {
    return x >= x0 && x <= x1 && y >= y0 && y <= y1;
  }
  friend bool operator==(const Rect&, const Rect&) = default;
};

// Row-major binary grid; a nonzero byte marks an object pixel.
class BinaryMask {
 public:
  BinaryMask() = default;
  BinaryMask(int width, int height);
  BinaryMask(int width, int height, std::vector<std::uint8_t> bits);

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }

  bool at(int x, int y) const {
    return bits_[static_cast<std::size_t>(y) * width_ + x] != 0;
  }
  void set(int x, int y, bool value = true) {
    bits_[static_cast<std::size_t>(y) * width_ + x] = value ? 1 : 0;
  }

  std::span<const std::uint8_t> bits() const { return bits_; }
  std::size_t CountSet() const;
  Rect Bounds() const { return Rect{0, 0, width_ - 1, height_ - 1}; }

  friend bool operator==(const BinaryMask&, const BinaryMask&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> bits_;  // strictly 0 or 1
};

// Tightest rectangle covering every set pixel. Throws kEmptyMask.
Rect BoundingBox(const BinaryMask& mask);

BinaryMask Crop(const BinaryMask& mask, const Rect& rect);

// Symmetric-difference area over union area of two same-sized masks.
double ChangeRatio(const BinaryMask& augmented, const BinaryMask& original);

inline constexpr double kDefaultDiceEps = 1e-6;

// (2 sum(target * pred) + eps) / (sum(target + pred) + eps). The Dice loss is
// one minus this value.
double DiceCoefficient(std::span<const double> prediction,
                       const BinaryMask& target, double eps = kDefaultDiceEps);

}  // namespace cutsynth

#endif  // CUTSYNTH_MASK_CORE_HPP_

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

// Test-only reference computations. These deliberately take different routes
// from the library code they check (coordinate sets instead of bit scans,
// full distance tables instead of running minima, per-item precision instead
// of tie-group sweeps).

#ifndef CUTSYNTH_TESTS_ORACLES_HPP_
#define CUTSYNTH_TESTS_ORACLES_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "augment.hpp"
#include "cut_geometry.hpp"
#include "labels.hpp"
#include "mask_core.hpp"

namespace cutsynth::testing {

using Coord = std::pair<int, int>;

inline std::set<Coord> PixelSet(const BinaryMask& m) {
  std::set<Coord> out;
  for (int y = 0; y < m.height(); ++y)
    for (int x = 0; x < m.width(); ++x)
      if (m.at(x, y)) out.insert({x, y});
  return out;
}

// |A xor B| / |A or B| by set algebra.
inline double ChangeRatioOracle(const BinaryMask& a, const BinaryMask& b) {
  const auto sa = PixelSet(a);
  const auto sb = PixelSet(b);
  std::vector<Coord> sym;
  std::vector<Coord> uni;
  std::set_symmetric_difference(sa.begin(), sa.end(), sb.begin(), sb.end(),
                                std::back_inserter(sym));
  std::set_union(sa.begin(), sa.end(), sb.begin(), sb.end(),
                 std::back_inserter(uni));
  return static_cast<double>(sym.size()) / static_cast<double>(uni.size());
}

inline Rect BoundingBoxOracle(const BinaryMask& m) {
  const auto s = PixelSet(m);
  Rect r{s.begin()->first, s.begin()->second, s.begin()->first,
         s.begin()->second};
  for (auto [x, y] : s) {
    r.x0 = std::min(r.x0, x);
    r.x1 = std::max(r.x1, x);
    r.y0 = std::min(r.y0, y);
    r.y1 = std::max(r.y1, y);
  }
  return r;
}

// Full distance table per pixel, first minimum wins.
inline std::vector<int> NearestSeedOracle(const BinaryMask& m,
                                          const std::vector<Point>& seeds) {
  std::vector<int> out(m.size(), -1);
  std::vector<double> d(seeds.size());
  for (int y = 0; y < m.height(); ++y) {
    for (int x = 0; x < m.width(); ++x) {
      if (!m.at(x, y)) continue;
      for (std::size_t s = 0; s < seeds.size(); ++s) {
        d[s] = std::pow(x - seeds[s].x, 2) + std::pow(y - seeds[s].y, 2);
      }
      out[std::size_t(y) * m.width() + x] = static_cast<int>(
          std::min_element(d.begin(), d.end()) - d.begin());
    }
  }
  return out;
}

// AP as the mean, over positives, of precision among all items scoring at
// least as high as that positive.
inline double PrecisionLadderAp(const std::vector<double>& scores,
                                const std::vector<Coarseness>& labels,
                                Coarseness positive) {
  auto key = [&](std::size_t i) {
    return positive == Coarseness::kFine ? scores[i] : 1.0 - scores[i];
  };
  double total = 0.0;
  std::size_t positives = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (labels[i] != positive) continue;
    ++positives;
    std::size_t above = 0;
    std::size_t above_pos = 0;
    for (std::size_t j = 0; j < scores.size(); ++j) {
      if (key(j) >= key(i)) {
        ++above;
        above_pos += labels[j] == positive;
      }
    }
    total += static_cast<double>(above_pos) / static_cast<double>(above);
  }
  return total / static_cast<double>(positives);
}

// Best achievable |train - target| over every subset of group sizes.
inline double BestSubsetDeviation(const std::vector<std::size_t>& sizes,
                                  double target) {
  double best = 1e300;
  const std::size_t n = sizes.size();
  for (std::uint64_t m = 1; m + 1 < (std::uint64_t{1} << n); ++m) {
    double sum = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (m >> i & 1) sum += sizes[i];
    best = std::min(best, std::abs(sum - target));
  }
  return best;
}

inline BinaryMask DiskMask(int width, int height, double cx, double cy,
                           double radius) {
  BinaryMask m(width, height);
  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x)
      if ((x - cx) * (x - cx) + (y - cy) * (y - cy) <= radius * radius)
        m.set(x, y);
  return m;
}

inline BinaryMask RandomBlobMask(int width, int height, std::mt19937_64& gen,
                                 double density = 0.5) {
  std::bernoulli_distribution bit(density);
  BinaryMask m(width, height);
  bool any = false;
  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x)
      if (bit(gen)) {
        m.set(x, y);
        any = true;
      }
  if (!any) m.set(width / 2, height / 2);
  return m;
}

// Textured scene: smooth background gradient, object pixels in a distinct
// pattern so copies are traceable.
inline RgbImage SceneImage(const BinaryMask& mask) {
  RgbImage img(mask.width(), mask.height());
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      if (mask.at(x, y)) {
        img.set(x, y,
                {static_cast<std::uint8_t>(200 + (x * 7 + y) % 50),
                 static_cast<std::uint8_t>((x * 13 + y * 3) % 256),
                 static_cast<std::uint8_t>(40 + (y * 5) % 60)});
      } else {
        img.set(x, y,
                {static_cast<std::uint8_t>(x * 255 / std::max(1, mask.width() - 1)),
                 static_cast<std::uint8_t>(y * 255 / std::max(1, mask.height() - 1)),
                 90});
      }
    }
  }
  return img;
}

}  // namespace cutsynth::testing

#endif  // CUTSYNTH_TESTS_ORACLES_HPP_

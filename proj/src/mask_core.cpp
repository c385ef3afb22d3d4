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

#include "mask_core.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "errors.hpp"

namespace cutsynth {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kEmptyMask: return "EmptyMask";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kEmptyUnion: return "EmptyUnion";
    case ErrorCode::kInvalidCount: return "InvalidCount";
    case ErrorCode::kNoSeeds: return "NoSeeds";
    case ErrorCode::kInvalidAnchor: return "InvalidAnchor";
    case ErrorCode::kOutOfBounds: return "OutOfBounds";
    case ErrorCode::kEmptySpec: return "EmptySpec";
    case ErrorCode::kGroupTooSmall: return "GroupTooSmall";
    case ErrorCode::kTooFewSources: return "TooFewSources";
    case ErrorCode::kNoPositives: return "NoPositives";
    case ErrorCode::kNoNegatives: return "NoNegatives";
    case ErrorCode::kMissingClass: return "MissingClass";
    case ErrorCode::kEmptyBucket: return "EmptyBucket";
    case ErrorCode::kEmptyScores: return "EmptyScores";
    case ErrorCode::kIo: return "Io";
    case ErrorCode::kParse: return "Parse";
  }
  return "Unknown";
}

BinaryMask::BinaryMask(int width, int height) : width_(width), height_(height) {
  if (width <= 0 || height <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "mask dimensions must be positive");
  }
  bits_.assign(static_cast<std::size_t>(width) * height, 0);
}

BinaryMask::BinaryMask(int width, int height, std::vector<std::uint8_t> bits)
    : width_(width), height_(height), bits_(std::move(bits)) {
  if (width <= 0 || height <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "mask dimensions must be positive");
  }
  if (bits_.size() != static_cast<std::size_t>(width) * height) {
    throw Error(ErrorCode::kDimensionMismatch,
                "mask buffer has " + std::to_string(bits_.size()) +
                    " samples, expected " + std::to_string(width * height));
  }
  for (auto& b : bits_) b = b != 0 ? 1 : 0;
}

std::size_t BinaryMask::CountSet() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1));
}

Rect BoundingBox(const BinaryMask& mask) {
  Rect box{mask.width(), mask.height(), -1, -1};
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      if (!mask.at(x, y)) continue;
      box.x0 = std::min(box.x0, x);
      box.y0 = std::min(box.y0, y);
      box.x1 = std::max(box.x1, x);
      box.y1 = std::max(box.y1, y);
    }
  }
  if (box.x1 < 0) throw Error(ErrorCode::kEmptyMask, "mask has no set pixel");
  return box;
}

BinaryMask Crop(const BinaryMask& mask, const Rect& rect) {
  if (rect.x0 < 0 || rect.y0 < 0 || rect.x1 >= mask.width() ||
      rect.y1 >= mask.height() || rect.x0 > rect.x1 || rect.y0 > rect.y1) {
    throw Error(ErrorCode::kOutOfBounds, "crop rectangle outside mask");
  }
  BinaryMask out(rect.width(), rect.height());
  for (int y = rect.y0; y <= rect.y1; ++y) {
    for (int x = rect.x0; x <= rect.x1; ++x) {
      out.set(x - rect.x0, y - rect.y0, mask.at(x, y));
    }
  }
  return out;
}

double ChangeRatio(const BinaryMask& augmented, const BinaryMask& original) {
  if (augmented.width() != original.width() ||
      augmented.height() != original.height()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "change ratio needs masks of equal size");
  }
  const auto a = augmented.bits();
  const auto o = original.bits();
  std::size_t diff = 0;
  std::size_t uni = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    diff += a[i] != o[i];
    uni += (a[i] | o[i]);
  }
  if (uni == 0) throw Error(ErrorCode::kEmptyUnion, "both masks are empty");
  return static_cast<double>(diff) / static_cast<double>(uni);
}

double DiceCoefficient(std::span<const double> prediction,
                       const BinaryMask& target, double eps) {
  if (prediction.size() != target.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "prediction and target differ in size");
  }
  if (!(eps > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "dice eps must be positive");
  }
  const auto t = target.bits();
  double intersection = 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    intersection += t[i] * prediction[i];
    total += t[i] + prediction[i];
  }
  return (2.0 * intersection + eps) / (total + eps);
}

}  // namespace cutsynth

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

#ifndef CUTSYNTH_IMAGE_IO_HPP_
#define CUTSYNTH_IMAGE_IO_HPP_

#include <filesystem>

#include "augment.hpp"
#include "mask_core.hpp"

namespace cutsynth {

// Gray, gray+alpha, RGB and RGBA inputs are accepted; alpha is dropped.
RgbImage LoadRgbPng(const std::filesystem::path& path);

// Any nonzero colour sample marks an object pixel.
BinaryMask LoadMaskPng(const std::filesystem::path& path);

void SaveRgbPng(const RgbImage& image, const std::filesystem::path& path);

// Single-channel 8-bit output, 0 = background, 255 = object.
void SaveMaskPng(const BinaryMask& mask, const std::filesystem::path& path);

}  // namespace cutsynth

#endif  // CUTSYNTH_IMAGE_IO_HPP_

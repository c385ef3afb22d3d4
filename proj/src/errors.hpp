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

#ifndef CUTSYNTH_ERRORS_HPP_
#define CUTSYNTH_ERRORS_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace cutsynth {

// Failure categories raised by the core library. The numeric values are
// mirrored by cs_status in the public C header; keep them in sync.
enum class ErrorCode : int {
  kInvalidArgument = 1,
  kEmptyMask = 2,
  kDimensionMismatch = 3,
  kEmptyUnion = 4,
  kInvalidCount = 5,
  kNoSeeds = 6,
  kInvalidAnchor = 7,
  kOutOfBounds = 8,
  kEmptySpec = 9,
  kGroupTooSmall = 10,
  kTooFewSources = 11,
  kNoPositives = 12,
  kNoNegatives = 13,
  kMissingClass = 14,
  kEmptyBucket = 15,
  kEmptyScores = 16,
  kIo = 17,
  kParse = 18,
};

std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace cutsynth

#endif  // CUTSYNTH_ERRORS_HPP_

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

#ifndef CUTSYNTH_LABELS_HPP_
#define CUTSYNTH_LABELS_HPP_

#include <string_view>

namespace cutsynth {

enum class Coarseness { kCoarse, kFine };
enum class Split { kTrain, kTest };

inline std::string_view LabelName(Coarseness c) {
  return c == Coarseness::kCoarse ? "coarse" : "fine";
}
inline std::string_view SplitName(Split s) {
  return s == Split::kTrain ? "train" : "test";
}

}  // namespace cutsynth

#endif  // CUTSYNTH_LABELS_HPP_

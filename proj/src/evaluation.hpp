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

#ifndef CUTSYNTH_EVALUATION_HPP_
#define CUTSYNTH_EVALUATION_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "labels.hpp"

namespace cutsynth {

// One scored item. `score` is the fineness score in [0,1]: values near 0 mean
// a coarse cut, near 1 a fine cut.
struct ScoreRow {
  std::string item_id;
  double score = 0.0;
  Coarseness label = Coarseness::kCoarse;
  std::string object_name;
  bool seen = true;
};

using ScoreTable = std::vector<ScoreRow>;

// Average precision of `positive`. Fine ranks by score, coarse by 1 - score.
// Items with equal scores share one cut-off: each positive in a tie group gets
// the precision measured after the whole group, so the result does not depend
// on input order. Throws kNoPositives / kNoNegatives.
double AveragePrecision(std::span<const double> scores,
                        std::span<const Coarseness> labels,
                        Coarseness positive);

struct ClassAp {
  double fine = 0.0;
  double coarse = 0.0;
};

ClassAp PerClassAp(const ScoreTable& table);

// Mean of the fine and coarse APs. Throws kMissingClass.
double MacroMap(const ScoreTable& table);

// Fine-class prevalence: the expected AP of the fine class under random
// scores. Throws kMissingClass.
double RandomBaselineExpectation(const ScoreTable& table);

struct BucketResult {
  std::size_t count = 0;
  std::size_t fine = 0;
  std::size_t coarse = 0;
  std::optional<double> map;
  std::optional<ClassAp> ap;
  std::string error;  // set when map is absent
};

struct EvalReport {
  BucketResult all;
  BucketResult seen;
  BucketResult unseen;
};

// Macro MAP over all items and over the seen / unseen subsets. A bucket that
// is empty or lacks a class carries an error instead of a value.
EvalReport EvaluateBuckets(const ScoreTable& table);

inline constexpr double kDefaultTopFraction = 0.05;

// Mean of the highest ceil(top_fraction * N) frame scores.
double AggregateVideo(std::span<const double> frame_scores,
                      double top_fraction = kDefaultTopFraction);

}  // namespace cutsynth

#endif  // CUTSYNTH_EVALUATION_HPP_

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

#include "evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "errors.hpp"

namespace cutsynth {

double AveragePrecision(std::span<const double> scores,
                        std::span<const Coarseness> labels,
                        Coarseness positive) {
  if (scores.size() != labels.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "scores and labels differ in length");
  }
  std::vector<double> key(scores.size());
  std::size_t positives = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    key[i] = positive == Coarseness::kFine ? scores[i] : 1.0 - scores[i];
    positives += labels[i] == positive;
  }
  if (positives == 0) throw Error(ErrorCode::kNoPositives, "no positive items");
  if (positives == scores.size()) {
    throw Error(ErrorCode::kNoNegatives, "no negative items");
  }

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return key[a] > key[b]; });

  double sum = 0.0;
  std::size_t hits = 0;
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    std::size_t group_hits = 0;
    while (j < order.size() && key[order[j]] == key[order[i]]) {
      group_hits += labels[order[j]] == positive;
      ++j;
    }
    hits += group_hits;
    sum += group_hits * (static_cast<double>(hits) / static_cast<double>(j));
    i = j;
  }
  return sum / static_cast<double>(positives);
}

namespace {

void RequireBothClasses(const ScoreTable& table) {
  bool fine = false;
  bool coarse = false;
  for (const auto& r : table) {
    fine = fine || r.label == Coarseness::kFine;
    coarse = coarse || r.label == Coarseness::kCoarse;
  }
  if (!fine || !coarse) {
    throw Error(ErrorCode::kMissingClass,
                std::string("table has no ") + (fine ? "coarse" : "fine") +
                    " items");
  }
}

BucketResult Evaluate(const ScoreTable& table) {
  BucketResult b;
  b.count = table.size();
  for (const auto& r : table) {
    (r.label == Coarseness::kFine ? b.fine : b.coarse) += 1;
  }
  if (table.empty()) {
    b.error = "EmptyBucket: no items";
    return b;
  }
  if (b.fine == 0 || b.coarse == 0) {
    b.error = std::string("EmptyBucket: only ") +
              (b.fine == 0 ? "coarse" : "fine") + " items";
    return b;
  }
  b.ap = PerClassAp(table);
  b.map = 0.5 * (b.ap->fine + b.ap->coarse);
  return b;
}

}  // namespace

ClassAp PerClassAp(const ScoreTable& table) {
  RequireBothClasses(table);
  std::vector<double> scores;
  std::vector<Coarseness> labels;
  scores.reserve(table.size());
  labels.reserve(table.size());
  for (const auto& r : table) {
    scores.push_back(r.score);
    labels.push_back(r.label);
  }
  return {AveragePrecision(scores, labels, Coarseness::kFine),
          AveragePrecision(scores, labels, Coarseness::kCoarse)};
}

double MacroMap(const ScoreTable& table) {
  const ClassAp ap = PerClassAp(table);
  return 0.5 * (ap.fine + ap.coarse);
}

double RandomBaselineExpectation(const ScoreTable& table) {
  RequireBothClasses(table);
  const auto fine = std::count_if(table.begin(), table.end(), [](const auto& r) {
    return r.label == Coarseness::kFine;
  });
  return static_cast<double>(fine) / static_cast<double>(table.size());
}

EvalReport EvaluateBuckets(const ScoreTable& table) {
  ScoreTable seen;
  ScoreTable unseen;
  for (const auto& r : table) (r.seen ? seen : unseen).push_back(r);
  return {Evaluate(table), Evaluate(seen), Evaluate(unseen)};
}

double AggregateVideo(std::span<const double> frame_scores,
                      double top_fraction) {
  if (frame_scores.empty()) {
    throw Error(ErrorCode::kEmptyScores, "no frame scores");
  }
  if (!(top_fraction > 0.0 && top_fraction <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "top fraction must be in (0, 1]");
  }
  const double n = static_cast<double>(frame_scores.size());
  // Small slack so e.g. 0.05 * 20 counts as exactly one frame.
  std::size_t k = static_cast<std::size_t>(std::ceil(top_fraction * n - 1e-9));
  k = std::clamp<std::size_t>(k, 1, frame_scores.size());

  std::vector<double> sorted(frame_scores.begin(), frame_scores.end());
  std::partial_sort(sorted.begin(), sorted.begin() + k, sorted.end(),
                    std::greater<>());
  // Error-free (TwoSum) accumulation keeps the sum as hi + lo, then the
  // division is corrected with the exact remainder, so the mean is rounded
  // once instead of twice.
  double hi = 0.0;
  double lo = 0.0;
  for (std::size_t i = k; i-- > 0;) {
    const double x = sorted[i];
    const double s = hi + x;
    const double bb = s - hi;
    lo += (hi - (s - bb)) + (x - bb);
    hi = s;
  }
  const double kd = static_cast<double>(k);
  const double q = hi / kd;
  const double r = std::fma(-q, kd, hi);
  return q + (r + lo) / kd;
}

}  // namespace cutsynth

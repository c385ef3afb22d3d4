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

#include "dataset.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <thread>
#include <utility>

#include "errors.hpp"
#include "image_io.hpp"

namespace cutsynth {
namespace {

// Runs fn(i) for i in [0, n) on up to `workers` threads. Every index is
// visited exactly once; fn must not throw.
void ParallelFor(std::size_t n, int workers,
                 const std::function<void(std::size_t)>& fn) {
  const std::size_t threads =
      std::min<std::size_t>(std::max(workers, 1), std::max<std::size_t>(n, 1));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  }
}

PreparedSource LoadSource(const SourceInput& in) {
  RgbImage image = in.image ? *in.image : LoadRgbPng(in.image_path);
  BinaryMask mask = in.mask ? *in.mask : LoadMaskPng(in.mask_path);
  if (mask.CountSet() == 0) {
    throw Error(ErrorCode::kEmptyMask, "mask has no object pixels");
  }
  if (in.background) {
    return PrepareSource(in.source_id, std::move(image), std::move(mask),
                         *in.background);
  }
  if (!in.background_path.empty()) {
    return PrepareSource(in.source_id, std::move(image), std::move(mask),
                         LoadRgbPng(in.background_path));
  }
  return PrepareSource(in.source_id, std::move(image), std::move(mask));
}

std::string Describe(const SourceInput& in) {
  if (in.image) return in.source_id;
  return in.source_id + " (" + in.image_path.string() + ", " +
         in.mask_path.string() + ")";
}

}  // namespace

void GridSpec::Validate() const {
  if (seed_counts.empty() || strategies.empty() || move_intervals.empty() ||
      noises.empty()) {
    throw Error(ErrorCode::kEmptySpec, "every grid list must be nonempty");
  }
  for (int n : seed_counts) {
    if (n < 1) throw Error(ErrorCode::kInvalidCount, "seed counts must be >= 1");
  }
  for (const auto& m : move_intervals) {
    if (!(m.lo > 0.0) || !(m.lo <= m.hi)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "movement intervals must satisfy 0 < lo <= hi");
    }
  }
  for (double noise : noises) {
    if (!(noise >= 0.0)) {
      throw Error(ErrorCode::kInvalidArgument, "noise values must be >= 0");
    }
  }
  if (anchor.fixed_id &&
      (*anchor.fixed_id < 0 || *anchor.fixed_id >= kAnchorCount)) {
    throw Error(ErrorCode::kInvalidAnchor, "fixed anchor must be in [0,8]");
  }
}

std::vector<AugParams> EnumerateGrid(const GridSpec& spec, RandomStream& rng) {
  spec.Validate();
  std::vector<AugParams> cells;
  cells.reserve(spec.CellCount());
  for (int n : spec.seed_counts) {
    for (SeedStrategy s : spec.strategies) {
      for (const MoveInterval& m : spec.move_intervals) {
        for (double noise : spec.noises) {
          AugParams p;
          p.n_seeds = n;
          p.strategy = s;
          p.move = m;
          p.noise = noise;
          p.anchor_id = spec.anchor.fixed_id
                            ? *spec.anchor.fixed_id
                            : static_cast<int>(rng.UniformIndex(kAnchorCount));
          cells.push_back(p);
        }
      }
    }
  }
  return cells;
}

std::string MakeAugId(const std::string& source_id, std::size_t cell_index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "_%04zu", cell_index);
  return source_id + buf;
}

Manifest BuildDataset(const std::vector<SourceInput>& sources,
                      const GridSpec& spec, const BuildOptions& options) {
  spec.Validate();
  const std::size_t cells = spec.CellCount();

  Manifest manifest;
  manifest.metadata.global_seed = options.global_seed;
  manifest.metadata.grid = spec;
  manifest.metadata.tool_version = CUTSYNTH_VERSION;
  manifest.metadata.cells_per_source = cells;

  if (options.out_dir) {
    std::filesystem::create_directories(*options.out_dir / "images");
    std::filesystem::create_directories(*options.out_dir / "masks");
  }

  // Load and fill every source once.
  std::vector<std::optional<PreparedSource>> prepared(sources.size());
  std::vector<std::string> load_errors(sources.size());
  ParallelFor(sources.size(), options.workers, [&](std::size_t i) {
    try {
      prepared[i] = LoadSource(sources[i]);
    } catch (const std::exception& e) {
      load_errors[i] = Describe(sources[i]) + ": " + e.what();
    }
  });

  std::vector<std::vector<AugParams>> grids(sources.size());
  for (std::size_t i = 0; i < sources.size(); ++i) {
    RandomStream anchors(DeriveStreamSeed(
        options.global_seed, sources[i].source_id, kGridStreamIndex));
    grids[i] = EnumerateGrid(spec, anchors);
  }

  struct TaskResult {
    std::optional<AugRecord> record;
    std::string error;
  };
  std::vector<TaskResult> results(sources.size() * cells);
  ParallelFor(results.size(), options.workers, [&](std::size_t task) {
    const std::size_t si = task / cells;
    const std::size_t cell = task % cells;
    if (!prepared[si]) return;
    const SourceInput& src = sources[si];
    try {
      RandomStream rng(
          DeriveStreamSeed(options.global_seed, src.source_id, cell));
      auto sample = AugmentOnce(*prepared[si], grids[si][cell], rng);
      if (!sample) return;
      AugRecord rec;
      rec.source_id = src.source_id;
      rec.aug_id = MakeAugId(src.source_id, cell);
      rec.object_name = src.object_name;
      rec.params = sample->params;
      rec.c = sample->c;
      rec.image_path = "images/" + rec.aug_id + ".png";
      rec.mask_path = "masks/" + rec.aug_id + ".png";
      if (options.out_dir) {
        SaveRgbPng(sample->image, *options.out_dir / rec.image_path);
        SaveMaskPng(sample->mask, *options.out_dir / rec.mask_path);
      }
      results[task].record = std::move(rec);
    } catch (const std::exception& e) {
      results[task].error = MakeAugId(src.source_id, cell) + ": " + e.what();
    }
  });

  // Single-writer merge in task order.
  for (std::size_t si = 0; si < sources.size(); ++si) {
    SourceSummary summary;
    summary.source_id = sources[si].source_id;
    summary.object_name = sources[si].object_name;
    summary.error = load_errors[si];
    if (prepared[si]) {
      for (std::size_t cell = 0; cell < cells; ++cell) {
        TaskResult& r = results[si * cells + cell];
        if (r.record) {
          manifest.records.push_back(std::move(*r.record));
          ++summary.accepted;
        } else if (!r.error.empty()) {
          if (!summary.error.empty()) summary.error += "; ";
          summary.error += r.error;
        } else {
          ++summary.rejected;
        }
      }
    }
    manifest.metadata.accepted += summary.accepted;
    manifest.metadata.rejected += summary.rejected;
    manifest.metadata.sources.push_back(std::move(summary));
  }
  return manifest;
}

double Median(std::vector<double> values) {
  if (values.empty()) throw Error(ErrorCode::kInvalidArgument, "median of nothing");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  if (n % 2 == 1) return values[n / 2];
  return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

Manifest AssignLabels(Manifest manifest, std::vector<std::string>* warnings) {
  auto& records = manifest.records;

  int seeds_lo = 0;
  int seeds_hi = 0;
  const auto& grid_counts = manifest.metadata.grid.seed_counts;
  if (!grid_counts.empty()) {
    seeds_lo = *std::min_element(grid_counts.begin(), grid_counts.end());
    seeds_hi = *std::max_element(grid_counts.begin(), grid_counts.end());
  } else if (!records.empty()) {
    auto [lo, hi] = std::minmax_element(
        records.begin(), records.end(), [](const auto& a, const auto& b) {
          return a.params.n_seeds < b.params.n_seeds;
        });
    seeds_lo = lo->params.n_seeds;
    seeds_hi = hi->params.n_seeds;
  }

  // Group indices by source, preserving first-appearance order.
  std::vector<std::string> order;
  std::map<std::string, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < records.size(); ++i) {
    auto [it, inserted] = groups.try_emplace(records[i].source_id);
    if (inserted) order.push_back(records[i].source_id);
    it->second.push_back(i);
  }

  for (const std::string& source : order) {
    const auto& idx = groups[source];
    for (std::size_t i : idx) {
      AugRecord& r = records[i];
      r.reg_target = r.c;
      r.reg_target_seeds =
          seeds_hi > seeds_lo
              ? double(r.params.n_seeds - seeds_lo) / (seeds_hi - seeds_lo)
              : 0.0;
      r.label_c.reset();
      r.label_seeds.reset();
    }
    if (idx.size() < 2) {
      if (warnings) {
        warnings->push_back(std::string(ErrorCodeName(ErrorCode::kGroupTooSmall)) +
                            ": source '" + source + "' has " +
                            std::to_string(idx.size()) +
                            " record(s); labels left unset");
      }
      continue;
    }
    std::vector<double> cs;
    std::vector<double> ss;
    for (std::size_t i : idx) {
      cs.push_back(records[i].c);
      ss.push_back(records[i].params.n_seeds);
    }
    const double median_c = Median(cs);
    const double median_s = Median(ss);
    for (std::size_t i : idx) {
      AugRecord& r = records[i];
      r.label_c = r.c <= median_c ? Coarseness::kCoarse : Coarseness::kFine;
      r.label_seeds =
          r.params.n_seeds <= median_s ? Coarseness::kCoarse : Coarseness::kFine;
    }
  }
  return manifest;
}

Manifest SplitTrainTest(Manifest manifest, double train_fraction,
                        RandomStream& rng) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "train fraction must lie in (0, 1)");
  }
  struct Group {
    std::string source_id;
    std::size_t size = 0;
  };
  std::vector<Group> groups;
  std::map<std::string, std::size_t> index;
  for (const AugRecord& r : manifest.records) {
    auto [it, inserted] = index.try_emplace(r.source_id, groups.size());
    if (inserted) groups.push_back({r.source_id, 0});
    ++groups[it->second].size;
  }
  if (groups.size() < 2) {
    throw Error(ErrorCode::kTooFewSources,
                "a grouped split needs at least two sources, got " +
                    std::to_string(groups.size()));
  }

  // Fisher-Yates, then a stable size sort, so equal-sized sources land in
  // random order.
  for (std::size_t i = groups.size() - 1; i > 0; --i) {
    std::swap(groups[i], groups[rng.UniformIndex(static_cast<std::uint32_t>(i + 1))]);
  }
  std::stable_sort(groups.begin(), groups.end(),
                   [](const Group& a, const Group& b) { return a.size > b.size; });

  const double target = train_fraction * manifest.records.size();
  double train = 0.0;
  std::map<std::string, Split> assignment;
  std::size_t n_train = 0;
  for (const Group& g : groups) {
    const bool to_train =
        std::abs(train + g.size - target) < std::abs(train - target);
    if (to_train) {
      train += g.size;
      ++n_train;
    }
    assignment[g.source_id] = to_train ? Split::kTrain : Split::kTest;
  }
  // Both splits must hold at least one source.
  if (n_train == 0) {
    assignment[groups.front().source_id] = Split::kTrain;
  } else if (n_train == groups.size()) {
    assignment[groups.back().source_id] = Split::kTest;
  }

  for (AugRecord& r : manifest.records) r.split = assignment[r.source_id];
  manifest.metadata.train_fraction = train_fraction;
  return manifest;
}

}  // namespace cutsynth

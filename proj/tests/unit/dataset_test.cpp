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

#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <map>
#include <random>
#include <set>

#include "errors.hpp"
#include "image_io.hpp"
#include "manifest_io.hpp"
#include "support/oracles.hpp"

namespace cutsynth {
namespace {

namespace fs = std::filesystem;
using testing::DiskMask;
using testing::SceneImage;

SourceInput DiskSource(const std::string& id, int size, double radius,
                       const std::string& object = "disk") {
  SourceInput in;
  in.source_id = id;
  in.object_name = object;
  in.mask = DiskMask(size, size, size / 2.0, size / 2.0, radius);
  in.image = SceneImage(*in.mask);
  return in;
}

GridSpec SmallGrid() {
  GridSpec g;
  g.seed_counts = {2, 5, 20};
  g.strategies = {SeedStrategy::kGrid, SeedStrategy::kDiagonalMain};
  g.move_intervals = {{2, 5}};
  g.noises = {0, 10};
  return g;
}

TEST(EnumerateGridTest, DefaultGridHasSixHundredCells) {
  RandomStream rng(0);
  const auto cells = EnumerateGrid(GridSpec{}, rng);
  EXPECT_EQ(cells.size(), 600u);
  std::set<int> anchors;
  for (const auto& c : cells) {
    EXPECT_GE(c.anchor_id, 0);
    EXPECT_LE(c.anchor_id, 8);
    anchors.insert(c.anchor_id);
  }
  EXPECT_EQ(anchors.size(), 9u);
}

TEST(EnumerateGridTest, SingleValueLists) {
  GridSpec g;
  g.seed_counts = {7};
  g.strategies = {SeedStrategy::kVertical};
  g.move_intervals = {{3, 4}};
  g.noises = {1};
  g.anchor.fixed_id = 2;
  RandomStream rng(0);
  const auto cells = EnumerateGrid(g, rng);
  ASSERT_EQ(cells.size(), 1u);
  EXPECT_EQ(cells[0].n_seeds, 7);
  EXPECT_EQ(cells[0].anchor_id, 2);
}

TEST(EnumerateGridTest, LexicographicOrder) {
  GridSpec g;
  g.seed_counts = {2, 3};
  g.move_intervals = {{2, 5}};
  g.noises = {0};
  g.anchor.fixed_id = 4;
  RandomStream rng(0);
  const auto cells = EnumerateGrid(g, rng);
  ASSERT_EQ(cells.size(), 10u);
  // Hand enumeration: seed count outermost, strategies in listed order.
  const SeedStrategy order[5] = {
      SeedStrategy::kDiagonalMain, SeedStrategy::kDiagonalSecondary,
      SeedStrategy::kGrid, SeedStrategy::kHorizontal, SeedStrategy::kVertical};
  for (int i = 0; i < 10; ++i) {
    EXPECT_EQ(cells[i].n_seeds, i < 5 ? 2 : 3);
    EXPECT_EQ(cells[i].strategy, order[i % 5]);
  }
}

TEST(EnumerateGridTest, EmptySpec) {
  GridSpec g;
  g.noises.clear();
  RandomStream rng(0);
  try {
    EnumerateGrid(g, rng);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptySpec);
  }
}

TEST(BuildDatasetTest, CentredDiskAcceptsEveryDefaultCell) {
  const auto m = BuildDataset({DiskSource("disk", 200, 50)}, GridSpec{}, {});
  EXPECT_EQ(m.records.size(), 600u);
  EXPECT_EQ(m.metadata.accepted, 600u);
  EXPECT_EQ(m.metadata.rejected, 0u);
  std::set<std::string> ids;
  for (const auto& r : m.records) {
    EXPECT_TRUE(ids.insert(r.aug_id).second);
    EXPECT_GT(r.c, 0.0);
    EXPECT_LE(r.c, 1.0);
    EXPECT_FALSE(r.label_c.has_value());
    EXPECT_FALSE(r.split.has_value());
  }
}

TEST(BuildDatasetTest, WorkerCountDoesNotChangeOutput) {
  std::vector<SourceInput> sources{DiskSource("a", 120, 30),
                                   DiskSource("b", 100, 40, "other")};
  BuildOptions one;
  one.global_seed = 42;
  BuildOptions eight = one;
  eight.workers = 8;
  const auto m1 = BuildDataset(sources, SmallGrid(), one);
  const auto m8 = BuildDataset(sources, SmallGrid(), eight);
  EXPECT_EQ(ManifestToString(m1), ManifestToString(m8));
}

TEST(BuildDatasetTest, SeedChangesOutput) {
  std::vector<SourceInput> sources{DiskSource("a", 120, 30)};
  BuildOptions a;
  a.global_seed = 1;
  BuildOptions b;
  b.global_seed = 2;
  EXPECT_NE(ManifestToString(BuildDataset(sources, SmallGrid(), a)),
            ManifestToString(BuildDataset(sources, SmallGrid(), b)));
}

TEST(BuildDatasetTest, AccountsForRejectionsAndFailures) {
  // Object touching the right edge: pushes to the right get rejected.
  SourceInput edge;
  edge.source_id = "edge";
  edge.object_name = "box";
  BinaryMask mask(80, 80);
  for (int y = 20; y < 60; ++y)
    for (int x = 50; x < 80; ++x) mask.set(x, y);
  edge.mask = mask;
  edge.image = SceneImage(mask);

  SourceInput broken;
  broken.source_id = "broken";
  broken.image_path = "/nonexistent/broken.png";
  broken.mask_path = "/nonexistent/broken_mask.png";

  const auto grid = SmallGrid();
  const auto m = BuildDataset({edge, broken, DiskSource("ok", 100, 25)}, grid, {});
  ASSERT_EQ(m.metadata.sources.size(), 3u);
  const auto& e = m.metadata.sources[0];
  EXPECT_GT(e.rejected, 0u);
  EXPECT_EQ(e.accepted + e.rejected, grid.CellCount());
  EXPECT_FALSE(m.metadata.sources[1].error.empty());
  EXPECT_NE(m.metadata.sources[1].error.find("broken"), std::string::npos);
  EXPECT_EQ(m.metadata.sources[2].accepted, grid.CellCount());
  EXPECT_EQ(m.metadata.accepted + m.metadata.rejected, 2 * grid.CellCount());
  EXPECT_EQ(m.records.size(), m.metadata.accepted);
  // Records from one source are contiguous.
  std::vector<std::string> seq;
  for (const auto& r : m.records)
    if (seq.empty() || seq.back() != r.source_id) seq.push_back(r.source_id);
  EXPECT_EQ(seq, (std::vector<std::string>{"edge", "ok"}));
}

TEST(BuildDatasetTest, MismatchedSizesReportThePair) {
  SourceInput bad = DiskSource("bad", 60, 10);
  bad.image = RgbImage(61, 60);
  const auto m = BuildDataset({bad}, SmallGrid(), {});
  EXPECT_TRUE(m.records.empty());
  EXPECT_NE(m.metadata.sources[0].error.find("bad"), std::string::npos);
}

TEST(BuildDatasetTest, WritesImagesAndMasks) {
  const fs::path dir = fs::temp_directory_path() / "cutsynth_dataset_test";
  fs::remove_all(dir);
  BuildOptions opt;
  opt.out_dir = dir;
  const auto source = DiskSource("w", 90, 20);
  const auto m = BuildDataset({source}, SmallGrid(), opt);
  ASSERT_FALSE(m.records.empty());
  for (const auto& r : m.records) {
    const auto mask = LoadMaskPng(dir / r.mask_path);
    EXPECT_EQ(ChangeRatio(mask, *source.mask), r.c);
    EXPECT_TRUE(fs::exists(dir / r.image_path));
  }
  fs::remove_all(dir);
}

// Manifest with one group per entry of `groups` holding the given c values.
Manifest Groups(const std::vector<std::vector<double>>& groups,
                const std::vector<std::vector<int>>& seeds = {}) {
  Manifest m;
  m.metadata.grid.seed_counts = {2, 3, 5, 10, 20, 30, 40, 50};
  for (std::size_t g = 0; g < groups.size(); ++g) {
    for (std::size_t i = 0; i < groups[g].size(); ++i) {
      AugRecord r;
      r.source_id = "s" + std::to_string(g);
      r.aug_id = MakeAugId(r.source_id, i);
      r.object_name = "obj" + std::to_string(g % 3);
      r.c = groups[g][i];
      r.params.n_seeds = seeds.empty() ? 2 : seeds[g][i];
      m.records.push_back(r);
    }
  }
  return m;
}

std::vector<Coarseness> LabelsC(const Manifest& m) {
  std::vector<Coarseness> out;
  for (const auto& r : m.records) out.push_back(*r.label_c);
  return out;
}

constexpr auto C = Coarseness::kCoarse;
constexpr auto F = Coarseness::kFine;

TEST(AssignLabelsTest, MedianSplit) {
  const auto m = AssignLabels(Groups({{0.1, 0.2, 0.3, 0.4}}));
  EXPECT_EQ(LabelsC(m), (std::vector<Coarseness>{C, C, F, F}));
}

TEST(AssignLabelsTest, TiesFallToCoarse) {
  const auto m = AssignLabels(Groups({{0.2, 0.2, 0.8}}));
  EXPECT_EQ(LabelsC(m), (std::vector<Coarseness>{C, C, F}));
}

TEST(AssignLabelsTest, OddGroupAgainstSortOracle) {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<double> cs(101);
  for (auto& c : cs) c = u(gen);
  const auto m = AssignLabels(Groups({cs}));
  auto sorted = cs;
  std::sort(sorted.begin(), sorted.end());
  const double median = sorted[50];
  std::size_t coarse = 0;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    EXPECT_EQ(*m.records[i].label_c, cs[i] <= median ? C : F);
    coarse += *m.records[i].label_c == C;
  }
  EXPECT_GE(coarse, 51u);
}

TEST(AssignLabelsTest, SeedLabelsAndTargets) {
  const auto m = AssignLabels(
      Groups({{0.5, 0.6, 0.1, 0.9}}, {{2, 50, 10, 20}}));
  std::vector<Coarseness> seeds;
  for (const auto& r : m.records) seeds.push_back(*r.label_seeds);
  // Median of {2, 10, 20, 50} = 15.
  EXPECT_EQ(seeds, (std::vector<Coarseness>{C, F, C, F}));
  EXPECT_EQ(*m.records[0].reg_target_seeds, 0.0);
  EXPECT_EQ(*m.records[1].reg_target_seeds, 1.0);
  EXPECT_DOUBLE_EQ(*m.records[2].reg_target_seeds, 8.0 / 48.0);
  for (const auto& r : m.records) EXPECT_EQ(*r.reg_target, r.c);
}

TEST(AssignLabelsTest, SmallGroupWarns) {
  std::vector<std::string> warnings;
  const auto m = AssignLabels(Groups({{0.3}, {0.1, 0.2}}), &warnings);
  ASSERT_EQ(warnings.size(), 1u);
  EXPECT_NE(warnings[0].find("GroupTooSmall"), std::string::npos);
  EXPECT_FALSE(m.records[0].label_c.has_value());
  EXPECT_TRUE(m.records[1].label_c.has_value());
}

TEST(AssignLabelsTest, IdempotentAndBalanced) {
  std::mt19937_64 gen(6);
  std::uniform_int_distribution<int> level(0, 9);
  std::vector<std::vector<double>> groups(12);
  for (auto& g : groups) {
    g.resize(2 + gen() % 60);
    for (auto& c : g) c = level(gen) / 10.0;  // many ties
  }
  const auto once = AssignLabels(Groups(groups));
  EXPECT_EQ(AssignLabels(once), once);
  std::size_t offset = 0;
  for (const auto& g : groups) {
    auto sorted = g;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    const double med = n % 2 ? sorted[n / 2] : (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0;
    std::size_t coarse = 0, ties = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      EXPECT_EQ(*once.records[offset + i].label_c, g[i] <= med ? C : F);
      coarse += *once.records[offset + i].label_c == C;
      ties += g[i] == med;
    }
    const std::size_t fine = g.size() - coarse;
    EXPECT_GE(coarse, fine);
    EXPECT_LE(coarse - fine, std::max<std::size_t>(2 * ties, n % 2));
    offset += g.size();
  }
}

std::map<std::string, Split> SplitBySource(const Manifest& m) {
  std::map<std::string, Split> out;
  for (const auto& r : m.records) {
    auto [it, inserted] = out.emplace(r.source_id, *r.split);
    EXPECT_EQ(it->second, *r.split) << "source split across both sides";
  }
  return out;
}

TEST(SplitTest, TenEqualSources) {
  RandomStream rng(3);
  const auto m = SplitTrainTest(Groups(std::vector<std::vector<double>>(10, {0.1, 0.2})), 0.7, rng);
  const auto by_source = SplitBySource(m);
  const auto train = std::count_if(by_source.begin(), by_source.end(),
                                   [](const auto& kv) { return kv.second == Split::kTrain; });
  EXPECT_EQ(train, 7);
  EXPECT_EQ(*m.metadata.train_fraction, 0.7);
}

TEST(SplitTest, UnequalSourcesMatchExhaustiveOptimum) {
  const std::vector<std::size_t> sizes{600, 600, 300, 300};
  std::vector<std::vector<double>> groups;
  for (auto s : sizes) groups.push_back(std::vector<double>(s, 0.5));
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    RandomStream rng(seed);
    const auto m = SplitTrainTest(Groups(groups), 0.7, rng);
    SplitBySource(m);
    const double train = std::count_if(m.records.begin(), m.records.end(),
                                       [](const auto& r) { return *r.split == Split::kTrain; });
    const double target = 0.7 * 1800;
    EXPECT_LE(std::abs(train - target), 600.0);
    EXPECT_LE(std::abs(train - target), testing::BestSubsetDeviation(sizes, target));
  }
}

TEST(SplitTest, RandomSizesStayWithinOneSource) {
  std::mt19937_64 gen(8);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<std::vector<double>> groups(2 + gen() % 20);
    std::size_t largest = 0, total = 0;
    for (auto& g : groups) {
      g.assign(1 + gen() % 600, 0.5);
      largest = std::max(largest, g.size());
      total += g.size();
    }
    RandomStream rng(trial);
    const auto m = SplitTrainTest(Groups(groups), 0.7, rng);
    const auto by_source = SplitBySource(m);
    std::set<Split> sides;
    for (const auto& [id, s] : by_source) sides.insert(s);
    EXPECT_EQ(sides.size(), 2u);
    const double train = std::count_if(m.records.begin(), m.records.end(),
                                       [](const auto& r) { return *r.split == Split::kTrain; });
    EXPECT_LE(std::abs(train - 0.7 * total), double(largest));
  }
}

TEST(SplitTest, Errors) {
  RandomStream rng(0);
  try {
    SplitTrainTest(Groups({{0.1, 0.2}}), 0.7, rng);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kTooFewSources);
  }
  EXPECT_THROW(SplitTrainTest(Groups({{0.1}, {0.2}}), 1.0, rng), Error);
}

TEST(ManifestIoTest, RoundTripPreservesEveryField) {
  auto m = AssignLabels(BuildDataset({DiskSource("rt", 80, 20)}, SmallGrid(), {}));
  m.records.push_back(m.records.back());
  m.records.back().source_id = "other";
  m.records.back().aug_id = "other_0000";
  RandomStream rng(2);
  m = SplitTrainTest(m, 0.7, rng);
  m.metadata.grid.anchor.fixed_id = 3;
  const std::string text = ManifestToString(m);
  std::istringstream in(text);
  const Manifest back = ReadManifest(in);
  EXPECT_EQ(back, m);
  EXPECT_EQ(ManifestToString(back), text);
}

TEST(ManifestIoTest, RejectsDuplicatesAndGarbage) {
  const auto m = BuildDataset({DiskSource("d", 80, 20)}, SmallGrid(), {});
  std::string text = ManifestToString(m);
  const auto first_nl = text.find('\n');
  const auto second_nl = text.find('\n', first_nl + 1);
  std::istringstream dup(text + text.substr(first_nl + 1, second_nl - first_nl));
  EXPECT_THROW(ReadManifest(dup), Error);
  std::istringstream garbage("not json\n");
  EXPECT_THROW(ReadManifest(garbage), Error);
  std::istringstream empty("");
  EXPECT_THROW(ReadManifest(empty), Error);
}

TEST(GridSpecJsonTest, PartialOverridesKeepDefaults) {
  const auto spec = GridSpecFromJson(nlohmann::json::parse(
      R"({"seed_counts": [4, 8], "anchor": 7})"));
  EXPECT_EQ(spec.seed_counts, (std::vector<int>{4, 8}));
  EXPECT_EQ(spec.strategies.size(), 5u);
  EXPECT_EQ(spec.anchor.fixed_id, 7);
  EXPECT_EQ(GridSpecFromJson(GridSpecToJson(spec)), spec);
  EXPECT_THROW(GridSpecFromJson(nlohmann::json::parse(R"({"move_intervals": [[1]]})")), Error);
  EXPECT_THROW(GridSpecFromJson(nlohmann::json::parse(R"({"strategies": ["spiral"]})")), Error);
}

}  // namespace
}  // namespace cutsynth

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

// cutsynth command-line tool. Talks to the library only through the C API.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cutsynth/cutsynth.h"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 2;

struct ManifestDeleter {
  void operator()(cs_manifest* m) const { cs_manifest_free(m); }
};
struct BuilderDeleter {
  void operator()(cs_builder* b) const { cs_builder_free(b); }
};
struct ImageDeleter {
  void operator()(cs_image* i) const { cs_image_free(i); }
};
struct MaskDeleter {
  void operator()(cs_mask* m) const { cs_mask_free(m); }
};
struct StringDeleter {
  void operator()(char* s) const { cs_string_free(s); }
};
using ManifestPtr = std::unique_ptr<cs_manifest, ManifestDeleter>;
using BuilderPtr = std::unique_ptr<cs_builder, BuilderDeleter>;
using ImagePtr = std::unique_ptr<cs_image, ImageDeleter>;
using MaskPtr = std::unique_ptr<cs_mask, MaskDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

// Thrown to unwind a command with a diagnostic and exit status 2.
struct CommandError {
  std::string message;
};

void Check(cs_status status, const std::string& context) {
  if (status == CS_OK) return;
  throw CommandError{context + ": " + cs_status_name(status) + ": " +
                     cs_last_error()};
}

// --seed, else CUTSYNTH_SEED, else 0.
std::uint64_t ResolveSeed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("CUTSYNTH_SEED"); env && *env) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw CommandError{std::string("CUTSYNTH_SEED is not an integer: ") + env};
    }
  }
  return 0;
}

std::string ReadText(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CommandError{"cannot read " + path.string()};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteText(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw CommandError{"cannot write " + path.string()};
}

ManifestPtr LoadManifest(const std::string& path) {
  cs_manifest* m = nullptr;
  Check(cs_manifest_load(path.c_str(), &m), "loading " + path);
  return ManifestPtr(m);
}

bool IsPng(const fs::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), ::tolower);
  return ext == ".png";
}

// Stem -> path for every PNG in a directory.
std::map<std::string, fs::path> PngsByStem(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw CommandError{"not a directory: " + dir.string()};
  std::map<std::string, fs::path> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && IsPng(entry.path())) {
      out[entry.path().stem().string()] = entry.path();
    }
  }
  return out;
}

// Two-column CSV (filename or stem, object name); '#' starts a comment line.
std::map<std::string, std::string> ReadObjectTable(const fs::path& path) {
  std::map<std::string, std::string> out;
  std::istringstream in(ReadText(path));
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw CommandError{"objects table line lacks a comma: " + line};
    }
    const std::string key = fs::path(line.substr(0, comma)).stem().string();
    out[key] = line.substr(comma + 1);
  }
  return out;
}

// ---- augment

struct AugmentArgs {
  std::string images;
  std::string masks;
  std::string backgrounds;
  std::string objects;
  std::string out;
  std::string grid;
  std::optional<std::uint64_t> seed;
  int workers = 1;
};

int RunAugment(const AugmentArgs& args) {
  const auto images = PngsByStem(args.images);
  const auto masks = PngsByStem(args.masks);
  std::map<std::string, fs::path> backgrounds;
  if (!args.backgrounds.empty()) backgrounds = PngsByStem(args.backgrounds);
  std::map<std::string, std::string> objects;
  if (!args.objects.empty()) objects = ReadObjectTable(args.objects);

  std::vector<std::string> problems;
  cs_builder* raw = nullptr;
  Check(cs_builder_create(&raw), "creating builder");
  BuilderPtr builder(raw);
  const std::uint64_t seed = ResolveSeed(args.seed);
  Check(cs_builder_set_seed(builder.get(), seed), "seed");
  Check(cs_builder_set_workers(builder.get(), args.workers), "workers");
  Check(cs_builder_set_output_dir(builder.get(), args.out.c_str()), "output dir");
  if (!args.grid.empty()) {
    Check(cs_builder_set_grid_json(builder.get(), ReadText(args.grid).c_str()),
          "grid " + args.grid);
  }

  std::size_t added = 0;
  for (const auto& [stem, image_path] : images) {
    auto mask = masks.find(stem);
    if (mask == masks.end()) {
      problems.push_back(image_path.string() + ": no mask named " + stem +
                         ".png in " + args.masks);
      continue;
    }
    std::string background;
    if (!backgrounds.empty()) {
      auto bg = backgrounds.find(stem);
      if (bg == backgrounds.end()) {
        problems.push_back(image_path.string() + ": no background named " +
                           stem + ".png in " + args.backgrounds);
        continue;
      }
      background = bg->second.string();
    }
    std::string object = stem;
    if (auto it = objects.find(stem); it != objects.end()) object = it->second;
    Check(cs_builder_add_source(builder.get(), stem.c_str(), object.c_str(),
                                image_path.string().c_str(),
                                mask->second.string().c_str(),
                                background.c_str()),
          "adding " + stem);
    ++added;
  }
  for (const auto& [stem, mask_path] : masks) {
    if (!images.count(stem)) {
      problems.push_back(mask_path.string() + ": no image named " + stem + ".png");
    }
  }

  fs::create_directories(args.out);
  cs_manifest* m = nullptr;
  Check(cs_builder_run(builder.get(), &m), "generating");
  ManifestPtr manifest(m);
  for (std::size_t i = 0; i < cs_manifest_source_count(manifest.get()); ++i) {
    const std::string err = cs_manifest_source_error(manifest.get(), i);
    if (!err.empty()) problems.push_back(err);
  }
  const fs::path manifest_path = fs::path(args.out) / "manifest.jsonl";
  Check(cs_manifest_save(manifest.get(), manifest_path.string().c_str()),
        "writing manifest");

  std::size_t accepted = 0;
  std::size_t rejected = 0;
  Check(cs_manifest_counts(manifest.get(), &accepted, &rejected), "counts");
  std::cout << "sources: " << added << "\naccepted: " << accepted
            << "\nrejected: " << rejected << "\nseed: " << seed
            << "\nmanifest: " << manifest_path.string() << "\n";
  for (const auto& p : problems) std::cerr << "error: " << p << "\n";
  return problems.empty() ? kExitOk : kExitFailure;
}

// ---- label / split

int RunLabel(const std::string& manifest_path, const std::string& out,
             const std::string& target) {
  ManifestPtr manifest = LoadManifest(manifest_path);
  char* warnings = nullptr;
  Check(cs_manifest_assign_labels(manifest.get(), &warnings), "labelling");
  StringPtr hold(warnings);
  Check(cs_manifest_set_target(manifest.get(), target.c_str()), "target");
  const std::string dest = out.empty() ? manifest_path : out;
  Check(cs_manifest_save(manifest.get(), dest.c_str()), "writing " + dest);
  if (warnings && *warnings) std::cerr << warnings;
  std::cout << "labelled " << cs_manifest_record_count(manifest.get())
            << " records -> " << dest << "\n";
  return kExitOk;
}

int RunSplit(const std::string& manifest_path, const std::string& out,
             double fraction, std::optional<std::uint64_t> seed_flag) {
  ManifestPtr manifest = LoadManifest(manifest_path);
  const std::uint64_t seed = ResolveSeed(seed_flag);
  Check(cs_manifest_split(manifest.get(), fraction, seed), "splitting");
  const std::string dest = out.empty() ? manifest_path : out;
  Check(cs_manifest_save(manifest.get(), dest.c_str()), "writing " + dest);
  std::cout << "split " << cs_manifest_record_count(manifest.get())
            << " records (train fraction " << fraction << ", seed " << seed
            << ") -> " << dest << "\n";
  return kExitOk;
}

// ---- evaluate / aggregate-video

int RunEvaluate(const std::string& scores, const std::string& manifest_path,
                const std::string& out) {
  ManifestPtr manifest;
  if (!manifest_path.empty()) manifest = LoadManifest(manifest_path);
  char* report = nullptr;
  Check(cs_evaluate_file(scores.c_str(), manifest.get(), &report),
        "evaluating " + scores);
  StringPtr hold(report);
  if (out.empty()) {
    std::cout << report << "\n";
  } else {
    WriteText(out, std::string(report) + "\n");
  }
  return kExitOk;
}

int RunAggregateVideo(const std::string& scores, double top_frac,
                      const std::string& out) {
  char* report = nullptr;
  Check(cs_aggregate_video_file(scores.c_str(), top_frac, &report),
        "aggregating " + scores);
  StringPtr hold(report);
  if (out.empty()) {
    std::cout << report << "\n";
  } else {
    WriteText(out, std::string(report) + "\n");
  }
  return kExitOk;
}

// ---- preview

struct PreviewArgs {
  std::string image;
  std::string mask;
  std::string background;
  std::string out;
  std::optional<std::uint64_t> seed;
  int n_seeds = 9;
  std::string strategy = "grid";
  double move_lo = 5;
  double move_hi = 10;
  double noise = 0;
  int anchor = 4;
};

int RunPreview(const PreviewArgs& args) {
  cs_image* raw_image = nullptr;
  Check(cs_image_load_png(args.image.c_str(), &raw_image), "loading " + args.image);
  ImagePtr image(raw_image);
  cs_mask* raw_mask = nullptr;
  Check(cs_mask_load_png(args.mask.c_str(), &raw_mask), "loading " + args.mask);
  MaskPtr mask(raw_mask);
  ImagePtr background;
  if (!args.background.empty()) {
    cs_image* bg = nullptr;
    Check(cs_image_load_png(args.background.c_str(), &bg),
          "loading " + args.background);
    background.reset(bg);
  }

  const cs_aug_params params{args.n_seeds, args.strategy.c_str(), args.move_lo,
                             args.move_hi, args.noise, args.anchor};
  cs_image* aug_image = nullptr;
  cs_mask* aug_mask = nullptr;
  double c = 0.0;
  int rejected = 0;
  const std::uint64_t seed = ResolveSeed(args.seed);
  Check(cs_augment_once(image.get(), mask.get(), background.get(), &params,
                        seed, &aug_image, &aug_mask, &c, &rejected),
        "augmenting " + args.image + " / " + args.mask);
  if (rejected) {
    throw CommandError{"cell rejected: a displaced region leaves the image"};
  }
  ImagePtr augmented(aug_image);
  MaskPtr augmented_mask(aug_mask);
  cs_image* panel = nullptr;
  Check(cs_image_side_by_side(image.get(), augmented.get(), &panel), "panel");
  ImagePtr hold(panel);
  Check(cs_image_save_png(panel, args.out.c_str()), "writing " + args.out);
  std::cout << "c: " << c << "\nseed: " << seed << "\npreview: " << args.out
            << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cutsynth: synthesise cut-object datasets and evaluate coarseness"};
  app.set_version_flag("--version", std::string(cs_version()));
  app.require_subcommand(1);

  AugmentArgs aug;
  auto* augment = app.add_subcommand("augment", "Generate augmented images and a manifest");
  augment->add_option("--images", aug.images, "Directory of RGB source images")->required();
  augment->add_option("--masks", aug.masks, "Directory of object masks (same stems)")->required();
  augment->add_option("--backgrounds", aug.backgrounds, "Directory of precomputed object-free backgrounds");
  augment->add_option("--objects", aug.objects, "CSV table: filename,object_name");
  augment->add_option("--out", aug.out, "Output directory")->required();
  augment->add_option("--grid", aug.grid, "JSON grid-spec file");
  augment->add_option("--seed", aug.seed, "Global seed (default: $CUTSYNTH_SEED or 0)");
  augment->add_option("--workers", aug.workers, "Worker threads")->check(CLI::PositiveNumber);

  std::string manifest_path;
  std::string out;
  std::string target = "change_ratio";
  auto* label = app.add_subcommand("label", "Assign median-split labels and regression targets");
  label->add_option("--manifest", manifest_path, "Manifest to label")->required();
  label->add_option("--out", out, "Output manifest (default: overwrite input)");
  label->add_option("--target", target, "Regression target column for training")
      ->check(CLI::IsMember({"change_ratio", "seed_points"}));

  double train_fraction = 0.7;
  std::optional<std::uint64_t> split_seed;
  auto* split = app.add_subcommand("split", "Grouped train/test split by source");
  split->add_option("--manifest", manifest_path, "Manifest to split")->required();
  split->add_option("--out", out, "Output manifest (default: overwrite input)");
  split->add_option("--train-fraction", train_fraction, "Record-level train share")
      ->check(CLI::Range(0.0, 1.0));
  split->add_option("--seed", split_seed, "Split seed (default: $CUTSYNTH_SEED or 0)");

  std::string scores;
  auto* evaluate = app.add_subcommand("evaluate", "Macro MAP report for a score file");
  evaluate->add_option("--scores", scores, "Score file (JSON Lines)")->required();
  evaluate->add_option("--manifest", manifest_path, "Manifest providing labels");
  evaluate->add_option("--out", out, "Write the report here instead of stdout");

  double top_frac = 0.05;
  auto* video = app.add_subcommand("aggregate-video", "Aggregate per-frame scores per video");
  video->add_option("--scores", scores, "Frame score file sampled at 2 fps")->required();
  video->add_option("--top-frac", top_frac, "Fraction of top frames to average")
      ->check(CLI::Range(0.0, 1.0));
  video->add_option("--out", out, "Write the report here instead of stdout");

  PreviewArgs pv;
  auto* preview = app.add_subcommand("preview", "Render one parameter cell next to its source");
  preview->add_option("--image", pv.image, "Source RGB image")->required();
  preview->add_option("--mask", pv.mask, "Source object mask")->required();
  preview->add_option("--background", pv.background, "Precomputed object-free background");
  preview->add_option("--out", pv.out, "Output PNG")->required();
  preview->add_option("--seed", pv.seed, "Seed (default: $CUTSYNTH_SEED or 0)");
  preview->add_option("--n-seeds", pv.n_seeds, "Number of seeding points");
  preview->add_option("--strategy", pv.strategy, "Seed layout")
      ->check(CLI::IsMember({"grid", "horizontal", "vertical", "diagonal_main",
                             "diagonal_secondary"}));
  preview->add_option("--move-lo", pv.move_lo, "Lower push distance (px)");
  preview->add_option("--move-hi", pv.move_hi, "Upper push distance (px)");
  preview->add_option("--noise", pv.noise, "Seed jitter (px)");
  preview->add_option("--anchor", pv.anchor, "Reference anchor id 0..8")
      ->check(CLI::Range(0, 8));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*augment) return RunAugment(aug);
    if (*label) return RunLabel(manifest_path, out, target);
    if (*split) return RunSplit(manifest_path, out, train_fraction, split_seed);
    if (*evaluate) return RunEvaluate(scores, manifest_path, out);
    if (*video) return RunAggregateVideo(scores, top_frac, out);
    if (*preview) return RunPreview(pv);
  } catch (const CommandError& e) {
    std::cerr << "error: " << e.message << "\n";
    return kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitFailure;
}

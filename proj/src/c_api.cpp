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

// extern "C" surface over the core library. Exceptions never cross this
// boundary: every entry point converts them to a cs_status and a thread-local
// message.

#include "cutsynth/cutsynth.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "augment.hpp"
#include "dataset.hpp"
#include "errors.hpp"
#include "evaluation.hpp"
#include "image_io.hpp"
#include "manifest_io.hpp"
#include "mask_core.hpp"
#include "score_io.hpp"

struct cs_mask {
  cutsynth::BinaryMask value;
};
struct cs_image {
  cutsynth::RgbImage value;
};
struct cs_builder {
  std::vector<cutsynth::SourceInput> sources;
  cutsynth::GridSpec grid;
  cutsynth::BuildOptions options;
};
struct cs_manifest {
  cutsynth::Manifest value;
};

namespace {

thread_local std::string g_last_error;

cs_status Fail(cs_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

template <typename Fn>
cs_status Guard(Fn&& fn) {
  try {
    return fn();
  } catch (const cutsynth::Error& e) {
    return Fail(static_cast<cs_status>(e.code()), e.what());
  } catch (const nlohmann::json::exception& e) {
    return Fail(CS_ERR_PARSE, e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    return Fail(CS_ERR_IO, e.what());
  } catch (const std::exception& e) {
    return Fail(CS_ERR_INTERNAL, e.what());
  } catch (...) {
    return Fail(CS_ERR_INTERNAL, "unknown failure");
  }
}

#define CS_REQUIRE(cond, what)                          \
  do {                                                  \
    if (!(cond)) return Fail(CS_ERR_INVALID_ARGUMENT, what); \
  } while (0)

char* Duplicate(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::vector<cutsynth::Coarseness> ToLabels(const int* labels, std::size_t n) {
  std::vector<cutsynth::Coarseness> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (labels[i] != CS_LABEL_FINE && labels[i] != CS_LABEL_COARSE) {
      throw cutsynth::Error(cutsynth::ErrorCode::kInvalidArgument,
                            "labels must be CS_LABEL_FINE or CS_LABEL_COARSE");
    }
    out[i] = labels[i] == CS_LABEL_FINE ? cutsynth::Coarseness::kFine
                                        : cutsynth::Coarseness::kCoarse;
  }
  return out;
}

}  // namespace

extern "C" {

const char* cs_version(void) { return CUTSYNTH_VERSION; }

const char* cs_status_name(cs_status status) {
  if (status == CS_OK) return "OK";
  if (status == CS_ERR_INTERNAL) return "Internal";
  return cutsynth::ErrorCodeName(static_cast<cutsynth::ErrorCode>(status)).data();
}

const char* cs_last_error(void) { return g_last_error.c_str(); }

void cs_string_free(char* s) { std::free(s); }

// ---- masks

cs_status cs_mask_create(int width, int height, const uint8_t* bits,
                         cs_mask** out) {
  CS_REQUIRE(out && bits, "null argument");
  return Guard([&] {
    std::vector<std::uint8_t> v(bits, bits + std::size_t(std::max(width, 0)) *
                                                 std::size_t(std::max(height, 0)));
    *out = new cs_mask{cutsynth::BinaryMask(width, height, std::move(v))};
    return CS_OK;
  });
}

cs_status cs_mask_load_png(const char* path, cs_mask** out) {
  CS_REQUIRE(out && path, "null argument");
  return Guard([&] {
    *out = new cs_mask{cutsynth::LoadMaskPng(path)};
    return CS_OK;
  });
}

cs_status cs_mask_save_png(const cs_mask* mask, const char* path) {
  CS_REQUIRE(mask && path, "null argument");
  return Guard([&] {
    cutsynth::SaveMaskPng(mask->value, path);
    return CS_OK;
  });
}

void cs_mask_free(cs_mask* mask) { delete mask; }

cs_status cs_mask_size(const cs_mask* mask, int* width, int* height) {
  CS_REQUIRE(mask && width && height, "null argument");
  *width = mask->value.width();
  *height = mask->value.height();
  return CS_OK;
}

cs_status cs_mask_copy_bits(const cs_mask* mask, uint8_t* bits,
                            size_t capacity) {
  CS_REQUIRE(mask && bits, "null argument");
  const auto src = mask->value.bits();
  CS_REQUIRE(capacity >= src.size(), "buffer too small");
  std::memcpy(bits, src.data(), src.size());
  return CS_OK;
}

cs_status cs_mask_bounding_box(const cs_mask* mask, int box[4]) {
  CS_REQUIRE(mask && box, "null argument");
  return Guard([&] {
    const auto r = cutsynth::BoundingBox(mask->value);
    box[0] = r.x0;
    box[1] = r.y0;
    box[2] = r.x1;
    box[3] = r.y1;
    return CS_OK;
  });
}

cs_status cs_change_ratio(const cs_mask* augmented, const cs_mask* original,
                          double* out) {
  CS_REQUIRE(augmented && original && out, "null argument");
  return Guard([&] {
    *out = cutsynth::ChangeRatio(augmented->value, original->value);
    return CS_OK;
  });
}

cs_status cs_dice_coefficient(const double* prediction, size_t n,
                              const cs_mask* target, double eps, double* out) {
  CS_REQUIRE(prediction && target && out, "null argument");
  return Guard([&] {
    *out = cutsynth::DiceCoefficient({prediction, n}, target->value, eps);
    return CS_OK;
  });
}

// ---- images

cs_status cs_image_create(int width, int height, const uint8_t* rgb,
                          cs_image** out) {
  CS_REQUIRE(out && rgb, "null argument");
  return Guard([&] {
    std::vector<std::uint8_t> v(
        rgb, rgb + std::size_t(std::max(width, 0)) * std::max(height, 0) * 3);
    *out = new cs_image{cutsynth::RgbImage(width, height, std::move(v))};
    return CS_OK;
  });
}

cs_status cs_image_load_png(const char* path, cs_image** out) {
  CS_REQUIRE(out && path, "null argument");
  return Guard([&] {
    *out = new cs_image{cutsynth::LoadRgbPng(path)};
    return CS_OK;
  });
}

cs_status cs_image_save_png(const cs_image* image, const char* path) {
  CS_REQUIRE(image && path, "null argument");
  return Guard([&] {
    cutsynth::SaveRgbPng(image->value, path);
    return CS_OK;
  });
}

void cs_image_free(cs_image* image) { delete image; }

cs_status cs_image_size(const cs_image* image, int* width, int* height) {
  CS_REQUIRE(image && width && height, "null argument");
  *width = image->value.width();
  *height = image->value.height();
  return CS_OK;
}

cs_status cs_image_side_by_side(const cs_image* left, const cs_image* right,
                                cs_image** out) {
  CS_REQUIRE(left && right && out, "null argument");
  return Guard([&] {
    const auto& a = left->value;
    const auto& b = right->value;
    if (a.height() != b.height()) {
      throw cutsynth::Error(cutsynth::ErrorCode::kDimensionMismatch,
                            "panels must have equal heights");
    }
    cutsynth::RgbImage panel(a.width() + b.width(), a.height());
    for (int y = 0; y < a.height(); ++y) {
      for (int x = 0; x < a.width(); ++x) panel.set(x, y, a.at(x, y));
      for (int x = 0; x < b.width(); ++x) panel.set(a.width() + x, y, b.at(x, y));
    }
    *out = new cs_image{std::move(panel)};
    return CS_OK;
  });
}

cs_status cs_fill_background(const cs_image* image, const cs_mask* mask,
                             cs_image** out) {
  CS_REQUIRE(image && mask && out, "null argument");
  return Guard([&] {
    *out = new cs_image{cutsynth::FillBackground(image->value, mask->value)};
    return CS_OK;
  });
}

// ---- single augmentation

cs_status cs_augment_once(const cs_image* image, const cs_mask* mask,
                          const cs_image* background,
                          const cs_aug_params* params, uint64_t seed,
                          cs_image** out_image, cs_mask** out_mask,
                          double* out_c, int* rejected) {
  CS_REQUIRE(image && mask && params && params->strategy && out_image &&
                 out_mask && out_c && rejected,
             "null argument");
  return Guard([&] {
    *out_image = nullptr;
    *out_mask = nullptr;
    *rejected = 0;
    cutsynth::AugParams p;
    p.n_seeds = params->n_seeds;
    p.strategy = cutsynth::ParseStrategy(params->strategy);
    p.move = {params->move_lo, params->move_hi};
    p.noise = params->noise;
    p.anchor_id = params->anchor_id;
    p.Validate();
    std::optional<cutsynth::RgbImage> bg;
    if (background) bg = background->value;
    const auto prepared =
        cutsynth::PrepareSource("", image->value, mask->value, std::move(bg));
    cutsynth::RandomStream rng(seed);
    auto sample = cutsynth::AugmentOnce(prepared, p, rng);
    if (!sample) {
      *rejected = 1;
      return CS_OK;
    }
    *out_c = sample->c;
    *out_image = new cs_image{std::move(sample->image)};
    *out_mask = new cs_mask{std::move(sample->mask)};
    return CS_OK;
  });
}

// ---- builder

cs_status cs_builder_create(cs_builder** out) {
  CS_REQUIRE(out, "null argument");
  return Guard([&] {
    *out = new cs_builder{};
    return CS_OK;
  });
}

void cs_builder_free(cs_builder* builder) { delete builder; }

cs_status cs_builder_add_source(cs_builder* builder, const char* source_id,
                                const char* object_name, const char* image_path,
                                const char* mask_path,
                                const char* background_path) {
  CS_REQUIRE(builder && source_id && image_path && mask_path, "null argument");
  CS_REQUIRE(*source_id, "source id must be nonempty");
  for (const auto& s : builder->sources) {
    if (s.source_id == source_id) {
      return Fail(CS_ERR_INVALID_ARGUMENT,
                  std::string("duplicate source id ") + source_id);
    }
  }
  return Guard([&] {
    cutsynth::SourceInput in;
    in.source_id = source_id;
    in.object_name = object_name ? object_name : "";
    in.image_path = image_path;
    in.mask_path = mask_path;
    if (background_path && *background_path) in.background_path = background_path;
    builder->sources.push_back(std::move(in));
    return CS_OK;
  });
}

cs_status cs_builder_set_grid_json(cs_builder* builder, const char* json) {
  CS_REQUIRE(builder && json, "null argument");
  return Guard([&] {
    auto spec = cutsynth::GridSpecFromJson(nlohmann::json::parse(json));
    spec.Validate();
    builder->grid = std::move(spec);
    return CS_OK;
  });
}

cs_status cs_builder_set_seed(cs_builder* builder, uint64_t seed) {
  CS_REQUIRE(builder, "null argument");
  builder->options.global_seed = seed;
  return CS_OK;
}

cs_status cs_builder_set_workers(cs_builder* builder, int workers) {
  CS_REQUIRE(builder, "null argument");
  CS_REQUIRE(workers >= 1, "workers must be >= 1");
  builder->options.workers = workers;
  return CS_OK;
}

cs_status cs_builder_set_output_dir(cs_builder* builder, const char* dir) {
  CS_REQUIRE(builder, "null argument");
  if (dir && *dir) {
    builder->options.out_dir = std::filesystem::path(dir);
  } else {
    builder->options.out_dir.reset();
  }
  return CS_OK;
}

cs_status cs_builder_run(cs_builder* builder, cs_manifest** out) {
  CS_REQUIRE(builder && out, "null argument");
  return Guard([&] {
    *out = new cs_manifest{
        cutsynth::BuildDataset(builder->sources, builder->grid, builder->options)};
    return CS_OK;
  });
}

// ---- manifests

cs_status cs_manifest_load(const char* path, cs_manifest** out) {
  CS_REQUIRE(path && out, "null argument");
  return Guard([&] {
    *out = new cs_manifest{cutsynth::ReadManifest(std::filesystem::path(path))};
    return CS_OK;
  });
}

cs_status cs_manifest_save(const cs_manifest* manifest, const char* path) {
  CS_REQUIRE(manifest && path, "null argument");
  return Guard([&] {
    cutsynth::WriteManifest(manifest->value, std::filesystem::path(path));
    return CS_OK;
  });
}

void cs_manifest_free(cs_manifest* manifest) { delete manifest; }

size_t cs_manifest_record_count(const cs_manifest* manifest) {
  return manifest ? manifest->value.records.size() : 0;
}

cs_status cs_manifest_counts(const cs_manifest* manifest, size_t* accepted,
                             size_t* rejected) {
  CS_REQUIRE(manifest && accepted && rejected, "null argument");
  *accepted = manifest->value.metadata.accepted;
  *rejected = manifest->value.metadata.rejected;
  return CS_OK;
}

size_t cs_manifest_source_count(const cs_manifest* manifest) {
  return manifest ? manifest->value.metadata.sources.size() : 0;
}

const char* cs_manifest_source_id(const cs_manifest* manifest, size_t index) {
  if (!manifest || index >= manifest->value.metadata.sources.size()) return nullptr;
  return manifest->value.metadata.sources[index].source_id.c_str();
}

const char* cs_manifest_source_error(const cs_manifest* manifest, size_t index) {
  if (!manifest || index >= manifest->value.metadata.sources.size()) return nullptr;
  return manifest->value.metadata.sources[index].error.c_str();
}

cs_status cs_manifest_record_json(const cs_manifest* manifest, size_t index,
                                  char** out) {
  CS_REQUIRE(manifest && out, "null argument");
  CS_REQUIRE(index < manifest->value.records.size(), "record index out of range");
  return Guard([&] {
    *out = Duplicate(cutsynth::RecordToJson(manifest->value.records[index]).dump());
    return CS_OK;
  });
}

cs_status cs_manifest_assign_labels(cs_manifest* manifest, char** warnings) {
  CS_REQUIRE(manifest, "null argument");
  return Guard([&] {
    std::vector<std::string> notes;
    manifest->value = cutsynth::AssignLabels(std::move(manifest->value), &notes);
    if (warnings) {
      std::string joined;
      for (const auto& n : notes) joined += n + "\n";
      *warnings = Duplicate(joined);
    }
    return CS_OK;
  });
}

cs_status cs_manifest_set_target(cs_manifest* manifest, const char* target) {
  CS_REQUIRE(manifest && target, "null argument");
  const std::string t = target;
  if (t != "change_ratio" && t != "seed_points") {
    return Fail(CS_ERR_INVALID_ARGUMENT,
                "target must be change_ratio or seed_points, got " + t);
  }
  manifest->value.metadata.target = t;
  return CS_OK;
}

cs_status cs_manifest_split(cs_manifest* manifest, double train_fraction,
                            uint64_t seed) {
  CS_REQUIRE(manifest, "null argument");
  return Guard([&] {
    cutsynth::RandomStream rng(seed);
    auto split = cutsynth::SplitTrainTest(manifest->value, train_fraction, rng);
    split.metadata.split_seed = seed;
    manifest->value = std::move(split);
    return CS_OK;
  });
}

// ---- evaluation

cs_status cs_average_precision(const double* scores, const int* labels,
                               size_t n, int positive, double* out) {
  CS_REQUIRE(scores && labels && out, "null argument");
  CS_REQUIRE(positive == CS_LABEL_FINE || positive == CS_LABEL_COARSE,
             "positive must be CS_LABEL_FINE or CS_LABEL_COARSE");
  return Guard([&] {
    const auto l = ToLabels(labels, n);
    *out = cutsynth::AveragePrecision(
        {scores, n}, l,
        positive == CS_LABEL_FINE ? cutsynth::Coarseness::kFine
                                  : cutsynth::Coarseness::kCoarse);
    return CS_OK;
  });
}

cs_status cs_macro_map(const double* scores, const int* labels, size_t n,
                       double* out) {
  CS_REQUIRE(scores && labels && out, "null argument");
  return Guard([&] {
    const auto l = ToLabels(labels, n);
    cutsynth::ScoreTable table(n);
    for (size_t i = 0; i < n; ++i) {
      table[i].score = scores[i];
      table[i].label = l[i];
    }
    *out = cutsynth::MacroMap(table);
    return CS_OK;
  });
}

cs_status cs_aggregate_video(const double* frame_scores, size_t n,
                             double top_fraction, double* out) {
  CS_REQUIRE(out && (frame_scores || n == 0), "null argument");
  return Guard([&] {
    *out = cutsynth::AggregateVideo({frame_scores, n}, top_fraction);
    return CS_OK;
  });
}

cs_status cs_evaluate_file(const char* scores_path, const cs_manifest* manifest,
                           char** report_json) {
  CS_REQUIRE(scores_path && report_json, "null argument");
  return Guard([&] {
    const auto scores = cutsynth::ReadScoreFile(std::filesystem::path(scores_path));
    const auto table =
        cutsynth::JoinScores(scores, manifest ? &manifest->value : nullptr);
    const auto report = cutsynth::EvaluateBuckets(table);
    if (!report.all.map) {
      throw cutsynth::Error(cutsynth::ErrorCode::kMissingClass, report.all.error);
    }
    auto j = cutsynth::ReportToJson(report,
                                    cutsynth::RandomBaselineExpectation(table));
    j["producer"] = scores.producer;
    *report_json = Duplicate(j.dump(2));
    return CS_OK;
  });
}

cs_status cs_aggregate_video_file(const char* scores_path, double top_fraction,
                                  char** report_json) {
  CS_REQUIRE(scores_path && report_json, "null argument");
  return Guard([&] {
    const auto file = cutsynth::ReadScoreFile(std::filesystem::path(scores_path));
    nlohmann::json out = nlohmann::json::array();
    for (const auto& v : cutsynth::AggregateVideoFile(file, top_fraction)) {
      out.push_back({{"video_id", v.video_id}, {"frames", v.frames}, {"score", v.score}});
    }
    *report_json = Duplicate(out.dump(2));
    return CS_OK;
  });
}

}  // extern "C"

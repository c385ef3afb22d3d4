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

#ifndef CUTSYNTH_MANIFEST_IO_HPP_
#define CUTSYNTH_MANIFEST_IO_HPP_

#include <filesystem>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "dataset.hpp"

namespace cutsynth {

// JSON Lines manifest: line 1 is the metadata object, then one AugRecord per
// line in manifest order. Doubles are written in shortest round-trip form.
void WriteManifest(const Manifest& manifest, std::ostream& out);
void WriteManifest(const Manifest& manifest, const std::filesystem::path& path);
std::string ManifestToString(const Manifest& manifest);

Manifest ReadManifest(std::istream& in);
Manifest ReadManifest(const std::filesystem::path& path);

nlohmann::json GridSpecToJson(const GridSpec& spec);
// Missing keys keep their default values. "anchor" is either
// "random" or an integer id.
GridSpec GridSpecFromJson(const nlohmann::json& j);

nlohmann::json RecordToJson(const AugRecord& record);
AugRecord RecordFromJson(const nlohmann::json& j);

}  // namespace cutsynth

#endif  // CUTSYNTH_MANIFEST_IO_HPP_

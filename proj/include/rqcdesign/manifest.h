// Copyright 2026 The rqcdesign Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RQCDESIGN_MANIFEST_H
#define RQCDESIGN_MANIFEST_H

#include <chrono>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "rqcdesign/io.h"

namespace rqcdesign {

inline constexpr const char *kToolVersion = "0.1.0";

std::string sha256_hex(std::string_view data);

/// Provenance block embedded in every output document. Everything except the
/// "timestamps" object is a pure function of the inputs.
struct RunManifest {
    std::string command;
    Json config;
    std::optional<uint64_t> seed;
    std::map<std::string, std::string> input_digests;  // file name -> sha256
    std::chrono::system_clock::time_point started = std::chrono::system_clock::now();
};

/// Adds doc["manifest"], including the sha256 of the document body as serialized
/// before the manifest was attached.
Json attach_manifest(Json doc, const RunManifest &manifest);

/// Copy of a document without manifest timestamps, for reproducibility checks.
Json strip_timestamps(Json doc);

}  // namespace rqcdesign

#endif

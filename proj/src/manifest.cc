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

#include "rqcdesign/manifest.h"

#include <openssl/evp.h>

#include <cstdio>
#include <ctime>
#include <stdexcept>

namespace rqcdesign {

std::string sha256_hex(std::string_view data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("sha256 failed");
    }
    static const char *hex = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; i++) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 15];
    }
    return out;
}

namespace {

std::string iso8601(std::chrono::system_clock::time_point t) {
    std::time_t tt = std::chrono::system_clock::to_time_t(t);
    std::tm tm{};
    gmtime_r(&tt, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace

Json attach_manifest(Json doc, const RunManifest &m) {
    const std::string body = doc.dump();
    const auto finished = std::chrono::system_clock::now();
    Json inputs = Json::object();
    for (const auto &[name, digest] : m.input_digests) inputs[name] = digest;
    Json manifest{{"command", m.command},
                  {"tool_version", kToolVersion},
                  {"config", m.config},
                  {"seed", m.seed ? Json(*m.seed) : Json()},
                  {"inputs", std::move(inputs)},
                  {"output_sha256", sha256_hex(body)},
                  {"timestamps",
                   {{"started", iso8601(m.started)},
                    {"finished", iso8601(finished)},
                    {"elapsed_seconds", std::chrono::duration<double>(finished - m.started).count()}}}};
    doc["manifest"] = std::move(manifest);
    return doc;
}

Json strip_timestamps(Json doc) {
    if (doc.is_object() && doc.contains("manifest")) doc["manifest"].erase("timestamps");
    return doc;
}

}  // namespace rqcdesign

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

#include "rqcdesign/cli.h"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "rqcdesign/io.h"
#include "rqcdesign/manifest.h"

using namespace rqcdesign;

namespace {

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

Json doc(const CliRun &r) { return Json::parse(r.out); }

}  // namespace

TEST(cli, lattice_json) {
    CliRun r = run({"lattice", "--width", "5", "--height", "5", "--defects", "(2,2)"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    Json d = doc(r);
    EXPECT_EQ(d["num_qubits"], 24);
    EXPECT_EQ(d["num_bonds"], 36);
    EXPECT_EQ(d["manifest"]["command"], "lattice");
    EXPECT_EQ(d["manifest"]["tool_version"], kToolVersion);
}

TEST(cli, lattice_window_table) {
    CliRun r = run({"lattice", "--mode", "window", "--xsize", "12", "--ysize", "12", "--format", "table"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_NE(r.out.find("72"), std::string::npos);
}

TEST(cli, evaluate_baseline) {
    CliRun r = run({"evaluate", "--width", "5", "--height", "5", "--e1", "0", "--e2", "0", "--er", "0"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    Json d = doc(r);
    EXPECT_EQ(d["pattern"]["text"], "A=11111 C=00000 swap=0");
    EXPECT_EQ(d["n_c"], 25);
    EXPECT_EQ(d["F"], 1.0);
    EXPECT_EQ(d["Ns"], 3.0);
    EXPECT_EQ(d["manifest"]["config"]["depth"], 20);
}

TEST(cli, search_candidates_and_threads) {
    CliRun one = run({"search", "--width", "5", "--height", "5", "--threads", "1", "--topk", "5"});
    CliRun eight = run({"search", "--width", "5", "--height", "5", "--threads", "8", "--topk", "5"});
    ASSERT_EQ(one.code, kExitOk) << one.err;
    ASSERT_EQ(eight.code, kExitOk) << eight.err;
    Json a = doc(one);
    Json b = doc(eight);
    EXPECT_EQ(a["candidates"], 2048);
    a.erase("manifest");
    b.erase("manifest");
    EXPECT_EQ(a.dump(), b.dump());
}

TEST(cli, repeat_runs_identical) {
    std::vector<std::string> args{"search", "--width", "4", "--height", "4", "--topk", "3"};
    Json a = strip_timestamps(doc(run(args)));
    Json b = strip_timestamps(doc(run(args)));
    EXPECT_EQ(a.dump(), b.dump());
    EXPECT_TRUE(a["manifest"].contains("output_sha256"));
    EXPECT_FALSE(a["manifest"].contains("timestamps"));
}

TEST(cli, output_digest) {
    Json d = doc(run({"lattice", "--width", "3", "--height", "3"}));
    std::string digest = d["manifest"]["output_sha256"];
    d.erase("manifest");
    EXPECT_EQ(digest, sha256_hex(d.dump()));
}

TEST(cli, request_file) {
    auto path = std::filesystem::temp_directory_path() / "rqcdesign_cli_request.json";
    {
        std::ofstream f(path);
        f << R"({"lattice": {"mode": "grid", "width": 4, "height": 4}, "depth": 8, "top_k": 2})";
    }
    CliRun r = run({"search", "--request", path.string()});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    Json d = doc(r);
    EXPECT_EQ(d["depth"], 8);
    EXPECT_EQ(d["top"].size(), 2u);
    EXPECT_FALSE(doc(r)["manifest"]["inputs"].empty());
    std::filesystem::remove(path);
}

TEST(cli, exit_codes) {
    EXPECT_EQ(run({"lattice", "--width", "0"}).code, kExitValidation);
    EXPECT_EQ(run({"evaluate", "--width", "5", "--height", "5", "--pattern", "A=11 C=00"}).code, kExitValidation);
    EXPECT_EQ(run({"evaluate", "--width", "5", "--height", "5", "--depth", "3"}).code, kExitValidation);
    EXPECT_EQ(run({"evaluate", "--width", "1", "--height", "1"}).code, kExitValidation);
    EXPECT_EQ(run({"search", "--width", "8", "--height", "8", "--cap", "10"}).code, kExitCap);
    EXPECT_EQ(run({"entropy", "--width", "5", "--height", "5"}).code, kExitCap);
    EXPECT_EQ(run({"bogus"}).code, kExitValidation);
    EXPECT_EQ(run({"--help"}).code, kExitOk);
    CliRun r = run({"evaluate", "--e1", "2"});
    EXPECT_EQ(r.code, kExitValidation);
    EXPECT_FALSE(r.err.empty());
}

TEST(cli, entropy_small) {
    CliRun r = run({"entropy", "--width", "2", "--height", "3", "--depth", "8", "--seeds", "2"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    Json d = doc(r);
    ASSERT_EQ(d["circuits"].size(), 1u);
    EXPECT_EQ(d["circuits"][0]["rows"].size(), 9u);
    EXPECT_EQ(d["manifest"]["seed"], 1);
}

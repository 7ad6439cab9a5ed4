// Copyright 2026 The HDR-FUNQUE Authors. All Rights Reserved.
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

#include "cli.h"

#include <algorithm>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "funque/csv.h"
#include "funque/frameio.h"
#include "gtest/gtest.h"
#include "json.hpp"
#include "test_util.h"

namespace funque {
namespace {

namespace fs = std::filesystem;
using testing_util::ReadBytes;
using testing_util::ScratchDir;
using testing_util::TexturedPlane;
using testing_util::WriteBytes;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun Cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = RunCli(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> Lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

fs::path StaticClip(const fs::path& dir) {
  VideoFormat f;
  f.width = f.height = 64;
  f.bit_depth = 10;
  f.fps = {24, 1};
  PlanarFrame frame;
  frame.width = frame.height = 64;
  frame.bit_depth = 10;
  frame.y = TexturedPlane(64, 64, 1);
  frame.cb = TexturedPlane(32, 32, 2);
  frame.cr = TexturedPlane(32, 32, 3);
  const fs::path path = dir / "static.y4m";
  Y4mWriter w(path, f);
  for (int i = 0; i < 3; ++i) w.Write(frame);
  return path;
}

fs::path SmallSynth(const fs::path& dir, int contents = 10, int levels = 5) {
  const CliRun r = Cli({"synth", "--out-dir", (dir / "data").string(), "--contents",
                     std::to_string(contents), "--levels", std::to_string(levels),
                     "--frames", "2", "--width", "64", "--height", "64"});
  EXPECT_EQ(r.code, 0) << r.err;
  return dir / "data" / "manifest.csv";
}

TEST(CliScore, IdenticalStaticClip) {
  const fs::path clip = StaticClip(ScratchDir());
  const CliRun r = Cli({"score", "--ref", clip.string(), "--test", clip.string(),
                     "--model", "Y-FUNQUE+"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto lines = Lines(r.out);
  ASSERT_EQ(lines.size(), 4u);
  const auto frame = nlohmann::json::parse(lines[1]);
  EXPECT_EQ(frame.at("frame"), 1);
  const auto summary = nlohmann::json::parse(lines.back()).at("summary");
  EXPECT_EQ(summary.at("frames"), 3);
  EXPECT_EQ(summary.at("mean").at("Y-MS-ESSIM").get<double>(), 1.0);
  EXPECT_EQ(summary.at("mean").at("Y-DLM-S").get<double>(), 1.0);
  EXPECT_EQ(summary.at("mean").at("Y-MAD-Ref").get<double>(), 0.0);
}

TEST(CliScore, AugmentedModelHasSeventeenFeatures) {
  const fs::path dir = ScratchDir();
  SmallSynth(dir, 1, 2);
  const CliRun r = Cli({"score", "--ref", (dir / "data/c0_ref.y4m").string(), "--test",
                     (dir / "data/c0_d1.y4m").string(), "--model",
                     "3C-FUNQUE+HDRMAX2", "--out", (dir / "s.jsonl").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  const auto lines = Lines(ReadBytes(dir / "s.jsonl"));
  ASSERT_EQ(lines.size(), 3u);
  EXPECT_EQ(nlohmann::json::parse(lines[0]).at("features").size(), 17u);
}

TEST(CliScore, MissingInputExitsTwoWithoutOutput) {
  const fs::path dir = ScratchDir();
  const CliRun r = Cli({"score", "--ref", (dir / "nope.y4m").string(), "--test",
                     (dir / "nope.y4m").string(), "--out", (dir / "o.jsonl").string()});
  EXPECT_EQ(r.code, kExitInputError);
  EXPECT_NE(r.err.find("error: kind="), std::string::npos);
  EXPECT_FALSE(fs::exists(dir / "o.jsonl"));
}

TEST(CliScore, UnknownModelExitsTwo) {
  const fs::path clip = StaticClip(ScratchDir());
  EXPECT_EQ(Cli({"score", "--ref", clip.string(), "--test", clip.string(),
                 "--model", "NOT-A-MODEL"}).code,
            kExitInputError);
}

TEST(CliScore, UsageErrorExitsTwo) {
  EXPECT_EQ(Cli({"score"}).code, kExitInputError);
  EXPECT_EQ(Cli({"frobnicate"}).code, kExitInputError);
}

TEST(CliExtract, FullRunSkipThenResume) {
  const fs::path dir = ScratchDir();
  const fs::path manifest = SmallSynth(dir);
  const fs::path feats = dir / "f.csv";
  const std::vector<std::string> args = {"extract", "--manifest", manifest.string(),
                                         "--model", "Y-FUNQUE+", "--out",
                                         feats.string()};
  CliRun r = Cli(args);
  ASSERT_EQ(r.code, 0) << r.err;
  const CsvTable t = ReadCsv(feats);
  EXPECT_EQ(t.rows.size(), 50u);
  EXPECT_EQ(t.header, (std::vector<std::string>{"video_id", "Y-MS-ESSIM",
                                                "Y-MAD-Ref", "Y-DLM-S"}));
  const std::string full = ReadBytes(feats);

  r = Cli(args);
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.err.find(" done "), std::string::npos);
  EXPECT_EQ(ReadBytes(feats), full);

  // Interrupted run: keep 20 complete rows plus half of the next one.
  const auto lines = Lines(full);
  std::string partial;
  for (int i = 0; i <= 20; ++i) partial += lines[i] + "\n";
  partial += lines[21].substr(0, lines[21].size() / 2);
  WriteBytes(feats, partial);
  r = Cli(args);
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(Lines(r.err).size(), 20u + 30u + 1u);
  EXPECT_EQ(ReadBytes(feats), full);
}

TEST(CliExtract, BrokenVideoIsReportedNotFatal) {
  const fs::path dir = ScratchDir();
  const fs::path manifest = SmallSynth(dir, 2, 2);
  WriteBytes(dir / "data/c1_d1.y4m", "YUV4MPEG2 W64 H64 C420p10\nFRAME\nxx");
  const CliRun r = Cli({"extract", "--manifest", manifest.string(), "--model",
                     "Y-FUNQUE+", "--out", (dir / "f.csv").string()});
  EXPECT_EQ(r.code, kExitInputError);
  EXPECT_NE(r.err.find("video_id=c1_d1"), std::string::npos);
  EXPECT_EQ(ReadCsv(dir / "f.csv").rows.size(), 3u);
  EXPECT_EQ(ReadCsv(dir / "f.csv.errors.csv").rows.size(), 1u);
}

TEST(CliEvaluate, DeterministicAcrossRuns) {
  const fs::path dir = ScratchDir();
  const fs::path manifest = SmallSynth(dir);
  ASSERT_EQ(Cli({"extract", "--manifest", manifest.string(), "--out",
                 (dir / "f.csv").string()}).code,
            0);
  auto evaluate = [&](const std::string& name, const std::string& threads) {
    const CliRun r = Cli({"evaluate", "--manifest", manifest.string(), "--features",
                       (dir / "f.csv").string(), "--splits", "100", "--seed", "7",
                       "--threads", threads, "--out", (dir / name).string()});
    EXPECT_EQ(r.code, 0) << r.err;
    return ReadBytes(dir / name);
  };
  const std::string a = evaluate("a.json", "1");
  EXPECT_EQ(a, evaluate("b.json", "1"));
  EXPECT_EQ(a, evaluate("c.json", "3"));
  const auto report = nlohmann::json::parse(a);
  EXPECT_EQ(report.at("splits").size(), 100u);
  EXPECT_EQ(report.at("seed"), 7);
}

TEST(CliEvaluate, MissingMosColumnIsNamed) {
  const fs::path dir = ScratchDir();
  WriteBytes(dir / "m.csv", "video_id,content_id,mos_dark\na,c,1\n");
  const CliRun r = Cli({"evaluate", "--manifest", (dir / "m.csv").string()});
  EXPECT_EQ(r.code, kExitInputError);
  EXPECT_NE(r.err.find("mos_bright"), std::string::npos);
}

TEST(CliTrain, WritesLoadableModelUsedByScore) {
  const fs::path dir = ScratchDir();
  const fs::path manifest = SmallSynth(dir, 4, 3);
  ASSERT_EQ(Cli({"extract", "--manifest", manifest.string(), "--out",
                 (dir / "f.csv").string()}).code,
            0);
  CliRun r = Cli({"train", "--manifest", manifest.string(), "--features",
               (dir / "f.csv").string(), "--lambda", "0.1", "--out",
               (dir / "m.json").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto model = nlohmann::json::parse(ReadBytes(dir / "m.json"));
  EXPECT_EQ(model.at("version"), 1);
  EXPECT_EQ(model.at("lambda"), 0.1);
  r = Cli({"score", "--ref", (dir / "data/c0_ref.y4m").string(), "--test",
           (dir / "data/c0_d2.y4m").string(), "--model", (dir / "m.json").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto summary = nlohmann::json::parse(Lines(r.out).back()).at("summary");
  EXPECT_TRUE(summary.contains("predicted_mos"));
}

TEST(CliPlot, CsvAndSvg) {
  const fs::path dir = ScratchDir();
  const CliRun r = Cli({"plot-nonlinearities", "--out-dir", dir.string(), "--svg"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto lines = Lines(ReadBytes(dir / "nonlinearities.csv"));
  EXPECT_EQ(lines[0], "x,hdrmax1,hdrmax2_pos,hdrmax2_neg");
  EXPECT_NE(std::find(lines.begin(), lines.end(), "0,0,1,1"), lines.end());
  EXPECT_NE(ReadBytes(dir / "nonlinearities.svg").find("<svg"), std::string::npos);
}

TEST(CliPlot, UnwritableDirectory) {
  const fs::path dir = ScratchDir();
  WriteBytes(dir / "file", "x");
  EXPECT_EQ(Cli({"plot-nonlinearities", "--out-dir", (dir / "file/sub").string()}).code,
            kExitInputError);
}

TEST(CliSynth, Deterministic) {
  const fs::path root = ScratchDir();
  const fs::path a = root / "a";
  const fs::path b = root / "b";
  for (const fs::path& d : {a, b}) {
    ASSERT_EQ(Cli({"synth", "--out-dir", d.string(), "--contents", "2", "--levels",
                   "2", "--frames", "1", "--width", "64", "--height", "64",
                   "--seed", "5"}).code,
              0);
  }
  for (const auto& entry : fs::directory_iterator(a)) {
    EXPECT_EQ(ReadBytes(entry.path()), ReadBytes(b / entry.path().filename()))
        << entry.path();
  }
}

}  // namespace
}  // namespace funque

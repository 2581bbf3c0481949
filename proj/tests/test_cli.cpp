/*
 * Copyright 2026 The qpm Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "qpm/cli.hpp"

#include <gtest/gtest.h>

#include <sstream>

using qpm::Json;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = qpm::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string sample(const std::string& name) { return std::string(QPM_SAMPLES_DIR) + "/" + name + ".json"; }

}  // namespace

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"validate", sample("example27")}).code, 0);
  EXPECT_EQ(run({"validate", sample("non-t0")}).code, 0);
  EXPECT_EQ(run({"validate", sample("invalid-triangle")}).code, 1);
  EXPECT_EQ(run({"validate", sample("invalid-diagonal")}).code, 1);
  EXPECT_EQ(run({"validate", sample("invalid-float")}).code, 2);
  EXPECT_EQ(run({"validate", sample("invalid-empty-image")}).code, 2);
  EXPECT_EQ(run({"validate", sample("does-not-exist")}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, OptionConflicts) {
  const auto e36 = sample("example36");
  EXPECT_EQ(run({"solve", "startpoint", e36, "--strict-cor38"}).code, 2);
  EXPECT_EQ(run({"solve", "startpoint", e36, "--mode", "forward"}).code, 2);
  EXPECT_EQ(run({"solve", "picard", sample("picard"), "--c", "1/2"}).code, 2);
  EXPECT_EQ(run({"solve", "startpoint", e36, "--c", "1"}).code, 2);
  EXPECT_EQ(run({"solve", "startpoint", e36, "--c", "0.5"}).code, 2);
  EXPECT_EQ(run({"solve", "sideways", e36}).code, 2);
  EXPECT_EQ(run({"solve", "startpoint", e36, "--seed-point", "7"}).code, 2);
  EXPECT_EQ(run({"--output", "yaml", "validate", e36}).code, 2);
  EXPECT_EQ(run({"lab", "run", "theorem99"}).code, 2);
  EXPECT_EQ(run({"lab", "run", "lemma22", "--size", "4:2"}).code, 2);
  EXPECT_EQ(run({"corpus", "export", "example28"}).code, 2);
}

TEST(Cli, ValidateReportsTriangleWitness) {
  const auto r = run({"--output", "json", "validate", sample("invalid-triangle")});
  EXPECT_EQ(r.code, 1);
  const auto j = Json::parse(r.out);
  ASSERT_EQ(j["violations"].size(), 1u);
  EXPECT_EQ(j["violations"][0]["kind"], "triangle");
  EXPECT_EQ(j["violations"][0]["witnesses"], Json::array({"a", "b", "c"}));
  EXPECT_EQ(j["violations"][0]["lhs"], "3");
  EXPECT_EQ(j["violations"][0]["rhs"], "2");
  const auto text = run({"validate", sample("invalid-triangle")});
  EXPECT_NE(text.out.find("{a, b, c}"), std::string::npos);
  EXPECT_NE(text.err.find("error:"), std::string::npos);
}

TEST(Cli, AnalyzeComplementMap) {
  const auto r = run({"--output", "json", "analyze", sample("example27")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = Json::parse(r.out);
  EXPECT_EQ(j["startpoints"], Json::array({"0"}));
  EXPECT_EQ(j["endpoints"], Json::array());
  EXPECT_EQ(j["approx"]["start"]["value"], "0");
  EXPECT_EQ(j["approx"]["end"]["value"], "1");
  EXPECT_EQ(j["approx"]["end"]["argmin"], "2");
  EXPECT_EQ(j["approx"]["mix"]["value"], "2");
  EXPECT_EQ(j["classification"][1]["start_value"], "1");
  EXPECT_EQ(j["levels"].size(), 8u);

  const auto text = run({"analyze", sample("example27")});
  EXPECT_EQ(text.code, 0);
  EXPECT_NE(text.out.find("startpoints   {0}"), std::string::npos);
  EXPECT_NE(text.out.find("end     1      2"), std::string::npos);
  EXPECT_EQ(run({"analyze", sample("example27"), "--n", "3", "--output", "json"}).code, 0);
}

TEST(Cli, HausdorffPointToWholeSpace) {
  const auto r = run({"--output", "json", "hausdorff", sample("remark21"), "1", "0,1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = Json::parse(r.out);
  EXPECT_EQ(j["H(A,B)"]["value"], "1");
  EXPECT_EQ(j["H(B,A)"]["value"], "0");
  EXPECT_EQ(run({"hausdorff", sample("remark21"), "1", "9"}).code, 2);
  EXPECT_EQ(run({"hausdorff", sample("remark21"), "1", ""}).code, 2);
}

TEST(Cli, SolveStartpointOnReciprocals) {
  const auto r = run({"--output", "json", "solve", "startpoint", sample("example36")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = Json::parse(r.out);
  EXPECT_EQ(j["c"], "1/2");
  EXPECT_EQ(j["audit"]["infeasible"], Json::array({"1/3"}));
  EXPECT_TRUE(j["audit"]["only_at_zero_value"].get<bool>());
  ASSERT_EQ(j["runs"].size(), 3u);
  for (const auto& run : j["runs"]) EXPECT_EQ(run["terminal"], "1/3");

  const auto text = run({"solve", "startpoint", sample("example36"), "--seed-point", "1"});
  EXPECT_NE(text.out.find("seed 1: startpoint-found 1/3 after 1 step(s)"), std::string::npos) << text.out;
}

TEST(Cli, SolveEndpointStopsWithoutFeasibleSuccessor) {
  const auto r = run({"--output", "json", "solve", "endpoint", sample("example27"), "--c", "1/2", "--seed-point", "0"});
  EXPECT_EQ(r.code, 1);
  const auto j = Json::parse(r.out);
  EXPECT_EQ(j["runs"][0]["status"], "hypothesis-violated");
  EXPECT_EQ(j["runs"][0]["witness"], "2");
}

TEST(Cli, SolvePicardAndFixed) {
  const auto p = run({"--output", "json", "solve", "picard", sample("picard")});
  ASSERT_EQ(p.code, 0) << p.err;
  EXPECT_EQ(Json::parse(p.out)["runs"][0]["status"], "fixed-point-found");
  EXPECT_EQ(run({"solve", "picard", sample("picard"), "--mode", "sideways"}).code, 2);
  EXPECT_EQ(run({"solve", "picard", sample("example27")}).code, 2);
  const auto f = run({"--output", "json", "solve", "fixed", sample("remark21"), "--c", "1/2", "--strict-cor38"});
  EXPECT_TRUE(f.code == 0 || f.code == 1) << f.err;
  EXPECT_TRUE(Json::parse(f.out)["strict_cor38"].get<bool>());
}

TEST(Cli, LabRunIsReproducible) {
  const auto a = run({"--output", "json", "lab", "run", "theorem35", "--trials", "15", "--seed", "4", "--size", "2:4"});
  const auto b = run({"--output", "json", "lab", "run", "theorem35", "--trials", "15", "--seed", "4", "--size", "2:4"});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  const auto j = Json::parse(a.out);
  EXPECT_EQ(j["passes"], 15);
  EXPECT_EQ(j["size"]["min"], 2);
  EXPECT_FALSE(j.contains("wall_time_ms"));
  const auto timed = run({"--output", "json", "lab", "run", "lemma22", "--trials", "2", "--timing"});
  EXPECT_TRUE(Json::parse(timed.out).contains("wall_time_ms"));
}

TEST(Cli, CorpusExportMatchesSamples) {
  const auto r = run({"corpus", "export", "example27"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out, qpm::read_file(sample("example27")));
  const auto fam = run({"corpus", "export", "example36-family", "--n", "6"});
  EXPECT_EQ(fam.out, qpm::read_file(sample("example36-family-6")));
}

TEST(Cli, TextAndJsonCarryTheSameValues) {
  for (const char* name : {"example27", "example36", "remark21"}) {
    const auto j = Json::parse(run({"--output", "json", "analyze", sample(name)}).out);
    const auto text = run({"analyze", sample(name)}).out;
    for (const auto& row : j["classification"]) {
      for (const char* key : {"start_value", "end_value", "mix_value"})
        EXPECT_NE(text.find(row[key].get<std::string>()), std::string::npos) << name << " " << key;
    }
    for (const char* kind : {"start", "end", "mix"})
      EXPECT_NE(text.find(j["approx"][kind]["value"].get<std::string>()), std::string::npos) << name;
  }
}

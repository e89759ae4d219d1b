#include <gtest/gtest.h>

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "cli.hpp"
#include "khplumb/diagram.hpp"
#include "support.hpp"

using testing_support::corpus_path;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = khplumb::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& text) {
  std::string path = testing::TempDir() + name;
  std::ofstream(path) << text;
  return path;
}

}  // namespace

TEST(Cli, JonesGolden) {
  Result r = run({"jones", corpus_path("trefoil_rh.pd")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "q + q^3 + q^5 - q^9\n");
  EXPECT_EQ(run({"jones", corpus_path("trefoil_lh.pd")}).out, "-q^-9 + q^-5 + q^-3 + q^-1\n");
  nlohmann::json j = nlohmann::json::parse(run({"jones", corpus_path("trefoil_rh.pd"), "--format", "json"}).out);
  EXPECT_EQ(j["jones"], "q + q^3 + q^5 - q^9");
}

TEST(Cli, HomologyGolden) {
  EXPECT_EQ(run({"homology", corpus_path("unknot.pd"), "--ring", "f2"}).out, "ring f2\n(0,-1) rank 1\n(0,1) rank 1\n");
  EXPECT_EQ(run({"homology", corpus_path("two_loops.pd")}).out,
            "ring f2\n(0,-2) rank 1\n(0,0) rank 2\n(0,2) rank 1\n");
  Result z = run({"homology", corpus_path("trefoil_rh.pd"), "--ring", "z"});
  EXPECT_NE(z.out.find("(3,7) rank 0 Z/2"), std::string::npos);
}

TEST(Cli, OrientFlag) {
  EXPECT_EQ(run({"jones", corpus_path("hopf.pd")}).out, "1 + q^2 + q^4 + q^6\n");
  EXPECT_EQ(run({"jones", corpus_path("hopf.pd"), "--orient", "1", "-"}).out, "q^-6 + q^-4 + q^-2 + 1\n");
  EXPECT_EQ(run({"jones", corpus_path("hopf.pd"), "--orient", "3", "-"}).code, 2);
}

TEST(Cli, DetectCertifiesFig2) {
  Result r = run({"detect", corpus_path("fig2.pd"), "--state", "AAABBBAA", "--basepoint", "c1", "--ring", "z",
                  "--format", "json"});
  EXPECT_EQ(r.code, 0) << r.err;
  nlohmann::json j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["verdict"], "certified");
  EXPECT_EQ(j["ring"], "z");
  EXPECT_TRUE(j.contains("X-"));
  EXPECT_TRUE(j.contains("X+"));
  Result ind = run({"detect", corpus_path("fig2.pd"), "--state", "AAABBBAA", "--basepoint", "c1", "--inductive"});
  EXPECT_EQ(ind.code, 0);
  EXPECT_NE(ind.out.find("inductive"), std::string::npos);
}

TEST(Cli, DetectReportsGateFailure) {
  Result r = run({"detect", corpus_path("yfamily.pd"), "--state", "BBBAAAAA", "--basepoint", "c1", "--ring", "z"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("hypothesis-failed"), std::string::npos);
  EXPECT_EQ(run({"detect", corpus_path("yfamily.pd"), "--state", "BBBAAAAA", "--basepoint", "c1"}).code, 0);
}

TEST(Cli, InputErrors) {
  Result missing = run({"jones", "/nonexistent/x.pd"});
  EXPECT_EQ(missing.code, 2);
  EXPECT_NE(missing.err.find("cannot read input"), std::string::npos);
  Result bad = run({"jones", temp_file("bad.pd", "X 1 2 3\n")});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("malformed PD"), std::string::npos);
  Result cap = run({"jones", corpus_path("fig2.pd"), "--max-crossings", "3"});
  EXPECT_EQ(cap.code, 2);
  EXPECT_NE(cap.err.find("cap exceeded"), std::string::npos);
  EXPECT_EQ(run({"detect", corpus_path("fig2.pd"), "--state", "AB", "--basepoint", "c1"}).code, 2);
  EXPECT_EQ(run({"detect", corpus_path("fig2.pd"), "--state", "AAABBBAA", "--basepoint", "x"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"homology", corpus_path("unknot.pd"), "--ring", "r"}).code, 2);
}

TEST(Cli, VerifyCorpus) {
  Result r = run({"verify", std::string(KHPLUMB_CORPUS_DIR)});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("verify: pass"), std::string::npos);
}

TEST(Cli, AnalyzeAndStates) {
  Result a = run({"analyze", corpus_path("trefoil_rh.pd"), "--state", "AAA"});
  EXPECT_EQ(a.code, 0);
  EXPECT_NE(a.out.find("A-zone {c1 c2}"), std::string::npos);
  Result dot = run({"analyze", corpus_path("fig2.pd"), "--state", "AAABBBAA", "--format", "dot"});
  EXPECT_EQ(dot.out.rfind("graph", 0), 0U);
  EXPECT_NE(dot.out.find("dashed"), std::string::npos);
  Result s = run({"states", corpus_path("hopf.pd")});
  EXPECT_NE(s.out.find("AA circles 2 sigma 2 i 0"), std::string::npos);
  Result e = run({"states", corpus_path("hopf.pd"), "--enhanced", "--format", "json"});
  EXPECT_NO_THROW((void)nlohmann::json::parse(e.out));
}

TEST(Cli, PlumbBuildsADiagram) {
  Result r = run({"plumb", corpus_path("trefoil_rh.pd") + ":AAA:c1", corpus_path("hopf.pd") + ":AA:c1"});
  ASSERT_EQ(r.code, 0) << r.err;
  khplumb::LinkDiagram d = khplumb::parse_pd(r.out);
  EXPECT_EQ(d.crossing_count(), 5);
  Result j = run({"plumb", corpus_path("trefoil_rh.pd") + ":AAA:c1", corpus_path("hopf.pd") + ":AA:c1", "--format",
                  "json"});
  EXPECT_NO_THROW((void)nlohmann::json::parse(j.out));
  EXPECT_EQ(run({"plumb", corpus_path("trefoil_rh.pd") + ":AAA"}).code, 2);
}

TEST(Cli, OutputIsDeterministic) {
  for (std::vector<std::string> args :
       {std::vector<std::string>{"homology", corpus_path("fig2.pd"), "--ring", "z", "--format", "json"},
        std::vector<std::string>{"detect", corpus_path("xfamily.pd"), "--state", "BBBAAAAA", "--basepoint", "c1",
                                 "--format", "json"},
        std::vector<std::string>{"analyze", corpus_path("fig2.pd")}}) {
    Result a = run(args), b = run(args);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.code, b.code);
  }
}

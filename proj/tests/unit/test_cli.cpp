#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "stabkit_cli.hpp"

using stabkit::io::Json;

namespace {

struct Outcome {
  int code = -1;
  std::string out;
  std::string err;
};

Outcome run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  Outcome o;
  o.code = stabkit::cli::run(args, out, err);
  o.out = out.str();
  o.err = err.str();
  return o;
}

std::string sample(const std::string& name) { return std::string(STABKIT_SAMPLES_DIR) + "/" + name; }

/// Writes `text` to a fresh file under the test temp dir.
std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("stabkit_cli_" + name);
  std::ofstream(path) << text;
  return path.string();
}

class ScopedEnv {
 public:
  ScopedEnv(const char* name, const char* value) : name_(name) { setenv(name, value, 1); }
  ~ScopedEnv() { unsetenv(name_); }

 private:
  const char* name_;
};

}  // namespace

TEST(Cli, P1xP1ExampleHoldsWithZeroDiscriminants) {
  const auto o = run({"cascade", "--example", "p1xp1-line-bundles"});
  ASSERT_EQ(o.code, 0) << o.err;
  const Json report = Json::parse(o.out);
  EXPECT_EQ(report["status"], "holds");
  const auto& results = report["documents"][0]["results"];
  ASSERT_EQ(results.size(), 25U);
  for (const auto& r : results) EXPECT_EQ(r["D"], Json::array({"0"}));
}

TEST(Cli, CurveExampleWithNegativeDiscriminantExitsTwo) {
  const auto o = run({"example", "curve-x-elliptic", "--rank", "2", "--n1", "1", "--n2", "1", "--v", "1", "--delta-sq", "0"});
  ASSERT_EQ(o.code, 2) << o.err;
  const Json report = Json::parse(o.out);
  EXPECT_EQ(report["status"], "violated");
  const auto& r = report["documents"][0]["results"][0];
  EXPECT_EQ(r["D"], Json::array({"-1"}));
  EXPECT_EQ(r["quadratic"]["status"], "violated");
}

TEST(Cli, CurveExampleDefaultsHold) {
  const auto o = run({"example", "curve-x-elliptic"});
  EXPECT_EQ(o.code, 0) << o.out;
}

TEST(Cli, BinomialIdentitiesExampleHolds) {
  const auto o = run({"example", "binomial-identities"});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_EQ(Json::parse(o.out)["documents"].size(), 9U);
}

TEST(Cli, BrokenRingExitsOneAndListsTheTriple) {
  const auto o = run({"validate-ring", sample("broken_ring.json")});
  ASSERT_EQ(o.code, 1);
  const Json report = Json::parse(o.out);
  bool found = false;
  for (const auto& v : report["documents"][0]["violations"])
    found = found || (v["kind"] == "associativity" && v["classes"] == Json::array({"h1", "h1", "h2"}));
  EXPECT_TRUE(found);
}

TEST(Cli, BrokenRingIsRejectedByOtherCommands) {
  const auto o = run({"cascade", sample("broken_ring.json")});
  EXPECT_EQ(o.code, 1);
  EXPECT_NE(o.err.find("associativity"), std::string::npos) << o.err;
}

TEST(Cli, SamplesHaveDocumentedExitCodes) {
  EXPECT_EQ(run({"cascade", sample("p1xp1_sheaves.json")}).code, 0);
  EXPECT_EQ(run({"cascade", sample("curve_x_elliptic.json")}).code, 2);
  EXPECT_EQ(run({"cascade", sample("linear_fixtures.json")}).code, 2);
  EXPECT_EQ(run({"coeffs", sample("custom_ring.json")}).code, 0);
  EXPECT_EQ(run({"hilbert", sample("custom_ring.json"), "--orientation", "primed"}).code, 0);
  EXPECT_EQ(run({"validate-ring", sample("custom_ring.json")}).code, 0);
  EXPECT_EQ(run({"hn", sample("posets.json")}).code, 0);
  EXPECT_EQ(run({"abel-check", sample("factors.json")}).code, 0);
  EXPECT_EQ(run({"abel-check", sample("factors_sandwich_fails.json")}).code, 0);
  EXPECT_EQ(run({"slope-equiv", sample("slope_equiv.json")}).code, 0);
}

TEST(Cli, LinearFixturesReportTheRightVerdicts) {
  const Json report = Json::parse(run({"cascade", sample("linear_fixtures.json")}).out);
  const auto& docs = report["documents"];
  EXPECT_EQ(docs[0]["results"][0]["linear"]["status"], "holds");
  EXPECT_EQ(docs[1]["results"][0]["linear"]["status"], "violated");
  EXPECT_EQ(docs[1]["results"][0]["linear"]["offending"]["quantity"], "a_1");
  EXPECT_EQ(docs[2]["results"][0]["linear"]["status"], "holds");
  EXPECT_EQ(docs[2]["results"][1]["linear"]["status"], "violated");
  EXPECT_EQ(docs[2]["results"][1]["linear"]["offending"]["requirement"], "< 0");
}

TEST(Cli, ReportsAreByteDeterministic) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"example", "p1xp1-line-bundles"},
           {"example", "curve-x-elliptic", "--v", "1"},
           {"example", "binomial-identities", "--text"},
           {"hn", sample("posets.json"), "--float"}}) {
    const auto a = run(args);
    const auto b = run(args);
    EXPECT_EQ(a.code, b.code);
    EXPECT_EQ(a.out, b.out);
  }
}

TEST(Cli, FloatFlagAddsApproximations) {
  const Json report = Json::parse(run({"abel-check", sample("factors.json"), "--float"}).out);
  const auto& t = report["documents"][0]["results"][0]["report"]["t"];
  EXPECT_EQ(t["exact"], "1/3");
  EXPECT_NEAR(t["approx"].get<double>(), 1.0 / 3, 1e-12);
}

TEST(Cli, TextRenderingAlignsKeys) {
  const auto o = run({"example", "p1xp1-line-bundles", "--text"});
  ASSERT_EQ(o.code, 0);
  EXPECT_EQ(o.out.rfind("command   : cascade\nsource    : example:p1xp1-line-bundles\n", 0), 0U) << o.out.substr(0, 200);
}

TEST(Cli, MaxPosetSizeIsEnforced) {
  {
    const ScopedEnv env("STABKIT_MAX_POSET", "3");
    const auto o = run({"hn", sample("posets.json")});
    EXPECT_EQ(o.code, 1);
    EXPECT_NE(o.err.find("STABKIT_MAX_POSET"), std::string::npos) << o.err;
  }
  {
    const ScopedEnv env("STABKIT_MAX_POSET", "4");
    EXPECT_EQ(run({"hn", sample("posets.json")}).code, 0);
  }
  {
    const ScopedEnv env("STABKIT_MAX_POSET", "many");
    EXPECT_EQ(run({"hn", sample("posets.json")}).code, 1);
  }
}

TEST(Cli, DefaultMaxPosetSizeIsSixteen) {
  Json elements = Json::array();
  for (int i = 0; i < 17; ++i) elements.push_back(Json{{"id", "e" + std::to_string(i)}, {"re", "0"}, {"im", "1"}});
  const std::string big = write_temp("big_poset.json", Json{{"posets", Json::array({Json{{"elements", elements}}})}}.dump());
  EXPECT_EQ(run({"hn", big}).code, 1);
  elements.erase(elements.size() - 1);
  const std::string ok = write_temp("ok_poset.json", Json{{"posets", Json::array({Json{{"elements", elements}}})}}.dump());
  EXPECT_EQ(run({"hn", ok}).code, 0);
}

TEST(Cli, InputErrorsNameTheOffendingPath) {
  struct Case {
    std::string json;
    std::string path;
  };
  const std::vector<Case> cases{
      {R"({"posets":[{"elements":[{"id":"x","re":"0","im":"1"},{"id":"y","re":"1","im":"0"}]}]})", "posets[0].elements[1]"},
      {R"({"ring":{"preset":"proj_product","n":1,"r":1},"sheaves":[{"ch":[[{"basis":"h1","coeff":"1"}]]}]})",
       "sheaves[0].ch[0]"},
      {R"({"ring":{"preset":"proj_product","n":1,"r":1},"sheaves":[{"ch":[[{"basis":"1","coeff":0.5}]]}]})",
       "sheaves[0].ch[0][0].coeff"},
      {R"({"ring":{"preset":"proj_product","n":0,"r":1}})", "ring"},
      {R"({"ring":{"preset":"curve_product","delta_sq":"1"}})", "ring"},
      {R"({"factor_vectors":[[["1","2","3"]]]})", "factor_vectors[0][0]"},
      {R"({"rings":{}})", "rings"},
  };
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const std::string file = write_temp("bad" + std::to_string(i) + ".json", cases[i].json);
    const auto o = run({"cascade", file});
    EXPECT_EQ(o.code, 1) << cases[i].json;
    EXPECT_NE(o.err.find(cases[i].path), std::string::npos) << o.err;
  }
}

TEST(Cli, MalformedJsonAndMissingFilesExitOne) {
  EXPECT_EQ(run({"cascade", write_temp("malformed.json", "{\"ring\": ")}).code, 1);
  EXPECT_EQ(run({"cascade", "/nonexistent/input.json"}).code, 1);
  EXPECT_EQ(run({"cascade"}).code, 1);
  EXPECT_EQ(run({"frobnicate"}).code, 1);
  EXPECT_EQ(run({"example", "no-such-example"}).code, 1);
  EXPECT_EQ(run({"abel-check", sample("factors.json"), "--t", "-1"}).code, 1);
}

TEST(Cli, AbelCheckNeedsT) {
  const std::string file = write_temp("no_t.json", R"({"factor_vectors":[[["1","0","0","0"]]]})");
  EXPECT_EQ(run({"abel-check", file}).code, 1);
  EXPECT_EQ(run({"abel-check", file, "--t", "1/2"}).code, 0);
}

TEST(Cli, OutputFileMatchesStdout) {
  const auto path = (std::filesystem::temp_directory_path() / "stabkit_cli_out.json").string();
  const auto direct = run({"example", "binomial-identities"});
  ASSERT_EQ(run({"example", "binomial-identities", "-o", path}).code, 0);
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  EXPECT_EQ(buf.str(), direct.out);
}

TEST(Cli, BinaryExitCodes) {
  const std::string bin = STABKIT_CLI_PATH;
  auto status = [](const std::string& cmd) {
    const int raw = std::system((cmd + " > /dev/null 2>&1").c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  };
  EXPECT_EQ(status(bin + " example p1xp1-line-bundles"), 0);
  EXPECT_EQ(status(bin + " example curve-x-elliptic --rank 2 --n1 1 --n2 1 --v 1 --delta-sq 0"), 2);
  EXPECT_EQ(status(bin + " validate-ring " + sample("broken_ring.json")), 1);
}

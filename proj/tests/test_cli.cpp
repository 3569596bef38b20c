#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "lgcone/cli.hpp"

using namespace lgcone;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "lgcone");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "lgcone_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const std::vector<std::string> quintic{"--weights", "1,1,1,1,1", "--degree", "5"};
const std::vector<std::string> spin3{"--weights", "1", "--degree", "3"};

std::vector<std::string> with(std::string cmd, const std::vector<std::string>& model,
                              std::vector<std::string> rest = {}) {
  std::vector<std::string> a{std::move(cmd)};
  a.insert(a.end(), model.begin(), model.end());
  a.insert(a.end(), rest.begin(), rest.end());
  return a;
}

}  // namespace

TEST(Model, TextReport) {
  const Outcome r = run(with("model", spin3));
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("narrow {0,1}"), std::string::npos);
  EXPECT_NE(r.out.find("q = 1/3"), std::string::npos);
  const Outcome q = run(with("model", quintic));
  EXPECT_NE(q.out.find("narrow {0,1,2,3}"), std::string::npos);
  EXPECT_NE(q.out.find("q = 1\n"), std::string::npos);
}

TEST(Model, JsonReport) {
  const Outcome r = run(with("model", quintic, {"--format", "json"}));
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["narrow"], nlohmann::json({0, 1, 2, 3}));
  EXPECT_EQ(j["total_charge"], "1");
  EXPECT_EQ(j["chamber_walls"][1], "1/2");
}

TEST(Model, InvalidSpecExitsWithTwo) {
  const Outcome r = run({"model", "--weights", "2,2", "--degree", "4"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("gcd"), std::string::npos);
  EXPECT_EQ(run({"model", "--weights", "3", "--degree", "5"}).code, 2);
}

TEST(Usage, BadInvocationsExitWithOne) {
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"frobnicate"}).code, 1);
  EXPECT_EQ(run(with("verify", quintic, {"--check", "nonsense"})).code, 1);
  EXPECT_EQ(run({"model"}).code, 1);
  EXPECT_EQ(run(with("model", quintic, {"--config", scratch("missing.json").string()})).code, 1);
}

TEST(IFunction, QuinticSmall) {
  const Outcome r = run(with("ifunction", quintic, {"--small", "--order", "6"}));
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("z^1 u^(5e_1) phi_0 : 1/375000\n"), std::string::npos);
  EXPECT_EQ(r.out.find("e_2"), std::string::npos);
}

TEST(IFunction, OrderZero) {
  const Outcome r = run(with("ifunction", spin3, {"--order", "0"}));
  EXPECT_EQ(r.out, "z^1 phi_0 : 1\n");
}

TEST(IFunction, CapOneSum) {
  const Outcome r = run(with("ifunction", spin3, {"--eps", "2", "--order", "2"}));
  ASSERT_EQ(r.code, 0);
  std::istringstream lines(r.out);
  std::vector<std::string> got;
  for (std::string l; std::getline(lines, l);) got.push_back(l);
  std::sort(got.begin(), got.end());
  EXPECT_EQ(got, (std::vector<std::string>{"z^0 u^(1e_0) phi_0 : 1", "z^0 u^(1e_1) phi_1 : 1",
                                           "z^1 phi_0 : 1"}));
}

TEST(Invariants, ThreeSpinInfinity) {
  const Outcome r = run(with("invariants", spin3, {"--eps", "infinity", "--t-order", "3"}));
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  bool found = false;
  for (const auto& e : j["entries"])
    if (e["heavy"] == nlohmann::json::parse("[[0,0],[0,0],[1,0]]") && e["light"].empty()) {
      EXPECT_EQ(e["value"], "1");
      found = true;
    }
  EXPECT_TRUE(found);
  EXPECT_EQ(j["epsilon"], "infinity");
}

TEST(Invariants, QuinticHasThePhi1Cube) {
  const Outcome r = run(with("invariants", quintic, {"--eps", "infinity", "--t-order", "3", "--format", "csv"}));
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("epsilon,heavy,light,value,provenance\n", 0), 0u);
  EXPECT_NE(r.out.find("infinity,\"[[1,0],[1,0],[1,0]]\",\"[]\","), std::string::npos);
}

TEST(Invariants, LightOnlyAtZeroTOrder) {
  const Outcome r = run(with("invariants", quintic, {"--eps", "1/2", "--t-order", "0", "--order", "4"}));
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  ASSERT_FALSE(j["entries"].empty());
  for (const auto& e : j["entries"]) {
    EXPECT_EQ(e["heavy"].size(), 1u);
    EXPECT_FALSE(e["light"].empty());
    EXPECT_EQ(e["provenance"], "j_epsilon");
  }
}

TEST(Verify, RegularityPasses) {
  const Outcome r = run(with("verify", quintic, {"--check", "regularity", "--eps", "1/2", "--order", "6"}));
  EXPECT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["checks"][0]["status"], "pass");
  EXPECT_EQ(j["checks"][0]["range"]["u_weight"], "6");
}

TEST(Verify, Cor4Passes) {
  EXPECT_EQ(run(with("verify", quintic, {"--check", "cor4", "--order", "8"})).code, 0);
}

TEST(Verify, InjectedFaultFailsWithLocation) {
  const Outcome r = run(with("verify", quintic,
                         {"--check", "regularity", "--eps", "1/2", "--order", "4", "--inject-fault"}));
  EXPECT_EQ(r.code, 3);
  const auto j = nlohmann::json::parse(r.out);
  const auto& c = j["checks"][0];
  EXPECT_EQ(c["status"], "fail");
  EXPECT_GT(c["violation_count"].get<int>(), 0);
  EXPECT_TRUE(c["injected_fault"].contains("monomial"));
}

TEST(Verify, OtherChecks) {
  for (const std::string check : {"transport", "string", "sigma", "routes"}) {
    const Outcome r = run(with("verify", spin3, {"--check", check, "--order", "4", "--t-order", "2"}));
    EXPECT_EQ(r.code, 0) << check << "\n" << r.out << r.err;
  }
}

TEST(Config, FileMirrorsFlags) {
  const auto cfg = scratch("job.json");
  const auto out = scratch("table.json");
  std::ofstream(cfg) << R"({"model": {"weights": [1], "degree": 3}, "eps": "infinity",
                           "t_order": 3, "format": "json", "out": ")" << out.string() << "\"}";
  const Outcome r = run({"invariants", "--config", cfg.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  const Outcome flags = run(with("invariants", spin3, {"--eps", "infinity", "--t-order", "3"}));
  EXPECT_EQ(slurp(out), flags.out);
}

TEST(Config, ModelFile) {
  const auto spec = scratch("model.json");
  std::ofstream(spec) << R"({"weights": [2, 1], "degree": 6})";
  const Outcome r = run({"model", "--model", spec.string()});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("narrow {0,1,3,4}"), std::string::npos);
  const auto bad = scratch("bad.json");
  std::ofstream(bad) << R"({"weights": [2], "degree": 4})";
  EXPECT_EQ(run({"model", "--model", bad.string()}).code, 2);
}

TEST(Determinism, IdenticalRunsGiveIdenticalFiles) {
  const auto a = scratch("a.json"), b = scratch("b.json");
  const auto args = [&](const std::filesystem::path& p) {
    return with("invariants", quintic, {"--eps", "1/2", "--order", "4", "--t-order", "2", "--out", p.string()});
  };
  ASSERT_EQ(run(args(a)).code, 0);
  ASSERT_EQ(run(args(b)).code, 0);
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_FALSE(slurp(a).empty());
}

TEST(Binary, ExitCodesFromTheExecutable) {
  const std::string exe = LGCONE_CLI_PATH;
  auto status = [&](const std::string& args) {
    const int raw = std::system((exe + " " + args + " > /dev/null 2>&1").c_str());
    return WEXITSTATUS(raw);
  };
  EXPECT_EQ(status("model --weights 1 --degree 3"), 0);
  EXPECT_EQ(status("model --weights 2,2 --degree 4"), 2);
  EXPECT_EQ(status("--bogus"), 1);
  EXPECT_EQ(status("verify --weights 1,1,1,1,1 --degree 5 --check regularity --order 4 --inject-fault"), 3);
}

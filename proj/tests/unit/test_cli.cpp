#include "omega/tools/cli.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace omega {
namespace {

using nlohmann::json;

std::string fixture(const std::string& name) { return std::string(OMEGA_FIXTURE_DIR) + "/" + name; }

struct Outcome {
  int code;
  json report;
  std::string raw;
};

Outcome invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, json::parse(out.str()), out.str()};
}

TEST(Cli, EnvelopeFields) {
  auto r = invoke({"complex", "info", fixture("double_edge_complex.json")});
  EXPECT_EQ(r.code, cli::kSuccess);
  EXPECT_EQ(r.report["tool"], "omega");
  EXPECT_EQ(r.report["version"], cli::kVersion);
  EXPECT_EQ(r.report["status"], "ok");
  EXPECT_EQ(r.report["seed"], 1);
  ASSERT_EQ(r.report["inputs"].size(), 1u);
  EXPECT_EQ(r.report["inputs"][0]["fnv1a64"].get<std::string>().size(), 16u);
  EXPECT_TRUE(r.report["result"]["connected"].get<bool>());
}

TEST(Cli, DeterministicOutput) {
  std::vector<std::string> args{"--seed", "5", "approx", "run", fixture("witness-d3.json"), "--epsilon", "0.5",
                                "--always-sample"};
  auto a = invoke(args), b = invoke(args);
  EXPECT_EQ(a.code, cli::kSuccess);
  EXPECT_EQ(a.raw, b.raw);
  EXPECT_EQ(a.report["seed"], 5);
  EXPECT_LE(a.report["result"]["error_schatten2"].get<double>(), 0.5);
}

TEST(Cli, VerifyDecompositions) {
  auto ok = invoke({"dec", "verify", fixture("example-double-edge.json")});
  EXPECT_EQ(ok.code, cli::kSuccess);
  EXPECT_TRUE(ok.report["result"]["matches_target"].get<bool>());
  EXPECT_EQ(ok.report["result"]["bipartite_rank"], 3);
  EXPECT_EQ(invoke({"dec", "verify", fixture("minus-sign-double-edge.json")}).code, cli::kSuccess);
  EXPECT_EQ(invoke({"dec", "verify", fixture("asymmetric-double-edge.json")}).code, cli::kVerdictFail);
}

TEST(Cli, FamilyVerdicts) {
  auto planted = invoke({"family", "check", fixture("planted-family.json"), "--n-max", "3"});
  EXPECT_EQ(planted.code, cli::kVerdictFail);
  EXPECT_EQ(planted.report["result"]["witness"], json::array({1, 2}));
  EXPECT_FALSE(planted.report["result"]["disclaimer"].get<std::string>().empty());
  EXPECT_EQ(invoke({"family", "check", fixture("nonnegative-family.json"), "--n-max", "3"}).code, cli::kSuccess);
  auto guard = invoke({"--max-assignments", "10", "family", "check", fixture("nonnegative-family.json"), "--n-max",
                       "40", "--max-entries", "1000"});
  EXPECT_EQ(guard.code, cli::kGuard);
  EXPECT_EQ(guard.report["status"], "error");
  EXPECT_EQ(guard.report["error"]["code"], "SizeTooLarge");
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(invoke({}).code, cli::kUsage);
  EXPECT_EQ(invoke({"dec", "verify", fixture("does-not-exist.json")}).code, cli::kUsage);
  auto r = invoke({"dec", "symmetrize", fixture("x2y2-terms-single-edge.json"), "--mode", "free"});
  EXPECT_EQ(r.code, cli::kUsage);
  EXPECT_EQ(r.report["error"]["code"], "ActionNotFree");
  EXPECT_EQ(invoke({"action", "check", fixture("circle3_complex.json"), fixture("double_edge_swap.json")}).code,
            cli::kUsage);
}

TEST(Cli, PositivityCommands) {
  auto bound = invoke({"pos", "bound", "--m", "1", "--d", "2", "--n", "1", "--g", "2"});
  EXPECT_EQ(bound.report["result"]["bound"], 18);
  auto gram = invoke({"pos", "gram-map", fixture("gram-n1-m1-d1.json")});
  EXPECT_EQ(gram.code, cli::kSuccess);
  EXPECT_NEAR(gram.report["result"]["min_eigenvalue"].get<double>(), 0.0, 1e-12);
}

TEST(Cli, SymmetrizeRoundTrip) {
  auto r = invoke({"dec", "symmetrize", fixture("x2y2-terms-double-edge.json"), "--mode", "free"});
  ASSERT_EQ(r.code, cli::kSuccess);
  auto path = testing::TempDir() + "omega_symmetrized.json";
  {
    std::ofstream f(path);
    f << r.report["result"]["decomposition"].dump();
  }
  auto v = invoke({"dec", "verify", path});
  EXPECT_EQ(v.code, cli::kSuccess);
  EXPECT_TRUE(v.report["result"]["symmetric"].get<bool>());
}

TEST(Cli, TensorBridge) {
  auto r = invoke({"bridge", "to-poly", fixture("tensor-2x2.json")});
  EXPECT_EQ(r.code, cli::kSuccess);
  EXPECT_TRUE(r.report["result"]["nonnegative"].get<bool>());
  auto s = invoke({"bridge", "separations", "--m", "4", "--restarts", "2"});
  EXPECT_EQ(s.code, cli::kSuccess);
}

}  // namespace
}  // namespace omega

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "codequiv/cli.hpp"
#include "test_util.hpp"

namespace codequiv {
namespace {

namespace fs = std::filesystem;
using testing_util::data_path;

struct Run {
  int status;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int status = cli::run(args, out, err);
  return {status, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("codequiv_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path(name)) << text;
    return path(name);
  }
  std::string read(const std::string& name) const {
    std::ifstream in(path(name));
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
  }

  fs::path dir_;
};

TEST_F(CliTest, MdsReport) {
  const auto r = run({"mds", data_path("G1.code")});
  EXPECT_EQ(r.status, cli::kOk);
  EXPECT_EQ(r.out, "mds=true d=6 size=729\n");
  EXPECT_EQ(run({"mds", data_path("C3.code")}).out, "mds=true d=6 size=729\n");
  EXPECT_EQ(run({"mindist", data_path("G2.code")}).out, "d=6\n");
}

TEST_F(CliTest, MachineMode) {
  const auto r = run({"--machine", "mds", data_path("G1.code")});
  EXPECT_EQ(r.out, "mds=true\nd=6\nsize=729\n");
}

TEST_F(CliTest, CodeIsEquivalentToItself) {
  const auto r = run({"equiv", data_path("G1.code"), data_path("G1.code"), "--out", path("w.txt")});
  EXPECT_EQ(r.status, cli::kOk);
  EXPECT_EQ(r.out, "equivalent=true t=0\n");
  const auto v = run({"verify-witness", path("w.txt"), data_path("G1.code"), data_path("G1.code")});
  EXPECT_EQ(v.status, cli::kOk);
  EXPECT_EQ(v.out, "valid=true\n");
}

TEST_F(CliTest, BundledCodesAreNotSemiLinearlyEquivalent) {
  const auto r = run({"equiv", data_path("G1.code"), data_path("G2.code")});
  EXPECT_EQ(r.status, cli::kOk);
  EXPECT_EQ(r.out, "equivalent=false\n");
}

TEST_F(CliTest, AdditiveModeWritesVerifiableWitness) {
  const auto r = run({"equiv", "--mode", "additive", data_path("C3.code"), data_path("C3.code"),
                      "--out", path("w.txt")});
  EXPECT_EQ(r.status, cli::kOk);
  EXPECT_EQ(r.out, "equivalent=true\n");
  EXPECT_NE(read("w.txt").find("kind=additive"), std::string::npos);
  EXPECT_EQ(run({"verify-witness", path("w.txt"), data_path("C3.code"), data_path("C3.code")}).status,
            cli::kOk);
}

TEST_F(CliTest, GeneralModeAndExtraction) {
  ASSERT_EQ(run({"equiv", "--mode", "general", data_path("G2.code"), data_path("G2.code"), "--out",
                 path("g.txt")})
                .status,
            cli::kOk);
  const auto ex = run({"extract", path("g.txt"), data_path("G2.code"), data_path("G2.code"), "--out",
                       path("s.txt")});
  EXPECT_EQ(ex.status, cli::kOk);
  EXPECT_NE(ex.out.find("extracted=semilinear"), std::string::npos);
  EXPECT_NE(read("s.txt").find("# reordering:"), std::string::npos);
  EXPECT_EQ(run({"verify-witness", path("s.txt"), data_path("G2.code"), data_path("G2.code")}).status,
            cli::kOk);
}

TEST_F(CliTest, InvalidWitnessExitsWithOne) {
  write("w.txt", "witness kind=semilinear n=8\nalpha: 1 2 3 4 5 6 7 8\nt=0\nlambda: 1 1 1 1 1 1 1 1\n");
  const auto r = run({"verify-witness", path("w.txt"), data_path("G1.code"), data_path("G2.code")});
  EXPECT_EQ(r.status, cli::kInputError);
  EXPECT_EQ(r.out, "valid=false\n");
}

TEST_F(CliTest, BudgetExhaustionExitsWithTwo) {
  const auto r = run({"equiv", "--budget", "1", data_path("G1.code"), data_path("G2.code")});
  EXPECT_EQ(r.status, cli::kUndecided);
  EXPECT_EQ(r.out, "equivalent=undecided\n");
}

TEST_F(CliTest, InputErrorsExitWithOne) {
  EXPECT_EQ(run({"mds", path("missing.code")}).status, cli::kInputError);
  EXPECT_EQ(run({"mds", write("bad.code", "field p=3 h=2\nkind linear k=1 n=2\n1 z\n")}).status,
            cli::kInputError);
  EXPECT_EQ(run({"frobnicate"}).status, cli::kInputError);
  EXPECT_EQ(run({"equiv", "--mode", "linear", data_path("C3.code"), data_path("G1.code")}).status,
            cli::kInputError);
}

TEST_F(CliTest, CountsAdditivePermutations) {
  EXPECT_EQ(run({"count-additive-perms", "2", "2"}).out, "additive_maps=16 additive_permutations=6\n");
  EXPECT_EQ(run({"count-additive-perms", "3", "2"}).out, "additive_maps=81 additive_permutations=48\n");
  EXPECT_EQ(run({"count-additive-perms", "2", "3"}).out,
            "additive_maps=512 additive_permutations=168\n");
}

TEST_F(CliTest, StandardFormStartsWithIdentity) {
  const auto r = run({"standard-form", data_path("C3.code")});
  EXPECT_EQ(r.status, cli::kOk);
  EXPECT_NE(r.out.find("# blocks_invertible: true"), std::string::npos);
  EXPECT_NE(r.out.find("1 0 0 0 0 0"), std::string::npos);
}

TEST_F(CliTest, DemoPassesEveryItem) {
  const auto r = run({"paper-demo"});
  EXPECT_EQ(r.status, cli::kOk) << r.out;
  EXPECT_NE(r.out.find("passed=5/5"), std::string::npos) << r.out;
  const auto quick = run({"paper-demo", "--skip-search"});
  EXPECT_NE(quick.out.find("passed=4/4"), std::string::npos) << quick.out;
}

TEST_F(CliTest, DemoFlagsTheMisprintedEntry) {
  for (const char* name : {"G1.code", "C3.code"}) fs::copy_file(data_path(name), path(name));
  write("G2.code",
        "field p=3 h=2\nkind linear k=3 n=8\n"
        "1 0 0 1 e^5 e^7 e^7 e^5\n"
        "0 1 0 e 1   e^5 e^7 e^7\n"
        "0 0 1 e^7 e^5 1 e^5 e^7\n");
  const auto r = run({"paper-demo", "--skip-search", "--data-dir", dir_.string()});
  EXPECT_EQ(r.status, cli::kInputError);
  EXPECT_NE(r.out.find("failed=mds,conic"), std::string::npos) << r.out;
}

TEST_F(CliTest, BinaryRuns) {
  const std::string cmd = std::string("\"") + CODEQUIV_CLI + "\" mds \"" + data_path("G1.code") +
                          "\" > \"" + path("out.txt") + "\"";
  ASSERT_EQ(std::system(cmd.c_str()), 0);
  EXPECT_EQ(read("out.txt"), "mds=true d=6 size=729\n");
}

}  // namespace
}  // namespace codequiv

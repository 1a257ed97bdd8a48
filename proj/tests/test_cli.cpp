#include "obpursuit/serialization.hpp"

#include "gtest/gtest.h"

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace obpursuit {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code = -1;
  std::string out;
  std::string err;
};

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / (std::string("obp_cli_") + info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& leaf) const { return (dir_ / leaf).string(); }

  Outcome run(const std::string& args) const {
    const std::string out = path("stdout.txt");
    const std::string err = path("stderr.txt");
    const std::string cmd =
        std::string("\"") + OBPURSUIT_CLI + "\" " + args + " >\"" + out + "\" 2>\"" + err + "\"";
    const int status = std::system(cmd.c_str());
    Outcome r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
  }

  static std::string slurp(const std::string& p) {
    std::ifstream is(p, std::ios::binary);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
  }

  void write(const std::string& leaf, const std::string& text) const {
    std::ofstream os(path(leaf));
    os << text;
  }

  fs::path dir_;
};

const char* kSmallGrid = "--n 32 --reps 2 --m-over-n 0.5 --s-over-m 0.1,0.2 --algorithms thres,htp";

TEST_F(Cli, NoSubcommandIsUsageError) { EXPECT_EQ(run("").code, 2); }

TEST_F(Cli, UnknownFlagIsUsageError) {
  const Outcome r = run("phase-transition --bogus 3");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("bogus"), std::string::npos);
}

TEST_F(Cli, BadValueIsConfigError) {
  EXPECT_EQ(run(std::string("phase-transition ") + kSmallGrid + " --density gaussian").code, 2);
  EXPECT_EQ(run(std::string("phase-transition ") + kSmallGrid + " --algorithms omp2").code, 2);
}

TEST_F(Cli, MalformedConfigReportsLine) {
  write("bad.cfg", "n = 32\n# comment\nreps = lots\n");
  const Outcome r = run("phase-transition --config " + path("bad.cfg"));
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("bad.cfg:3"), std::string::npos) << r.err;
}

TEST_F(Cli, PhaseTransitionWritesCsvAndSidecar) {
  const Outcome r = run(std::string("phase-transition ") + kSmallGrid + " --output " + path("pt.csv"));
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string csv = slurp(path("pt.csv"));
  EXPECT_EQ(csv.substr(0, csv.find('\n')), kGridCsvHeader);
  const Json side = read_json(path("pt.csv.json"));
  EXPECT_EQ(side.at("n").get<Index>(), 32);
  EXPECT_EQ(side.at("algorithms").size(), 2u);
}

TEST_F(Cli, GridOutputIsReproducible) {
  const std::string args = std::string("phase-transition ") + kSmallGrid + " --seed 9 --snr none";
  const Outcome a = run(args);
  const Outcome b = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_FALSE(a.out.empty());
  const Outcome c = run(std::string("phase-transition ") + kSmallGrid + " --seed 10 --snr none");
  EXPECT_NE(a.out, c.out);
}

TEST_F(Cli, ConfigFileAndFlagsLayer) {
  write("pt.cfg", "n = 32\nreps = 2\nm_over_n = 0.5\ns_over_m = 0.1\nalgorithms = thres\n");
  const Outcome r = run("phase-transition --config " + path("pt.cfg") + " --reps 3");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find(",3,"), std::string::npos) << r.out;
}

TEST_F(Cli, AbCompareHeader) {
  const Outcome r = run(std::string("ab-compare ") + kSmallGrid);
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), kAbCsvHeader);
}

TEST_F(Cli, RbopTrend) {
  const Outcome r = run("rbop-trend --n 16 --reps 3 --output " + path("trend.csv"));
  ASSERT_EQ(r.code, 0) << r.err;
  const Json side = read_json(path("trend.csv.json"));
  EXPECT_EQ(side.at("n").get<Index>(), 16);
  EXPECT_FALSE(side.at("rows").empty());
}

TEST_F(Cli, VerifyExitsZeroUnlessStrict) {
  const Outcome r = run("verify --trials 20 --output " + path("verify.json"));
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("suite verdict"), std::string::npos);
  const Json j = read_json(path("verify.json"));
  const bool passed = j.at("passed").get<bool>();
  const Outcome strict = run("verify --trials 20 --strict");
  EXPECT_EQ(strict.code, passed ? 0 : 1);
}

TEST_F(Cli, RecoverFromFiles) {
  Rng rng(5);
  const CMatrix psi = rng.gaussian_matrix<Complex>(20, 30) / std::sqrt(20.0);
  CVector x = CVector::Zero(30);
  x(3) = 1.0;
  x(17) = Complex(0.0, -2.0);
  write_matrix_csv(path("psi.csv"), psi);
  write_matrix_csv(path("y.csv"), CMatrix(psi * x));
  const Outcome r = run("recover --alg htp --sparsity 2 --input " + dir_.string());
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j.at("support").get<std::vector<Index>>(), (std::vector<Index>{3, 17}));
  EXPECT_EQ(j.at("oblique").get<bool>(), false);
  EXPECT_EQ(run("recover --alg htp --sparsity 2 --oblique --input " + dir_.string()).code, 2);
}

TEST_F(Cli, RecoverMissingFileIsRuntimeError) {
  EXPECT_EQ(run("recover --alg sp --sparsity 2 --psi " + path("none.csv") + " --y " +
                path("none.csv"))
                .code,
            1);
}

TEST_F(Cli, ConstantsOmitTimingByDefault) {
  const Outcome a = run("constants --sparsity 2 --m 6 --n 8");
  const Outcome b = run("constants --sparsity 2 --m 6 --n 8");
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  const Json j = Json::parse(a.out);
  EXPECT_FALSE(j.at("report").contains("seconds"));
  EXPECT_TRUE(j.contains("cross_babel"));
  const Json t = Json::parse(run("constants --sparsity 2 --m 6 --n 8 --timing").out);
  EXPECT_TRUE(t.at("report").contains("seconds"));
}

TEST_F(Cli, FrameStatsAndSavedPair) {
  const Outcome r = run("frame-stats --family partial-dft --d 8 --density variable-power --save-pair " +
                    path("pair") + " --m 5");
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_NEAR(j.at("theta_d").get<double>(), 0.0, 1e-12);
  EXPECT_LE(j.at("dual_isotropy_gap").get<double>(), 1e-9);
  const LoadedPair p = load_sensing_pair(path("pair"));
  EXPECT_EQ(p.a.rows(), 5);
  EXPECT_EQ(p.a.cols(), 8);
  EXPECT_EQ(run("frame-stats --family wavelet").code, 2);
}

}  // namespace
}  // namespace obpursuit

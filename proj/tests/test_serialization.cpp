#include "obpursuit/serialization.hpp"

#include "gtest/gtest.h"

#include <filesystem>
#include <sstream>

namespace obpursuit {
namespace {

namespace fs = std::filesystem;

class TempDir {
 public:
  TempDir() {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    path_ = fs::temp_directory_path() /
            (std::string("obp_") + info->test_suite_name() + "_" + info->name());
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string operator/(const std::string& leaf) const { return (path_ / leaf).string(); }

 private:
  fs::path path_;
};

CMatrix round_trip(const CMatrix& m, bool complex_field) {
  std::stringstream ss;
  write_matrix_csv(ss, m, complex_field);
  return read_matrix_csv(ss);
}

CMatrix parse(const std::string& text) {
  std::istringstream is(text);
  return read_matrix_csv(is);
}

TEST(MatrixCsv, ComplexRoundTripIsExact) {
  Rng rng(3);
  const CMatrix m = rng.gaussian_matrix<Complex>(7, 5) * 1e-3;
  EXPECT_TRUE(round_trip(m, true) == m);
}

TEST(MatrixCsv, RealRoundTripIsExact) {
  Rng rng(4);
  const CMatrix m = to_complex(rng.gaussian_matrix<double>(4, 9));
  const CMatrix back = round_trip(m, false);
  EXPECT_TRUE(back == m);
}

TEST(MatrixCsv, ExtremeValuesSurvive) {
  CMatrix m(1, 4);
  m << Complex(1e-300, -2.5e300), Complex(-0.0, 1.0 / 3.0), Complex(123456789.123456789, 0.0),
      Complex(-7.0, -1e-17);
  EXPECT_TRUE(round_trip(m, true) == m);
}

TEST(MatrixCsv, ColumnPerLineLayout) {
  CMatrix m(2, 3);
  m << 1, 2, 3, 4, 5, 6;
  std::ostringstream os;
  write_matrix_csv(os, m, false);
  EXPECT_EQ(os.str(), "2,3,real\n1,4\n2,5\n3,6\n");
  std::ostringstream oc;
  CMatrix c(1, 1);
  c(0, 0) = Complex(1.5, -2.0);
  write_matrix_csv(oc, c, true);
  EXPECT_EQ(oc.str(), "1,1,complex\n1.5-2i\n");
}

TEST(MatrixCsv, ParsesHandWrittenEntries) {
  const CMatrix m = parse("2,2,complex\n1+2i,-3.5e-2-1e+3i\n4, 2i\n");
  EXPECT_EQ(m(0, 0), Complex(1.0, 2.0));
  EXPECT_EQ(m(1, 0), Complex(-3.5e-2, -1e3));
  EXPECT_EQ(m(0, 1), Complex(4.0, 0.0));
  EXPECT_EQ(m(1, 1), Complex(0.0, 2.0));
}

TEST(MatrixCsv, ToleratesCarriageReturns) {
  const CMatrix m = parse("1,2,real\r\n1\r\n2\r\n");
  EXPECT_EQ(m(0, 1), Complex(2.0, 0.0));
}

TEST(MatrixCsv, MalformedInputs) {
  EXPECT_THROW(parse(""), FormatError);
  EXPECT_THROW(parse("2,2\n1,2\n3,4\n"), FormatError);
  EXPECT_THROW(parse("x,2,real\n"), FormatError);
  EXPECT_THROW(parse("0,2,real\n"), FormatError);
  EXPECT_THROW(parse("2,2,quaternion\n1,2\n3,4\n"), FormatError);
  EXPECT_THROW(parse("2,2,real\n1,2\n"), FormatError);
  EXPECT_THROW(parse("2,2,real\n1,2\n3\n"), FormatError);
  EXPECT_THROW(parse("2,1,real\n1,abc\n"), FormatError);
  EXPECT_THROW(parse("1,1,real\n1.5x\n"), FormatError);
  EXPECT_THROW(parse("1,1,real\nnan\n"), FormatError);
  EXPECT_THROW(parse("1,1,complex\n1+infi\n"), FormatError);
}

TEST(MatrixCsv, DiagnosticsCarryLineNumbers) {
  try {
    parse("2,2,real\n1,2\n3,oops\n");
    FAIL() << "expected FormatError";
  } catch (const FormatError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
}

TEST(MatrixCsv, PathWriterPicksField) {
  TempDir dir;
  CMatrix real = CMatrix::Identity(3, 3);
  write_matrix_csv(dir / "r.csv", real);
  std::ifstream is(dir / "r.csv");
  std::string head;
  std::getline(is, head);
  EXPECT_EQ(head, "3,3,real");
  EXPECT_TRUE(read_matrix_csv(dir / "r.csv") == real);
  EXPECT_THROW(read_matrix_csv(dir / "missing.csv"), FormatError);
}

TEST(SensingPairIo, SaveLoad) {
  TempDir dir;
  const auto family = FrameFamily::partial_dft(16);
  const auto density = SamplingDensity::variable_power(16, 1.0);
  const SensingPair pair = sample_sensing_pair(family, density, 6, 77);
  save_sensing_pair(dir / "pair", pair);
  const LoadedPair back = load_sensing_pair(dir / "pair");
  EXPECT_TRUE(back.a == pair.a);
  EXPECT_TRUE(back.a_dual == pair.a_dual);
  EXPECT_EQ(back.sidecar.at("seed").get<std::uint64_t>(), 77u);
  EXPECT_EQ(back.sidecar.at("rows").get<Index>(), 6);
  EXPECT_EQ(back.sidecar.at("dimension").get<Index>(), 16);
  EXPECT_EQ(back.sidecar.at("indices").get<std::vector<Index>>(), pair.indices);
  EXPECT_EQ(back.sidecar.at("family").at("kind").get<std::string>(), family.kind_name());
  EXPECT_EQ(back.sidecar.at("density").at("kind").get<std::string>(), density.kind_name());
}

TEST(DictionaryIo, SaveLoad) {
  TempDir dir;
  DictionarySpec spec;
  spec.kind = DictionaryKind::BlockDiagonal;
  spec.d = 8;
  spec.n = 8;
  spec.kappa = 1.99;
  spec.block = 4;
  spec.seed = 5;
  const DictionaryPair d = make_dictionary(spec);
  save_dictionary(dir / "dict", d);
  const DictionaryPair back = load_dictionary(dir / "dict");
  EXPECT_TRUE(back.d == d.d);
  EXPECT_TRUE(back.d_dual == d.d_dual);
  EXPECT_EQ(back.spec.kind, spec.kind);
  EXPECT_EQ(back.spec.block, 4);
  EXPECT_EQ(back.spec.seed, 5u);
  EXPECT_DOUBLE_EQ(back.spec.kappa, 1.99);
  EXPECT_DOUBLE_EQ(back.achieved_delta, d.achieved_delta);
}

TEST(DictionaryIo, BrokenSidecar) {
  TempDir dir;
  DictionarySpec spec;
  spec.d = 3;
  spec.n = 3;
  save_dictionary(dir / "dict", make_dictionary(spec));
  {
    std::ofstream os(dir / "dict.json");
    os << "{\"kind\": \"orthonormal\"}";
  }
  EXPECT_THROW(load_dictionary(dir / "dict"), FormatError);
  {
    std::ofstream os(dir / "dict.json");
    os << "{not json";
  }
  EXPECT_THROW(load_dictionary(dir / "dict"), FormatError);
}

TEST(JsonViews, SparseSignalAndSupport) {
  CVector vals(2);
  vals << Complex(1.0, -1.0), Complex(0.5, 0.0);
  const SparseSignal<Complex> x(SupportSet({1, 4}, 6), vals);
  const Json j = to_json(x);
  EXPECT_EQ(j.at("length").get<Index>(), 6);
  EXPECT_EQ(j.at("support").get<std::vector<Index>>(), (std::vector<Index>{1, 4}));
  EXPECT_EQ(j.at("values")[0][1].get<double>(), -1.0);
  const SparseSignal<double> r(SupportSet({0}, 3), RVector::Constant(1, 2.0));
  EXPECT_EQ(to_json(r).at("values")[0].get<double>(), 2.0);
}

TEST(JsonViews, RecoveryResult) {
  const CMatrix psi = CMatrix::Identity(4, 4);
  CVector y = CVector::Zero(4);
  y(2) = 3.0;
  PursuitConfig cfg;
  cfg.sparsity = 1;
  cfg.algorithm = Algorithm::Htp;
  const auto r = run_pursuit<Complex>(psi, psi, y, cfg);
  const Json j = to_json(r);
  EXPECT_EQ(j.at("support").get<std::vector<Index>>(), (std::vector<Index>{2}));
  EXPECT_EQ(j.at("termination").get<std::string>(), termination_name(r.termination));
  EXPECT_EQ(j.at("iterations").get<Index>(), r.iterations);
  EXPECT_EQ(j.at("residual_history").size(), r.residual_history.size());
}

TEST(JsonViews, ConstantsOmitSecondsUnlessAsked) {
  Rng rng(8);
  const CMatrix psi = rng.gaussian_matrix<Complex>(6, 8) / std::sqrt(6.0);
  const ConstantsReport rep = constants_report(psi, psi, 2);
  EXPECT_FALSE(to_json(rep).contains("seconds"));
  EXPECT_TRUE(to_json(rep, true).contains("seconds"));
  EXPECT_DOUBLE_EQ(to_json(rep).at("theta").at("value").get<double>(), rep.theta.value);
}

TEST(JsonViews, ConvergenceNullsForMissingBars) {
  ConstantInputs in;
  in.theta = 0.1;
  const auto c = convergence_constants(Algorithm::Iht, in);
  const Json j = to_json(c);
  EXPECT_EQ(j.at("algorithm").get<std::string>(), "iht");
  EXPECT_DOUBLE_EQ(j.at("rho").get<double>(), c.rho);
  EXPECT_EQ(j.at("rho_bar").is_null(), !c.rho_bar.has_value());
  EXPECT_DOUBLE_EQ(j.at("threshold").at("c").get<double>(), 0.5);
}

TEST(GridSidecar, Fields) {
  ExperimentConfig c;
  c.n = 24;
  c.m_over_n = {0.5};
  c.s_over_m = {0.1, 0.9};
  c.reps = 2;
  c.snr_db.reset();
  c.algorithms = {Algorithm::Thres, Algorithm::Htp};
  const auto g = phase_transition(c);
  const Json j = grid_sidecar(g);
  EXPECT_EQ(j.at("experiment").get<std::string>(), "phase-transition");
  EXPECT_EQ(j.at("snr_db").get<std::string>(), "none");
  EXPECT_EQ(j.at("algorithms").size(), 2u);
  EXPECT_EQ(j.at("instance_digest").get<std::string>().size(), 16u);
  EXPECT_DOUBLE_EQ(j.at("success_area_cells").at("htp").at("oblique").get<double>(),
                   g.success_area(Algorithm::Htp, true));
  EXPECT_EQ(j.at("skipped").size(), g.skipped.size());
}

}  // namespace
}  // namespace obpursuit

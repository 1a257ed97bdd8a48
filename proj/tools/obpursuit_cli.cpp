// obpursuit command-line front end.
//
// Exit codes: 0 success, 2 usage or configuration error, 1 runtime error.

#include "obpursuit/obpursuit.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

namespace obp = obpursuit;
namespace fs = std::filesystem;

namespace {

struct ExperimentFlags {
  std::string config;
  std::string output;
  std::optional<std::uint64_t> seed;
  std::optional<long long> n;
  std::optional<long long> reps;
  std::optional<std::string> snr;
  std::optional<double> kappa;
  std::optional<std::string> algorithms;
  std::optional<std::string> m_over_n;
  std::optional<std::string> s_over_m;
  std::optional<std::string> density;
  std::optional<std::string> row_sampling;
  std::optional<unsigned> threads;
  bool timing = false;
  bool emit_plot_data = false;
};

void add_experiment_flags(CLI::App* sub, ExperimentFlags& f) {
  sub->add_option("--config", f.config, "key=value configuration file");
  sub->add_option("--output", f.output, "CSV output path (JSON sidecar at <output>.json)");
  sub->add_option("--seed", f.seed, "master seed");
  sub->add_option("--n", f.n, "signal length n");
  sub->add_option("--reps", f.reps, "repetitions per cell");
  sub->add_option("--snr", f.snr, "SNR in dB, or 'none' for noiseless");
  sub->add_option("--kappa", f.kappa, "condition number of the frame operator");
  sub->add_option("--algorithms", f.algorithms, "comma list of thres,mp,cosamp,sp,iht,htp");
  sub->add_option("--m-over-n", f.m_over_n, "comma list of m/n values");
  sub->add_option("--s-over-m", f.s_over_m, "comma list of s/m values");
  sub->add_option("--density", f.density, "uniform or variable-power");
  sub->add_option("--row-sampling", f.row_sampling, "iid or distinct");
  sub->add_option("--threads", f.threads, "worker threads");
  sub->add_flag("--timing", f.timing, "record wall-clock runtime (output no longer reproducible)");
  sub->add_flag("--emit-plot-data", f.emit_plot_data,
                "write per-algorithm success-rate matrices to <output>_plot/");
}

obp::ExperimentConfig build_config(const ExperimentFlags& f, obp::ExperimentConfig base) {
  obp::ExperimentConfig c =
      f.config.empty() ? std::move(base) : obp::load_experiment_config(f.config, std::move(base));
  auto set = [&c](const char* key, const std::string& v, const char* flag) {
    c.set(key, v, std::string("--") + flag);
  };
  if (f.seed) set("seed", std::to_string(*f.seed), "seed");
  if (f.n) set("n", std::to_string(*f.n), "n");
  if (f.reps) set("reps", std::to_string(*f.reps), "reps");
  if (f.snr) set("snr_db", *f.snr, "snr");
  if (f.kappa) set("kappa", obp::detail::fmt(*f.kappa, "%.17g"), "kappa");
  if (f.algorithms) set("algorithms", *f.algorithms, "algorithms");
  if (f.m_over_n) set("m_over_n", *f.m_over_n, "m-over-n");
  if (f.s_over_m) set("s_over_m", *f.s_over_m, "s-over-m");
  if (f.density) set("density", *f.density, "density");
  if (f.row_sampling) set("row_sampling", *f.row_sampling, "row-sampling");
  if (f.threads) set("threads", std::to_string(*f.threads), "threads");
  if (f.timing) c.timing = true;
  if (!f.output.empty()) c.output = f.output;
  c.validate();
  return c;
}

// Writes `body` to path, or to stdout when path is empty.
template <typename Writer>
void emit(const std::string& path, Writer body) {
  if (path.empty()) {
    body(std::cout);
    return;
  }
  std::ofstream os(path);
  if (!os) throw obp::Error("cannot write " + path);
  body(os);
}

int run_grid_command(const ExperimentFlags& f, obp::ExperimentKind kind) {
  obp::ExperimentConfig base;
  base.kind = kind;
  const obp::ExperimentConfig c = build_config(f, base);
  const obp::ExperimentGrid g =
      kind == obp::ExperimentKind::AbComparison ? obp::ab_comparison(c) : obp::phase_transition(c);
  emit(c.output, [&](std::ostream& os) {
    if (kind == obp::ExperimentKind::AbComparison) {
      obp::write_ab_csv(os, g);
    } else {
      obp::write_grid_csv(os, g);
    }
  });
  if (!c.output.empty()) obp::write_json(c.output + ".json", obp::grid_sidecar(g));
  if (f.emit_plot_data) {
    const fs::path dir = c.output.empty() ? fs::path("plot_data") : fs::path(c.output + "_plot");
    for (const auto& p : obp::write_plot_data(dir, g)) std::cerr << "wrote " << p << '\n';
  }
  return 0;
}

int run_trend_command(const ExperimentFlags& f) {
  obp::ExperimentConfig base;
  base.kind = obp::ExperimentKind::RbopTrend;
  base.n = 64;
  base.reps = 20;
  const obp::ExperimentConfig c = build_config(f, base);
  const obp::TrendReport r = obp::rbop_trend(c);
  emit(c.output, [&](std::ostream& os) { obp::write_trend_csv(os, r); });
  if (!c.output.empty()) obp::write_json(c.output + ".json", obp::to_json(r));
  return 0;
}

struct RecoverFlags {
  std::string alg;
  bool oblique = false;
  long long sparsity = 0;
  long long max_iter = 0;
  double tol = 1e-8;
  std::string input;
  std::string psi;
  std::string psi_dual;
  std::string y;
  std::string output;
};

int run_recover(const RecoverFlags& f) {
  obp::PursuitConfig cfg;
  cfg.algorithm = obp::parse_algorithm(f.alg);
  cfg.oblique = f.oblique;
  cfg.sparsity = f.sparsity;
  cfg.max_iter = f.max_iter;
  cfg.tolerance = f.tol;
  cfg.validate();
  auto pick = [&](const std::string& explicit_path, const char* name) {
    if (!explicit_path.empty()) return explicit_path;
    if (f.input.empty()) return std::string();
    return (fs::path(f.input) / name).string();
  };
  const std::string psi_path = pick(f.psi, "psi.csv");
  const std::string y_path = pick(f.y, "y.csv");
  std::string dual_path = pick(f.psi_dual, "psi_dual.csv");
  if (psi_path.empty() || y_path.empty()) {
    throw obp::ConfigError("recover needs --input DIR or both --psi and --y");
  }
  const obp::CMatrix psi = obp::read_matrix_csv(psi_path);
  const obp::CMatrix ymat = obp::read_matrix_csv(y_path);
  if (ymat.cols() != 1) throw obp::ConfigError("y must be a single column");
  obp::CMatrix dual = psi;
  if (f.oblique) {
    if (dual_path.empty() || !fs::exists(dual_path)) {
      throw obp::ConfigError("--oblique needs the dual matrix (psi_dual.csv or --psi-dual)");
    }
    dual = obp::read_matrix_csv(dual_path);
  }
  const obp::CVector y = ymat.col(0);
  const auto result = obp::run_pursuit(psi, dual, y, cfg);
  obp::Json j = obp::to_json(result);
  j["algorithm"] = f.alg;
  j["oblique"] = f.oblique;
  emit(f.output, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
  return 0;
}

struct ConstantsFlags {
  std::string input;
  long long sparsity = 0;
  long long m = 10;
  long long n = 12;
  double perturb = 0.1;
  std::uint64_t seed = 1;
  std::uint64_t budget = obp::kDefaultEnumerationBudget;
  unsigned threads = 1;
  bool timing = false;
  std::string output;
};

int run_constants(const ConstantsFlags& f) {
  obp::CMatrix psi;
  obp::CMatrix dual;
  obp::Json source;
  if (!f.input.empty()) {
    psi = obp::read_matrix_csv((fs::path(f.input) / "psi.csv").string());
    const fs::path dual_path = fs::path(f.input) / "psi_dual.csv";
    dual = fs::exists(dual_path) ? obp::read_matrix_csv(dual_path.string()) : psi;
    source = obp::Json{{"input", f.input}};
  } else {
    if (f.m < 1 || f.n < 1) throw obp::ConfigError("--m and --n must be positive");
    obp::Rng rng(f.seed);
    const double scale = 1.0 / std::sqrt(static_cast<double>(f.m));
    psi = scale * rng.gaussian_matrix<obp::Complex>(f.m, f.n);
    dual = psi + f.perturb * scale * rng.gaussian_matrix<obp::Complex>(f.m, f.n);
    source = obp::Json{{"m", f.m}, {"n", f.n}, {"perturb", f.perturb}, {"seed", f.seed}};
  }
  if (f.sparsity < 1) throw obp::ConfigError("--sparsity must be >= 1");
  obp::EnumerationOptions opts;
  opts.budget = f.budget;
  opts.threads = f.threads;
  const obp::ConstantsReport r = obp::constants_report(psi, dual, f.sparsity, opts);
  obp::Json j{{"source", source}, {"report", obp::to_json(r, f.timing)}};
  if (f.sparsity < psi.cols()) j["cross_babel"] = obp::to_json(obp::cross_babel(psi, dual, f.sparsity));
  emit(f.output, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
  return 0;
}

struct VerifyFlags {
  long long trials = 100;
  std::uint64_t seed = 2012;
  std::string output;
  bool strict = false;
};

int run_verify(const VerifyFlags& f) {
  obp::LemmaSuiteOptions opt;
  opt.trials = f.trials;
  opt.seed = f.seed;
  const auto checks = obp::run_lemma_suite(opt);
  bool all = true;
  std::printf("%-18s %7s %7s %10s %12s  %s\n", "check", "trials", "skipped", "violations",
              "worst", "verdict");
  obp::Json j = obp::Json::array();
  for (const auto& c : checks) {
    const char* verdict = c.passed() ? "pass" : "FAIL";
    std::printf("%-18s %7lld %7lld %10lld %12.4e  %s%s\n", c.name.c_str(),
                static_cast<long long>(c.trials), static_cast<long long>(c.skipped),
                static_cast<long long>(c.violations), c.worst, verdict,
                c.diagnostic ? " (diagnostic)" : "");
    if (!c.diagnostic && !c.passed()) all = false;
    j.push_back(obp::to_json(c));
  }
  std::printf("suite verdict: %s\n", all ? "pass" : "FAIL");
  if (!f.output.empty()) obp::write_json(f.output, obp::Json{{"checks", j}, {"passed", all}});
  return f.strict && !all ? 1 : 0;
}

struct FrameFlags {
  std::string family = "partial-dft";
  long long d = 16;
  long long grid = 0;
  long long oversampling = 8;
  double kappa = 2.0;
  std::uint64_t seed = 1;
  std::string density = "uniform";
  double alpha = 1.0;
  std::string save_pair;
  long long m = 0;
  std::string output;
};

int run_frame_stats(const FrameFlags& f) {
  if (f.d < 1) throw obp::ConfigError("--d must be positive");
  obp::Rng rng(f.seed);
  std::optional<obp::FrameFamily> family;
  if (f.family == "partial-dft") {
    family = obp::FrameFamily::partial_dft(f.d, f.grid);
  } else if (f.family == "continuous-fourier") {
    family = obp::FrameFamily::continuous_fourier(f.d, f.oversampling);
  } else if (f.family == "masked-fourier") {
    obp::CVector mask(f.d);
    for (long long l = 0; l < f.d; ++l) {
      mask(l) = 1.0 + static_cast<double>(l) / static_cast<double>(std::max<long long>(1, f.d - 1));
    }
    family = obp::FrameFamily::masked_fourier(mask, f.grid);
  } else if (f.family == "synthetic") {
    family = obp::FrameFamily::random_synthetic(f.d, f.kappa, rng);
  } else {
    throw obp::ConfigError("unknown frame family '" + f.family + "'");
  }
  const Eigen::Index grid = family->grid_size();
  obp::SamplingDensity density = obp::SamplingDensity::uniform(grid);
  if (f.density == "variable-power") {
    density = obp::SamplingDensity::variable_power(grid, f.alpha);
  } else if (f.density != "uniform") {
    throw obp::ConfigError("unknown density '" + f.density + "'");
  }
  const obp::FrameOperatorStats st = obp::frame_operator_stats(*family);
  const obp::IsotropyGaps gaps = obp::isotropy_gaps(*family, density);
  obp::Json j{{"family", family->kind_name()},
              {"d", family->dimension()},
              {"grid", grid},
              {"theta_d", st.theta_d},
              {"kappa", st.kappa},
              {"nu_min", density.nu_min()},
              {"nu_max", density.nu_max()},
              {"frame_operator", obp::to_json(st)},
              {"density", obp::to_json(density)},
              {"sup_frame_norm", obp::frame_sup_norm(*family)},
              {"isotropy_gap", gaps.plain},
              {"dual_isotropy_gap", gaps.dual},
              {"preconditioned_gap", gaps.preconditioned}};
  if (!f.save_pair.empty()) {
    if (f.m < 1) throw obp::ConfigError("--save-pair needs --m >= 1");
    obp::save_sensing_pair(f.save_pair, obp::sample_sensing_pair(*family, density, f.m, f.seed));
    j["saved_pair"] = f.save_pair;
  }
  emit(f.output, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Oblique greedy pursuits: recovery, certificates and experiments"};
  app.require_subcommand(1);

  RecoverFlags rec;
  auto* recover = app.add_subcommand("recover", "run one pursuit on stored matrices");
  recover->add_option("--alg", rec.alg, "thres, mp, cosamp, sp, iht or htp")->required();
  recover->add_flag("--oblique", rec.oblique, "use the dual matrix (default: conventional)");
  recover->add_option("--sparsity", rec.sparsity, "sparsity level s")->required();
  recover->add_option("--max-iter", rec.max_iter, "iteration cap (default 3(s+1))");
  recover->add_option("--tol", rec.tol, "residual-change tolerance relative to ||y||");
  recover->add_option("--input", rec.input, "directory holding psi.csv, y.csv, psi_dual.csv");
  recover->add_option("--psi", rec.psi, "matrix file for Psi");
  recover->add_option("--psi-dual", rec.psi_dual, "matrix file for the dual");
  recover->add_option("--y", rec.y, "matrix file for y (one column)");
  recover->add_option("--output", rec.output, "JSON result path (default stdout)");

  ExperimentFlags pt;
  add_experiment_flags(app.add_subcommand("phase-transition", "phase-transition grid"), pt);
  ExperimentFlags ab;
  add_experiment_flags(app.add_subcommand("ab-compare", "paired conventional/oblique table"), ab);
  ExperimentFlags trend;
  add_experiment_flags(app.add_subcommand("rbop-trend", "restricted constants versus m"), trend);

  ConstantsFlags cf;
  auto* constants = app.add_subcommand("constants", "exact restricted constants");
  constants->add_option("--input", cf.input, "directory holding psi.csv and psi_dual.csv");
  constants->add_option("--sparsity", cf.sparsity, "sparsity level s")->required();
  constants->add_option("--m", cf.m, "rows of a generated pair");
  constants->add_option("--n", cf.n, "columns of a generated pair");
  constants->add_option("--perturb", cf.perturb, "dual perturbation of a generated pair");
  constants->add_option("--seed", cf.seed, "seed of a generated pair");
  constants->add_option("--budget", cf.budget, "maximum number of subsets");
  constants->add_option("--threads", cf.threads, "enumeration threads");
  constants->add_flag("--timing", cf.timing, "include wall-clock seconds");
  constants->add_option("--output", cf.output, "JSON output path (default stdout)");

  VerifyFlags vf;
  auto* verify = app.add_subcommand("verify", "randomized lemma suite");
  verify->add_option("--trials", vf.trials, "trials per check");
  verify->add_option("--seed", vf.seed, "seed");
  verify->add_option("--output", vf.output, "JSON report path");
  verify->add_flag("--strict", vf.strict, "exit 1 when a check fails");

  FrameFlags ff;
  auto* frame = app.add_subcommand("frame-stats", "frame operator and density statistics");
  frame->add_option("--family", ff.family,
                    "partial-dft, continuous-fourier, masked-fourier or synthetic");
  frame->add_option("--d", ff.d, "dimension d");
  frame->add_option("--grid", ff.grid, "grid size (default d)");
  frame->add_option("--oversampling", ff.oversampling, "grid factor for continuous-fourier");
  frame->add_option("--kappa", ff.kappa, "condition number for synthetic");
  frame->add_option("--seed", ff.seed, "seed");
  frame->add_option("--density", ff.density, "uniform or variable-power");
  frame->add_option("--alpha", ff.alpha, "variable-power exponent");
  frame->add_option("--save-pair", ff.save_pair, "also sample and save a sensing pair to STEM");
  frame->add_option("--m", ff.m, "rows of the saved pair");
  frame->add_option("--output", ff.output, "JSON output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    if (*recover) return run_recover(rec);
    if (app.got_subcommand("phase-transition")) {
      return run_grid_command(pt, obp::ExperimentKind::PhaseTransition);
    }
    if (app.got_subcommand("ab-compare")) {
      return run_grid_command(ab, obp::ExperimentKind::AbComparison);
    }
    if (app.got_subcommand("rbop-trend")) return run_trend_command(trend);
    if (*constants) return run_constants(cf);
    if (*verify) return run_verify(vf);
    if (*frame) return run_frame_stats(ff);
  } catch (const obp::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

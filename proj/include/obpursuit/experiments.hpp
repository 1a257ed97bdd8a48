#ifndef OBPURSUIT_EXPERIMENTS_HPP_
#define OBPURSUIT_EXPERIMENTS_HPP_

// Seeded Monte-Carlo harnesses: phase transition, paired conventional vs
// oblique comparison, and the restricted-constant trend over m.
//
// Trial t of grid cell c draws everything from the stream
// derive_seed(master, {c, t}), so the aggregates do not depend on execution
// order or thread count. The synthetic frame is real, so trials run on real
// scalars.

#include "obpursuit/certificates.hpp"
#include "obpursuit/frames.hpp"
#include "obpursuit/pursuits.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace obpursuit {

enum class ExperimentKind { PhaseTransition, AbComparison, RbopTrend };

inline std::string experiment_kind_name(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::PhaseTransition: return "phase-transition";
    case ExperimentKind::AbComparison: return "ab-compare";
    case ExperimentKind::RbopTrend: return "rbop-trend";
  }
  return "unknown";
}

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::PhaseTransition;
  Index n = 256;
  std::vector<double> m_over_n = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  std::vector<double> s_over_m = {0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45, 0.5};
  Index reps = 50;
  std::optional<double> snr_db = 30.0;  // empty: noiseless
  double kappa = 2.0;
  std::string frame = "synthetic";
  std::string density = "uniform";
  double alpha = 1.0;
  std::string dictionary = "identity";
  bool distinct_rows = false;  // rows drawn without replacement
  std::vector<Algorithm> algorithms = all_algorithms();
  std::uint64_t seed = 1;
  std::string output;
  bool timing = false;
  unsigned threads = 1;
  // rbop-trend
  Index trend_s = 2;
  std::vector<Index> trend_m = {16, 32, 64};

  // Sets one field from its textual form; `where` prefixes diagnostics.
  void set(const std::string& key, const std::string& value, const std::string& where);

  void validate() const {
    if (n < 1) throw ConfigError("n must be >= 1");
    if (reps < 1) throw ConfigError("reps must be >= 1");
    if (m_over_n.empty() || s_over_m.empty()) throw ConfigError("grids must be nonempty");
    for (double r : m_over_n) {
      if (!(r > 0.0 && r <= 1.0)) throw ConfigError("m_over_n values must lie in (0, 1]");
    }
    for (double r : s_over_m) {
      if (!(r > 0.0 && r <= 1.0)) throw ConfigError("s_over_m values must lie in (0, 1]");
    }
    if (algorithms.empty()) throw ConfigError("algorithm list is empty");
    if (!(kappa >= 1.0)) throw ConfigError("kappa must be >= 1");
    if (frame != "synthetic") throw ConfigError("frame must be 'synthetic'");
    if (dictionary != "identity") throw ConfigError("dictionary must be 'identity'");
    if (density != "uniform" && density != "variable-power") {
      throw ConfigError("density must be 'uniform' or 'variable-power'");
    }
    if (threads < 1) throw ConfigError("threads must be >= 1");
    if (trend_s < 1 || trend_m.empty()) throw ConfigError("trend settings invalid");
  }

  SamplingDensity sampling_density(Index grid) const {
    return density == "uniform" ? SamplingDensity::uniform(grid)
                                : SamplingDensity::variable_power(grid, alpha);
  }
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream ss(s);
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

inline double to_double(const std::string& v, const std::string& where) {
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v.size()) throw ConfigError(where + ": '" + v + "' is not a number");
  return out;
}

inline long long to_integer(const std::string& v, const std::string& where) {
  std::size_t used = 0;
  long long out = 0;
  try {
    out = std::stoll(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v.size()) throw ConfigError(where + ": '" + v + "' is not an integer");
  return out;
}

inline bool to_bool(const std::string& v, const std::string& where) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError(where + ": '" + v + "' is not a boolean");
}

}  // namespace detail

inline void ExperimentConfig::set(const std::string& key, const std::string& value,
                                  const std::string& where) {
  const std::string v = detail::trim(value);
  auto doubles = [&] {
    std::vector<double> out;
    for (const auto& item : detail::split_list(v)) out.push_back(detail::to_double(item, where));
    if (out.empty()) throw ConfigError(where + ": empty list for '" + key + "'");
    return out;
  };
  if (key == "experiment") {
    bool found = false;
    for (auto k : {ExperimentKind::PhaseTransition, ExperimentKind::AbComparison,
                   ExperimentKind::RbopTrend}) {
      if (experiment_kind_name(k) == v) {
        kind = k;
        found = true;
      }
    }
    if (!found) throw ConfigError(where + ": unknown experiment '" + v + "'");
  } else if (key == "n") {
    n = detail::to_integer(v, where);
  } else if (key == "m_over_n") {
    m_over_n = doubles();
  } else if (key == "s_over_m") {
    s_over_m = doubles();
  } else if (key == "reps") {
    reps = detail::to_integer(v, where);
  } else if (key == "snr_db") {
    if (v == "none" || v == "inf") {
      snr_db.reset();
    } else {
      snr_db = detail::to_double(v, where);
    }
  } else if (key == "kappa") {
    kappa = detail::to_double(v, where);
  } else if (key == "frame") {
    frame = v;
  } else if (key == "density") {
    density = v;
  } else if (key == "alpha") {
    alpha = detail::to_double(v, where);
  } else if (key == "row_sampling") {
    if (v == "iid") {
      distinct_rows = false;
    } else if (v == "distinct") {
      distinct_rows = true;
    } else {
      throw ConfigError(where + ": row_sampling must be 'iid' or 'distinct'");
    }
  } else if (key == "dictionary") {
    dictionary = v;
  } else if (key == "algorithms") {
    algorithms.clear();
    for (const auto& item : detail::split_list(v)) {
      try {
        algorithms.push_back(parse_algorithm(item));
      } catch (const ConfigError& e) {
        throw ConfigError(where + ": " + e.what());
      }
    }
  } else if (key == "seed") {
    const long long s = detail::to_integer(v, where);
    if (s < 0) throw ConfigError(where + ": seed must be nonnegative");
    seed = static_cast<std::uint64_t>(s);
  } else if (key == "output") {
    output = v;
  } else if (key == "timing") {
    timing = detail::to_bool(v, where);
  } else if (key == "threads") {
    const long long t = detail::to_integer(v, where);
    if (t < 1) throw ConfigError(where + ": threads must be >= 1");
    threads = static_cast<unsigned>(t);
  } else if (key == "trend_s") {
    trend_s = detail::to_integer(v, where);
  } else if (key == "trend_m") {
    trend_m.clear();
    for (const auto& item : detail::split_list(v)) trend_m.push_back(detail::to_integer(item, where));
  } else {
    throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

// Flat key=value text; '#' starts a comment.
inline ExperimentConfig parse_experiment_config(std::istream& is,
                                                ExperimentConfig base = {},
                                                const std::string& source = "config") {
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const std::string where = source + ":" + std::to_string(lineno);
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(where + ": expected key=value");
    const std::string key = detail::trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError(where + ": missing key");
    base.set(key, line.substr(eq + 1), where);
  }
  return base;
}

inline ExperimentConfig load_experiment_config(const std::string& path,
                                               ExperimentConfig base = {}) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open config file " + path);
  return parse_experiment_config(is, std::move(base), path);
}

// One synthetic trial: frame Φ = √n UΣVᵀ, dual √n UΣ⁻¹Vᵀ, rows drawn i.i.d.
// from the density, D = I, x* with unit-magnitude random-sign entries.
struct TrialInstance {
  RMatrix psi;
  RMatrix psi_dual;
  std::vector<Index> rows;
  SupportSet support;
  RVector x;
  RVector noise;
  RVector y;
};

inline RMatrix synthetic_rows(const RMatrix& u, const RVector& sigma, const RMatrix& v,
                              const std::vector<Index>& rows, const RVector& row_scale) {
  const auto m = static_cast<Index>(rows.size());
  const Index n = u.rows();
  RMatrix vsel(m, n);
  for (Index k = 0; k < m; ++k) {
    vsel.row(k) = row_scale(k) * v.row(rows[static_cast<std::size_t>(k)]);
  }
  return vsel * sigma.asDiagonal() * u.transpose();
}

inline TrialInstance make_trial(Index n, Index m, Index s, double kappa,
                                const SamplingDensity& density, std::optional<double> snr_db,
                                std::uint64_t seed, bool distinct_rows = false) {
  Rng rng(seed);
  const RMatrix u = random_unitary<double>(n, rng);
  const RMatrix v = random_unitary<double>(n, rng);
  const RVector sigma = FrameFamily::linear_sigma(n, kappa);
  TrialInstance t;
  if (distinct_rows) {
    if (density.kind() != SamplingDensity::Kind::Uniform) {
      throw ConfigError("distinct row sampling needs the uniform density");
    }
    t.rows = rng.sample_without_replacement(n, m);
  } else {
    t.rows = draw_indices(density, m, rng);
  }
  const double c = std::sqrt(static_cast<double>(n) / static_cast<double>(m));
  RVector scale(m);
  RVector dual_scale(m);
  for (Index k = 0; k < m; ++k) {
    scale(k) = c;
    dual_scale(k) = c / density.weight(t.rows[static_cast<std::size_t>(k)]);
  }
  t.psi = synthetic_rows(u, sigma, v, t.rows, scale);
  t.psi_dual = synthetic_rows(u, sigma.cwiseInverse(), v, t.rows, dual_scale);
  t.support = SupportSet(rng.sample_without_replacement(n, s), n);
  t.x = RVector::Zero(n);
  for (Index j : t.support) t.x(j) = rng.sign();
  const RVector clean = t.psi * t.x;
  t.noise = RVector::Zero(m);
  if (snr_db) {
    RVector z = rng.gaussian_vector<double>(m);
    const double target = clean.norm() * std::pow(10.0, -*snr_db / 20.0);
    if (z.norm() > 0.0) z *= target / z.norm();
    t.noise = z;
  }
  t.y = clean + t.noise;
  return t;
}

// FNV-1a over the bytes of the instance data consumed by a pursuit.
inline std::uint64_t instance_digest(const TrialInstance& t) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&h](const double* p, Index count) {
    const auto* bytes = reinterpret_cast<const unsigned char*>(p);
    for (std::size_t i = 0; i < static_cast<std::size_t>(count) * sizeof(double); ++i) {
      h = (h ^ bytes[i]) * 0x100000001b3ULL;
    }
  };
  feed(t.psi.data(), t.psi.size());
  feed(t.psi_dual.data(), t.psi_dual.size());
  feed(t.x.data(), t.x.size());
  feed(t.noise.data(), t.noise.size());
  feed(t.y.data(), t.y.size());
  return h;
}

struct CellAggregate {
  double m_over_n = 0.0;
  double s_over_m = 0.0;
  Index m = 0;
  Index s = 0;
  Algorithm algorithm = Algorithm::Thres;
  bool oblique = false;
  Index successes = 0;
  Index trials = 0;
  double iteration_sum = 0.0;
  double runtime_ms_sum = 0.0;
  double relative_error_sum = 0.0;

  double success_rate() const { return trials > 0 ? double(successes) / double(trials) : 0.0; }
  double mean_iterations() const { return trials > 0 ? iteration_sum / double(trials) : 0.0; }
  double mean_runtime_ms() const { return trials > 0 ? runtime_ms_sum / double(trials) : 0.0; }
  double mean_relative_error() const {
    return trials > 0 ? relative_error_sum / double(trials) : 0.0;
  }
};

struct SkippedCell {
  double m_over_n = 0.0;
  double s_over_m = 0.0;
  std::string reason;
};

struct ExperimentGrid {
  ExperimentConfig config;
  std::vector<CellAggregate> cells;  // cell-major, then algorithm, then conventional/oblique
  std::vector<SkippedCell> skipped;
  std::uint64_t digest = 0;          // combined instance digest over all trials

  const CellAggregate* find(double m_over_n, double s_over_m, Algorithm a, bool oblique) const {
    for (const auto& c : cells) {
      if (c.m_over_n == m_over_n && c.s_over_m == s_over_m && c.algorithm == a &&
          c.oblique == oblique) {
        return &c;
      }
    }
    return nullptr;
  }

  // Number of grid cells with success rate ≥ 1/2.
  Index success_area(Algorithm a, bool oblique, double level = 0.5) const {
    Index area = 0;
    for (const auto& c : cells) {
      if (c.algorithm == a && c.oblique == oblique && c.trials > 0 &&
          c.success_rate() >= level) {
        ++area;
      }
    }
    return area;
  }
};

namespace detail {

struct TrialOutcome {
  bool success = false;
  Index iterations = 0;
  double runtime_ms = 0.0;
  double relative_error = 0.0;
};

inline TrialOutcome run_one(const PursuitProblem<double>& problem, const TrialInstance& t,
                            Algorithm a, Index s, bool timing) {
  PursuitConfig cfg;
  cfg.sparsity = s;
  cfg.algorithm = a;
  const auto start = std::chrono::steady_clock::now();
  const RecoveryResult<double> r = run_pursuit(problem, cfg);
  TrialOutcome out;
  if (timing) {
    out.runtime_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - start)
                         .count();
  }
  out.iterations = r.iterations;
  // Support recovery compares Ĵ, i.e. the support the algorithm returns.
  out.success = r.estimate.support() == t.support;
  out.relative_error = (r.estimate.dense() - t.x).norm() / t.x.norm();
  return out;
}

}  // namespace detail

// Runs every (cell, trial) and both variants of every configured algorithm on
// the same instance. Shared by phase_transition and ab_comparison.
inline ExperimentGrid run_grid(const ExperimentConfig& config) {
  config.validate();
  const Index n = config.n;
  const SamplingDensity density = config.sampling_density(n);
  ExperimentGrid grid;
  grid.config = config;

  struct Cell {
    std::size_t id;
    double mr;
    double sr;
    Index m;
    Index s;
  };
  std::vector<Cell> cells;
  std::size_t id = 0;
  for (double mr : config.m_over_n) {
    for (double sr : config.s_over_m) {
      const Index m = static_cast<Index>(std::lround(mr * static_cast<double>(n)));
      const Index s = static_cast<Index>(std::lround(sr * static_cast<double>(m)));
      if (m < 1) {
        grid.skipped.push_back({mr, sr, "m rounds to 0"});
      } else if (s < 1) {
        grid.skipped.push_back({mr, sr, "s rounds to 0"});
      } else if (s > m) {
        grid.skipped.push_back({mr, sr, "s exceeds m"});
      } else {
        cells.push_back({id, mr, sr, m, s});
      }
      ++id;
    }
  }

  const std::size_t n_alg = config.algorithms.size();
  const std::size_t per_trial = 2 * n_alg;
  const auto reps = static_cast<std::size_t>(config.reps);
  // outcomes[(cell · reps + t) · per_trial + 2·alg + oblique]
  std::vector<detail::TrialOutcome> outcomes(cells.size() * reps * per_trial);
  std::vector<std::uint64_t> digests(cells.size() * reps);

  auto do_trial = [&](std::size_t job) {
    const Cell& c = cells[job / reps];
    const std::size_t t = job % reps;
    const TrialInstance inst =
        make_trial(n, c.m, c.s, config.kappa, density, config.snr_db,
                   derive_seed(config.seed, {static_cast<std::uint64_t>(c.id),
                                             static_cast<std::uint64_t>(t)}),
                   config.distinct_rows);
    const std::uint64_t digest = instance_digest(inst);
    digests[job] = digest;
    const auto conventional = PursuitProblem<double>::conventional(inst.psi, inst.y);
    const PursuitProblem<double> oblique(inst.psi, inst.psi_dual, inst.y);
    for (std::size_t a = 0; a < n_alg; ++a) {
      for (int ob = 0; ob < 2; ++ob) {
        if (instance_digest(inst) != digest) {
          throw Error("paired trial integrity violated: instance changed between runs");
        }
        outcomes[job * per_trial + 2 * a + static_cast<std::size_t>(ob)] =
            detail::run_one(ob ? oblique : conventional, inst, config.algorithms[a], c.s,
                            config.timing);
      }
    }
  };

  const std::size_t jobs = cells.size() * reps;
  if (config.threads <= 1) {
    for (std::size_t j = 0; j < jobs; ++j) do_trial(j);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(config.threads);
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < config.threads; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t j = next++; j < jobs; j = next++) do_trial(j);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  std::uint64_t combined = 0x9e3779b97f4a7c15ULL;
  for (std::uint64_t d : digests) combined = mix64(combined ^ d);
  grid.digest = combined;

  for (std::size_t ci = 0; ci < cells.size(); ++ci) {
    const Cell& c = cells[ci];
    for (std::size_t a = 0; a < n_alg; ++a) {
      for (int ob = 0; ob < 2; ++ob) {
        CellAggregate agg;
        agg.m_over_n = c.mr;
        agg.s_over_m = c.sr;
        agg.m = c.m;
        agg.s = c.s;
        agg.algorithm = config.algorithms[a];
        agg.oblique = ob == 1;
        for (std::size_t t = 0; t < reps; ++t) {
          const auto& o =
              outcomes[(ci * reps + t) * per_trial + 2 * a + static_cast<std::size_t>(ob)];
          ++agg.trials;
          agg.successes += o.success ? 1 : 0;
          agg.iteration_sum += static_cast<double>(o.iterations);
          agg.runtime_ms_sum += o.runtime_ms;
          agg.relative_error_sum += o.relative_error;
        }
        grid.cells.push_back(agg);
      }
    }
  }
  return grid;
}

inline ExperimentGrid phase_transition(ExperimentConfig config) {
  config.kind = ExperimentKind::PhaseTransition;
  return run_grid(config);
}

inline ExperimentGrid ab_comparison(ExperimentConfig config) {
  config.kind = ExperimentKind::AbComparison;
  return run_grid(config);
}

namespace detail {

inline std::string fmt(double v, const char* spec = "%.10g") {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

}  // namespace detail

inline constexpr const char* kGridCsvHeader =
    "m_over_n,s_over_m,alg,oblique,successes,trials,mean_iters,mean_runtime_ms";

// Runtime is wall-clock and therefore only written when timing is enabled;
// otherwise the column holds NA so reruns are byte-identical.
inline void write_grid_csv(std::ostream& os, const ExperimentGrid& g) {
  os << kGridCsvHeader << '\n';
  for (const auto& c : g.cells) {
    os << detail::fmt(c.m_over_n) << ',' << detail::fmt(c.s_over_m) << ','
       << algorithm_name(c.algorithm) << ',' << (c.oblique ? 1 : 0) << ',' << c.successes
       << ',' << c.trials << ',' << detail::fmt(c.mean_iterations(), "%.6f") << ','
       << (g.config.timing ? detail::fmt(c.mean_runtime_ms(), "%.6f") : std::string("NA"))
       << '\n';
  }
}

inline constexpr const char* kAbCsvHeader =
    "m_over_n,s_over_m,alg,trials,conv_successes,obl_successes,conv_mean_rel_error,"
    "obl_mean_rel_error";

inline void write_ab_csv(std::ostream& os, const ExperimentGrid& g) {
  os << kAbCsvHeader << '\n';
  for (std::size_t i = 0; i + 1 < g.cells.size(); i += 2) {
    const auto& conv = g.cells[i];
    const auto& obl = g.cells[i + 1];
    os << detail::fmt(conv.m_over_n) << ',' << detail::fmt(conv.s_over_m) << ','
       << algorithm_name(conv.algorithm) << ',' << conv.trials << ',' << conv.successes << ','
       << obl.successes << ',' << detail::fmt(conv.mean_relative_error(), "%.9e") << ','
       << detail::fmt(obl.mean_relative_error(), "%.9e") << '\n';
  }
}

// One success-rate matrix per (algorithm, variant): rows follow s_over_m,
// columns follow m_over_n. Files are named <alg>_<conventional|oblique>.csv.
inline std::vector<std::string> write_plot_data(const std::filesystem::path& dir,
                                                const ExperimentGrid& g) {
  std::filesystem::create_directories(dir);
  std::vector<std::string> written;
  for (Algorithm a : g.config.algorithms) {
    for (bool ob : {false, true}) {
      const auto path =
          dir / (algorithm_name(a) + (ob ? "_oblique.csv" : "_conventional.csv"));
      std::ofstream os(path);
      if (!os) throw Error("cannot write " + path.string());
      os << "s_over_m\\m_over_n";
      for (double mr : g.config.m_over_n) os << ',' << detail::fmt(mr);
      os << '\n';
      for (double sr : g.config.s_over_m) {
        os << detail::fmt(sr);
        for (double mr : g.config.m_over_n) {
          const CellAggregate* c = g.find(mr, sr, a, ob);
          os << ',' << (c ? detail::fmt(c->success_rate(), "%.6f") : std::string("NA"));
        }
        os << '\n';
      }
      written.push_back(path.string());
    }
  }
  return written;
}

struct TrendRow {
  Index m = 0;
  Index draws = 0;
  double median_theta = 0.0;
  double median_delta_psi = 0.0;
  double median_delta_dual = 0.0;
};

struct TrendReport {
  ExperimentConfig config;
  std::vector<TrendRow> rows;
  // Exact grid sums on the tight partial-DFT frame with the configured
  // density: ‖𝔼A*A − I‖, ‖𝔼Ã*A − I‖, ‖𝔼Â*Â − I‖.
  double isotropy_gap = 0.0;
  double dual_isotropy_gap = 0.0;
  double preconditioned_gap = 0.0;
  double nu_min = 1.0;
  double nu_max = 1.0;
};

struct IsotropyGaps {
  double plain = 0.0;
  double dual = 0.0;
  double preconditioned = 0.0;
};

inline IsotropyGaps isotropy_gaps(const FrameFamily& family, const SamplingDensity& density) {
  const ExactExpectations e = exact_expectations(family, density);
  const CMatrix id = CMatrix::Identity(e.gram.rows(), e.gram.cols());
  return {spectral_norm(e.gram - id), spectral_norm(e.dual_gram - id),
          spectral_norm(e.preconditioned_gram - id)};
}

inline double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t k = v.size() / 2;
  return v.size() % 2 ? v[k] : 0.5 * (v[k - 1] + v[k]);
}

// Medians of θ_s(Ψ̃*Ψ), δ_s(Ψ), δ_s(Ψ̃) over `reps` draws of the synthetic
// frame pair for each m (D = I, so Ψ = A).
inline TrendReport rbop_trend(ExperimentConfig config) {
  config.kind = ExperimentKind::RbopTrend;
  config.validate();
  TrendReport rep;
  rep.config = config;
  const Index n = config.n;
  const SamplingDensity density = config.sampling_density(n);
  rep.nu_min = density.nu_min();
  rep.nu_max = density.nu_max();
  for (std::size_t mi = 0; mi < config.trend_m.size(); ++mi) {
    const Index m = config.trend_m[mi];
    if (m < 1) throw ConfigError("trend_m values must be >= 1");
    std::vector<double> theta;
    std::vector<double> dpsi;
    std::vector<double> ddual;
    for (Index r = 0; r < config.reps; ++r) {
      Rng rng(derive_seed(config.seed, {0x7472656eULL, static_cast<std::uint64_t>(mi),
                                        static_cast<std::uint64_t>(r)}));
      const RMatrix u = random_unitary<double>(n, rng);
      const RMatrix v = random_unitary<double>(n, rng);
      const RVector sigma = FrameFamily::linear_sigma(n, config.kappa);
      const std::vector<Index> rows = draw_indices(density, m, rng);
      const double c = std::sqrt(static_cast<double>(n) / static_cast<double>(m));
      RVector scale = RVector::Constant(m, c);
      RVector dual_scale(m);
      for (Index k = 0; k < m; ++k) {
        dual_scale(k) = c / density.weight(rows[static_cast<std::size_t>(k)]);
      }
      const CMatrix psi = synthetic_rows(u, sigma, v, rows, scale).cast<Complex>();
      const CMatrix dual =
          synthetic_rows(u, sigma.cwiseInverse(), v, rows, dual_scale).cast<Complex>();
      theta.push_back(restricted_biorthogonality_constant(psi, dual, config.trend_s).value);
      dpsi.push_back(restricted_isometry_constant(psi, config.trend_s).value);
      ddual.push_back(restricted_isometry_constant(dual, config.trend_s).value);
    }
    rep.rows.push_back({m, config.reps, median(theta), median(dpsi), median(ddual)});
  }
  const IsotropyGaps gaps = isotropy_gaps(FrameFamily::partial_dft(n), density);
  rep.isotropy_gap = gaps.plain;
  rep.dual_isotropy_gap = gaps.dual;
  rep.preconditioned_gap = gaps.preconditioned;
  return rep;
}

inline void write_trend_csv(std::ostream& os, const TrendReport& r) {
  os << "m,draws,median_theta,median_delta_psi,median_delta_dual\n";
  for (const auto& row : r.rows) {
    os << row.m << ',' << row.draws << ',' << detail::fmt(row.median_theta, "%.12g") << ','
       << detail::fmt(row.median_delta_psi, "%.12g") << ','
       << detail::fmt(row.median_delta_dual, "%.12g") << '\n';
  }
}

}  // namespace obpursuit

#endif  // OBPURSUIT_EXPERIMENTS_HPP_

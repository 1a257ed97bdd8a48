#ifndef OBPURSUIT_SERIALIZATION_HPP_
#define OBPURSUIT_SERIALIZATION_HPP_

// JSON views of reports and results, and CSV + JSON sidecar persistence for
// sensing pairs and dictionaries.

#include "obpursuit/certificates.hpp"
#include "obpursuit/dictionaries.hpp"
#include "obpursuit/experiments.hpp"
#include "obpursuit/frames.hpp"
#include "obpursuit/lemmas.hpp"
#include "obpursuit/matrix_io.hpp"
#include "obpursuit/pursuits.hpp"

#include "json.hpp"

#include <filesystem>
#include <fstream>

namespace obpursuit {

using Json = nlohmann::ordered_json;

inline Json to_json(const SupportSet& s) { return Json(s.indices()); }

template <typename Scalar>
Json scalar_json(Scalar v) {
  if constexpr (is_complex_v<Scalar>) {
    return Json::array({v.real(), v.imag()});
  } else {
    return Json(static_cast<double>(v));
  }
}

template <typename Scalar>
Json to_json(const SparseSignal<Scalar>& x) {
  Json values = Json::array();
  for (Index i = 0; i < x.values().size(); ++i) values.push_back(scalar_json(x.values()(i)));
  return Json{{"length", x.length()}, {"support", to_json(x.support())}, {"values", values}};
}

template <typename Scalar>
Json to_json(const RecoveryResult<Scalar>& r) {
  Json supports = Json::array();
  for (const auto& s : r.support_history) supports.push_back(to_json(s));
  Json out{{"estimate", to_json(r.estimate)},
           {"support", to_json(r.estimate.support())},
           {"iterations", r.iterations},
           {"termination", termination_name(r.termination)},
           {"residual_history", r.residual_history},
           {"support_history", supports}};
  if (!r.message.empty()) out["message"] = r.message;
  return out;
}

inline Json to_json(const RestrictedConstant& c) {
  return Json{{"value", c.value},
              {"subset", to_json(c.subset)},
              {"evaluated", c.evaluated},
              {"exact", c.exact}};
}

inline Json to_json(const ConstantsReport& r, bool with_timing = false) {
  Json out{{"s", r.s},
           {"delta_psi", to_json(r.delta_psi)},
           {"delta_dual", to_json(r.delta_dual)},
           {"theta", to_json(r.theta)},
           {"enumerated", r.enumerated}};
  if (with_timing) out["seconds"] = r.seconds;
  return out;
}

inline Json to_json(const CrossBabel& b) {
  return Json{{"mu1", b.mu1}, {"min_diag", b.min_diag}, {"ratio", b.ratio}, {"column", b.column}};
}

inline Json to_json(const ConvergenceConstants& c) {
  Json out{{"algorithm", algorithm_name(c.algorithm)},
           {"rho", c.rho},
           {"tau", c.tau},
           {"threshold", Json{{"k", c.threshold.k}, {"c", c.threshold.c}}},
           {"satisfied", c.satisfied}};
  out["rho_bar"] = c.rho_bar ? Json(*c.rho_bar) : Json(nullptr);
  out["tau_bar"] = c.tau_bar ? Json(*c.tau_bar) : Json(nullptr);
  return out;
}

inline Json to_json(const LemmaCheck& c) {
  return Json{{"name", c.name},          {"statement", c.statement},
              {"trials", c.trials},      {"skipped", c.skipped},
              {"violations", c.violations}, {"worst", c.worst},
              {"tolerance", c.tolerance}, {"diagnostic", c.diagnostic},
              {"passed", c.passed()}};
}

inline Json to_json(const FrameOperatorStats& s) {
  return Json{{"lambda_max", s.lambda_max}, {"lambda_min", s.lambda_min}, {"kappa", s.kappa},
              {"theta_d", s.theta_d},       {"optimal_scale", s.optimal_scale}};
}

inline Json to_json(const SamplingDensity& d) {
  return Json{{"kind", d.kind_name()}, {"grid", d.grid_size()}, {"alpha", d.alpha()},
              {"nu_min", d.nu_min()},  {"nu_max", d.nu_max()}};
}

inline Json to_json(const TrendReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    rows.push_back(Json{{"m", row.m},
                        {"draws", row.draws},
                        {"median_theta", row.median_theta},
                        {"median_delta_psi", row.median_delta_psi},
                        {"median_delta_dual", row.median_delta_dual}});
  }
  return Json{{"n", r.config.n},
              {"s", r.config.trend_s},
              {"kappa", r.config.kappa},
              {"seed", r.config.seed},
              {"nu_min", r.nu_min},
              {"nu_max", r.nu_max},
              {"isotropy_gap", r.isotropy_gap},
              {"dual_isotropy_gap", r.dual_isotropy_gap},
              {"preconditioned_gap", r.preconditioned_gap},
              {"rows", rows}};
}

inline Json grid_sidecar(const ExperimentGrid& g) {
  Json skipped = Json::array();
  for (const auto& s : g.skipped) {
    skipped.push_back(Json{{"m_over_n", s.m_over_n}, {"s_over_m", s.s_over_m}, {"reason", s.reason}});
  }
  Json algs = Json::array();
  for (Algorithm a : g.config.algorithms) algs.push_back(algorithm_name(a));
  Json areas = Json::object();
  for (Algorithm a : g.config.algorithms) {
    areas[algorithm_name(a)] = Json{{"conventional", g.success_area(a, false)},
                                    {"oblique", g.success_area(a, true)}};
  }
  char digest[17];
  std::snprintf(digest, sizeof(digest), "%016llx", static_cast<unsigned long long>(g.digest));
  return Json{{"experiment", experiment_kind_name(g.config.kind)},
              {"n", g.config.n},
              {"reps", g.config.reps},
              {"snr_db", g.config.snr_db ? Json(*g.config.snr_db) : Json("none")},
              {"kappa", g.config.kappa},
              {"density", g.config.density},
              {"seed", g.config.seed},
              {"algorithms", algs},
              {"m_over_n", g.config.m_over_n},
              {"s_over_m", g.config.s_over_m},
              {"success_area_cells", areas},
              {"instance_digest", digest},
              {"skipped", skipped}};
}

inline void write_json(const std::string& path, const Json& j) {
  std::ofstream os(path);
  if (!os) throw Error("cannot write " + path);
  os << j.dump(2) << '\n';
}

inline Json read_json(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw FormatError("cannot open " + path);
  try {
    return Json::parse(is);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(path + ": " + e.what());
  }
}

// <stem>_a.csv, <stem>_a_dual.csv and <stem>.json.
inline void save_sensing_pair(const std::string& stem, const SensingPair& p) {
  write_matrix_csv(stem + "_a.csv", p.a);
  write_matrix_csv(stem + "_a_dual.csv", p.a_dual);
  Json side{{"seed", p.seed},
            {"rows", p.rows()},
            {"dimension", p.dimension()},
            {"indices", p.indices},
            {"family", Json{{"kind", p.family.kind_name()},
                            {"dimension", p.family.dimension()},
                            {"grid", p.family.grid_size()},
                            {"scale", p.family.scale()}}},
            {"density", to_json(p.density)}};
  write_json(stem + ".json", side);
}

struct LoadedPair {
  CMatrix a;
  CMatrix a_dual;
  Json sidecar;
};

inline LoadedPair load_sensing_pair(const std::string& stem) {
  return {read_matrix_csv(stem + "_a.csv"), read_matrix_csv(stem + "_a_dual.csv"),
          read_json(stem + ".json")};
}

// <stem>_d.csv, <stem>_d_dual.csv and <stem>.json.
inline void save_dictionary(const std::string& stem, const DictionaryPair& d) {
  write_matrix_csv(stem + "_d.csv", d.d);
  write_matrix_csv(stem + "_d_dual.csv", d.d_dual);
  Json side{{"kind", dictionary_kind_name(d.spec.kind)},
            {"d", d.spec.d},
            {"n", d.spec.n},
            {"kappa", d.spec.kappa},
            {"block", d.spec.block},
            {"seed", d.spec.seed},
            {"delta", d.achieved_delta}};
  write_json(stem + ".json", side);
}

inline DictionaryPair load_dictionary(const std::string& stem) {
  DictionaryPair d;
  d.d = read_matrix_csv(stem + "_d.csv");
  d.d_dual = read_matrix_csv(stem + "_d_dual.csv");
  const Json side = read_json(stem + ".json");
  try {
    d.spec.kind = parse_dictionary_kind(side.at("kind").get<std::string>());
    d.spec.d = side.at("d").get<Index>();
    d.spec.n = side.at("n").get<Index>();
    d.spec.kappa = side.at("kappa").get<double>();
    d.spec.block = side.at("block").get<Index>();
    d.spec.seed = side.at("seed").get<std::uint64_t>();
    d.achieved_delta = side.at("delta").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(stem + ".json: " + e.what());
  }
  return d;
}

}  // namespace obpursuit

#endif  // OBPURSUIT_SERIALIZATION_HPP_

#ifndef OBPURSUIT_CERTIFICATES_HPP_
#define OBPURSUIT_CERTIFICATES_HPP_

// Restricted constants by exhaustive subset enumeration, coherence
// functionals, the recovery sufficient conditions, and the closed-form
// convergence constants of the iterative oblique pursuits.

#include "obpursuit/combinatorics.hpp"
#include "obpursuit/linalg.hpp"
#include "obpursuit/rng.hpp"

#include <Eigen/Eigenvalues>

#include <chrono>
#include <cmath>
#include <mutex>
#include <optional>
#include <thread>

namespace obpursuit {

inline constexpr std::uint64_t kDefaultEnumerationBudget = 1'000'000;

struct RestrictedConstant {
  double value = 0.0;
  SupportSet subset;         // an s-subset attaining the value
  std::uint64_t evaluated = 0;
  bool exact = true;         // false: Monte-Carlo lower bound
};

struct EnumerationOptions {
  std::uint64_t budget = kDefaultEnumerationBudget;
  unsigned threads = 1;
};

namespace detail {

// Maximum of `score(J)` over all s-subsets of [0, n). The combination index
// space is split into contiguous rank ranges, one per worker; ties are broken
// towards the lower rank so the attaining subset is independent of threading.
template <typename Score>
RestrictedConstant enumerate_max(Index n, Index s, const EnumerationOptions& opts,
                                 Score score) {
  if (s < 1 || s > n) {
    throw InvalidSparsity("restricted constant: sparsity " + std::to_string(s) +
                          " outside [1, " + std::to_string(n) + "]");
  }
  const std::uint64_t total =
      binomial(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(s));
  if (total > opts.budget) {
    throw EnumerationBudget("C(" + std::to_string(n) + ", " + std::to_string(s) + ") = " +
                            std::to_string(total) + " subsets exceeds the budget of " +
                            std::to_string(opts.budget) +
                            "; use the Monte-Carlo lower-bound mode");
  }
  const unsigned workers = std::max(1u, std::min<unsigned>(
      opts.threads, static_cast<unsigned>(std::min<std::uint64_t>(total, 64))));

  struct Best {
    double value = -1.0;
    std::uint64_t rank = 0;
    std::vector<Index> subset;
  };
  std::vector<Best> best(workers);
  auto work = [&](unsigned w) {
    const std::uint64_t lo = total * w / workers;
    const std::uint64_t hi = total * (w + 1) / workers;
    if (lo >= hi) return;
    auto cursor = CombinationCursor::at_rank(n, s, lo);
    for (std::uint64_t r = lo; r < hi; ++r, cursor.advance()) {
      const double v = score(cursor.indices());
      if (v > best[w].value) {
        best[w].value = v;
        best[w].rank = r;
        best[w].subset = cursor.indices();
      }
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  const Best* top = &best[0];
  for (const auto& b : best) {
    if (b.value > top->value || (b.value == top->value && b.rank < top->rank)) top = &b;
  }
  return {top->value, SupportSet(top->subset, n), total, true};
}

inline double hermitian_deviation(const CMatrix& gram_block) {
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(gram_block, Eigen::EigenvaluesOnly);
  const RVector& lambda = eig.eigenvalues();
  return std::max(lambda(lambda.size() - 1) - 1.0, 1.0 - lambda(0));
}

inline CMatrix block_minus_identity(const CMatrix& gram, const std::vector<Index>& J) {
  const auto k = static_cast<Index>(J.size());
  CMatrix b(k, k);
  for (Index j = 0; j < k; ++j) {
    for (Index i = 0; i < k; ++i) {
      b(i, j) = gram(J[static_cast<std::size_t>(i)], J[static_cast<std::size_t>(j)]);
    }
    b(j, j) -= 1.0;
  }
  return b;
}

}  // namespace detail

// δ_s(Ψ) = max_{|J|=s} max(λ_max(Ψ_J*Ψ_J) − 1, 1 − λ_min(Ψ_J*Ψ_J)).
inline RestrictedConstant restricted_isometry_constant(const CMatrix& psi, Index s,
                                                       const EnumerationOptions& opts = {}) {
  const CMatrix gram = psi.adjoint() * psi;
  return detail::enumerate_max(psi.cols(), s, opts, [&gram](const std::vector<Index>& J) {
    CMatrix b = detail::block_minus_identity(gram, J);
    b.diagonal().array() += 1.0;
    return detail::hermitian_deviation(b);
  });
}

// θ_s(Ψ̃*Ψ) = max_{|J|=s} ‖Ψ̃_J*Ψ_J − I_s‖. The bilinear definition
// sup |⟨y, (Ψ̃*Ψ − I)x⟩| over unit x, y supported on a common J is exactly
// the spectral norm of the J×J block of Ψ̃*Ψ − I.
inline RestrictedConstant restricted_biorthogonality_constant(
    const CMatrix& psi, const CMatrix& psi_dual, Index s,
    const EnumerationOptions& opts = {}) {
  if (psi.rows() != psi_dual.rows() || psi.cols() != psi_dual.cols()) {
    throw ShapeError("restricted biorthogonality constant: inconsistent shapes");
  }
  const CMatrix gram = psi_dual.adjoint() * psi;
  return detail::enumerate_max(psi.cols(), s, opts, [&gram](const std::vector<Index>& J) {
    return spectral_norm(detail::block_minus_identity(gram, J));
  });
}

// Certified lower bound on θ_s from `samples` uniformly drawn s-subsets, for
// sizes beyond the enumeration budget.
inline RestrictedConstant restricted_biorthogonality_lower_bound(
    const CMatrix& psi, const CMatrix& psi_dual, Index s, std::uint64_t samples,
    std::uint64_t seed) {
  const Index n = psi.cols();
  if (s < 1 || s > n) throw InvalidSparsity("lower bound: sparsity outside [1, n]");
  const CMatrix gram = psi_dual.adjoint() * psi;
  Rng rng(seed);
  RestrictedConstant out;
  out.value = -1.0;
  out.exact = false;
  for (std::uint64_t t = 0; t < samples; ++t) {
    std::vector<Index> J = rng.sample_without_replacement(n, s);
    std::sort(J.begin(), J.end());
    const double v = spectral_norm(detail::block_minus_identity(gram, J));
    if (v > out.value) {
      out.value = v;
      out.subset = SupportSet(J, n);
    }
  }
  out.evaluated = samples;
  return out;
}

struct ConstantsReport {
  Index s = 0;
  RestrictedConstant delta_psi;
  RestrictedConstant delta_dual;
  RestrictedConstant theta;
  double seconds = 0.0;
  std::uint64_t enumerated = 0;
};

inline ConstantsReport constants_report(const CMatrix& psi, const CMatrix& psi_dual, Index s,
                                        const EnumerationOptions& opts = {}) {
  const auto start = std::chrono::steady_clock::now();
  ConstantsReport r;
  r.s = s;
  r.delta_psi = restricted_isometry_constant(psi, s, opts);
  r.delta_dual = restricted_isometry_constant(psi_dual, s, opts);
  r.theta = restricted_biorthogonality_constant(psi, psi_dual, s, opts);
  r.enumerated = r.delta_psi.evaluated + r.delta_dual.evaluated + r.theta.evaluated;
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

struct CrossBabel {
  double mu1 = 0.0;       // μ̃₁(s, Ψ, Ψ̃)
  double min_diag = 0.0;  // min_j |ψ̃_j*ψ_j|
  double ratio = 0.0;     // μ̃₁ / min_j |ψ̃_j*ψ_j|
  Index column = 0;       // k attaining μ̃₁
};

// μ̃₁(s) = max_k max_{|J|=s, k∉J} Σ_{j∈J} |ψ̃_j*ψ_k|. For a fixed k the inner
// maximum takes the s largest off-diagonal magnitudes in column k.
inline CrossBabel cross_babel(const CMatrix& psi, const CMatrix& psi_dual, Index s) {
  const Index n = psi.cols();
  if (s < 1 || s >= n) throw InvalidSparsity("cross Babel function needs 1 <= s < n");
  const RMatrix mag = (psi_dual.adjoint() * psi).cwiseAbs();
  CrossBabel out;
  out.mu1 = -1.0;
  for (Index k = 0; k < n; ++k) {
    std::vector<double> col;
    col.reserve(static_cast<std::size_t>(n - 1));
    for (Index j = 0; j < n; ++j) {
      if (j != k) col.push_back(mag(j, k));
    }
    std::partial_sort(col.begin(), col.begin() + s, col.end(), std::greater<>());
    double sum = 0.0;
    for (Index i = 0; i < s; ++i) sum += col[static_cast<std::size_t>(i)];
    if (sum > out.mu1) {
      out.mu1 = sum;
      out.column = k;
    }
  }
  out.min_diag = mag.diagonal().minCoeff();
  if (!(out.min_diag > 0.0)) {
    throw DegeneratePair("cross Babel ratio: some ψ̃_j*ψ_j vanishes");
  }
  out.ratio = out.mu1 / out.min_diag;
  return out;
}

// min over nonempty J ⊆ supp(x) of ‖Π_J x‖_∞ / ‖Π_J x‖₂. For a subset whose
// largest magnitude is a_i the ratio is smallest when every smaller entry is
// included, so only the s "tail" subsets of the sorted magnitudes matter.
template <typename Scalar>
double dynamic_range(const SparseSignal<Scalar>& x) {
  std::vector<double> a;
  for (Index i = 0; i < x.values().size(); ++i) {
    const double v = std::abs(x.values()(i));
    if (v > 0.0) a.push_back(v);
  }
  if (a.empty()) throw InvalidSparsity("dynamic range of the zero vector");
  std::sort(a.begin(), a.end(), std::greater<>());
  double best = INFINITY;
  double tail = 0.0;
  for (std::size_t i = a.size(); i-- > 0;) {
    tail += a[i] * a[i];
    best = std::min(best, a[i] / std::sqrt(tail));
  }
  return best;
}

enum class Algorithm { Thres, Mp, Cosamp, Sp, Iht, Htp };

inline const std::vector<Algorithm>& all_algorithms() {
  static const std::vector<Algorithm> algs = {Algorithm::Thres,  Algorithm::Mp,
                                              Algorithm::Cosamp, Algorithm::Sp,
                                              Algorithm::Iht,    Algorithm::Htp};
  return algs;
}

inline std::string algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::Thres: return "thres";
    case Algorithm::Mp: return "mp";
    case Algorithm::Cosamp: return "cosamp";
    case Algorithm::Sp: return "sp";
    case Algorithm::Iht: return "iht";
    case Algorithm::Htp: return "htp";
  }
  return "unknown";
}

inline Algorithm parse_algorithm(const std::string& name) {
  for (Algorithm a : all_algorithms()) {
    if (algorithm_name(a) == name) return a;
  }
  throw ConfigError("unknown algorithm '" + name +
                    "' (expected thres, mp, cosamp, sp, iht or htp)");
}

// Multiplier k and threshold c in the linear-convergence condition θ_{ks} < c.
struct RbopThreshold {
  Index k = 0;
  double c = 0.0;
};

inline std::optional<RbopThreshold> rbop_threshold(Algorithm a) {
  switch (a) {
    case Algorithm::Cosamp: return RbopThreshold{4, 0.384};
    case Algorithm::Sp: return RbopThreshold{3, 0.325};
    case Algorithm::Iht: return RbopThreshold{3, 0.5};
    case Algorithm::Htp: return RbopThreshold{3, 0.577};
    default: return std::nullopt;
  }
}

// Scalar inputs of the recovery conditions; split out so the inequalities can
// be evaluated for given constants without enumerating anything.
struct ConditionInputs {
  Index s = 0;
  double theta_s1 = 0.0;          // θ_{s+1}(Ψ̃*Ψ)
  double min_abs = 0.0;           // min_{j∈J*} |x*_j|
  double norm2 = 0.0;             // ‖x*‖₂
  double dyn_range = 0.0;         // min_J ‖Π_J x*‖_∞ / ‖Π_J x*‖₂
  double max_dual_col = 0.0;      // max_j ‖ψ̃_j‖₂
  double norm_psi_support = 0.0;  // ‖Ψ_{J*}‖
  double norm_dual_support = 0.0; // ‖Ψ̃_{J*}‖
  double noise_norm = 0.0;        // ‖z‖₂
  std::optional<double> theta_3s; // θ_{3s}(Ψ̃*Ψ) when computed
  std::optional<double> theta_4s; // θ_{4s}(Ψ̃*Ψ) when computed
};

struct ConditionResult {
  std::string name;
  bool satisfied = false;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack() const { return lhs - rhs; }
};

struct SufficientConditionsReport {
  ConditionInputs inputs;
  ConditionResult thres;
  ConditionResult mp;
  std::vector<ConditionResult> iterative;  // Table-style θ_{ks} < c checks
};

inline SufficientConditionsReport evaluate_conditions(const ConditionInputs& in) {
  SufficientConditionsReport r;
  r.inputs = in;
  const double theta = in.theta_s1;
  // min|x*_j| > 2 θ_{s+1} ‖x*‖₂ + 2 max_j‖ψ̃_j‖ ‖z‖
  r.thres.name = "thres";
  r.thres.lhs = in.min_abs;
  r.thres.rhs = 2.0 * theta * in.norm2 + 2.0 * in.max_dual_col * in.noise_norm;
  r.thres.satisfied = r.thres.lhs > r.thres.rhs;
  // min|x*_j| (dyn − 2θ_{s+1}) > ‖Ψ_J*‖‖Ψ̃_J*‖/(1 − θ_{s+1}) · 2 max‖ψ̃_j‖ ‖z‖
  r.mp.name = "mp";
  r.mp.lhs = in.min_abs * (in.dyn_range - 2.0 * theta);
  if (theta < 1.0) {
    r.mp.rhs = in.norm_psi_support * in.norm_dual_support / (1.0 - theta) * 2.0 *
               in.max_dual_col * in.noise_norm;
    r.mp.satisfied = r.mp.lhs > r.mp.rhs;
  } else {
    r.mp.rhs = INFINITY;
    r.mp.satisfied = false;
  }
  for (Algorithm a : {Algorithm::Cosamp, Algorithm::Sp, Algorithm::Iht, Algorithm::Htp}) {
    const RbopThreshold t = *rbop_threshold(a);
    const std::optional<double> value = t.k == 4 ? in.theta_4s : in.theta_3s;
    if (!value) continue;
    ConditionResult c;
    c.name = algorithm_name(a);
    c.lhs = t.c;
    c.rhs = *value;
    c.satisfied = *value < t.c;
    r.iterative.push_back(c);
  }
  return r;
}

// Evaluates every condition exactly for the given instance. θ_{3s} and θ_{4s}
// are included only when 3s (resp. 4s) ≤ n and the enumeration fits the
// budget.
inline SufficientConditionsReport check_sufficient_conditions(
    const CMatrix& psi, const CMatrix& psi_dual, const SparseSignal<Complex>& x,
    double noise_norm, const EnumerationOptions& opts = {}) {
  const Index n = psi.cols();
  const SupportSet support = [&] {
    std::vector<Index> nz;
    for (Index i = 0; i < x.support().size(); ++i) {
      if (x.values()(i) != Complex(0.0)) nz.push_back(x.support()[i]);
    }
    return SupportSet(nz, n);
  }();
  const Index s = support.size();
  if (s < 1) throw InvalidSparsity("sufficient conditions need a nonzero x*");
  const CVector dense = x.dense();
  ConditionInputs in;
  in.s = s;
  in.theta_s1 = restricted_biorthogonality_constant(psi, psi_dual, std::min(s + 1, n), opts).value;
  in.min_abs = INFINITY;
  for (Index j : support) in.min_abs = std::min(in.min_abs, std::abs(dense(j)));
  in.norm2 = dense.norm();
  in.dyn_range = dynamic_range(SparseSignal<Complex>::from_dense(dense, support));
  in.max_dual_col = psi_dual.colwise().norm().maxCoeff();
  in.norm_psi_support = spectral_norm(select_columns(psi, support));
  in.norm_dual_support = spectral_norm(select_columns(psi_dual, support));
  in.noise_norm = noise_norm;
  auto try_theta = [&](Index k) -> std::optional<double> {
    if (k > n) return std::nullopt;
    try {
      return restricted_biorthogonality_constant(psi, psi_dual, k, opts).value;
    } catch (const EnumerationBudget&) {
      return std::nullopt;
    }
  };
  in.theta_3s = try_theta(3 * s);
  in.theta_4s = try_theta(4 * s);
  return evaluate_conditions(in);
}

// Constants of the per-iteration error recursion
//   ‖x_{t+1} − x*‖ ≤ ρ‖x_t − x*‖ + τ‖z‖
// and of the missed-component bound
//   ‖x_{t+1} − x*‖ ≤ ρ̄‖Π⊥_{J_{t+1}} x*‖ + τ̄‖z‖.
struct ConstantInputs {
  double theta = 0.0;          // θ_{ks}(Ψ̃*Ψ), k from the threshold table
  double delta_psi_s = 0.0;    // δ_s(Ψ)
  double delta_dual_2s = 0.0;  // δ_{2s}(Ψ̃)
  double delta_dual_4s = 0.0;  // δ_{4s}(Ψ̃)
};

struct ConvergenceConstants {
  Algorithm algorithm = Algorithm::Sp;
  double rho = 0.0;
  double tau = 0.0;
  std::optional<double> rho_bar;
  std::optional<double> tau_bar;
  RbopThreshold threshold;
  bool satisfied = false;
};

inline ConvergenceConstants convergence_constants(Algorithm alg, const ConstantInputs& in) {
  const auto table = rbop_threshold(alg);
  if (!table) {
    throw ConfigError("convergence constants exist only for cosamp, sp, iht and htp");
  }
  const double t = in.theta;
  if (!(t >= 0.0) || !(t < 1.0)) {
    throw UndefinedConstants("convergence constants need 0 <= theta < 1, got " +
                             std::to_string(t));
  }
  ConvergenceConstants c;
  c.algorithm = alg;
  c.threshold = *table;
  c.satisfied = t < table->c;
  const double t2 = t * t;
  switch (alg) {
    case Algorithm::Cosamp: {
      const double a = 1.0 + 3.0 * t2;
      const double dual = std::sqrt(1.0 + in.delta_dual_4s);
      c.rho = std::sqrt(4.0 * t2 * a / (1.0 - t2));
      c.tau = (std::sqrt(2.0 * a / (1.0 - t2)) + std::sqrt(a) / (1.0 - t) + std::sqrt(3.0)) * dual;
      c.rho_bar = std::sqrt(a / (1.0 - t2));
      c.tau_bar = (std::sqrt(a) / (1.0 - t) + std::sqrt(3.0)) * dual;
      break;
    }
    case Algorithm::Sp: {
      // Composition of the three one-step bounds: ρ = ρ₁ρ₂ρ₃,
      // τ = τ₁ + ρ₁τ₂ + ρ₁ρ₂τ₃.
      const double dual = std::sqrt(1.0 + in.delta_dual_2s);
      const double rho1 = 1.0 / std::sqrt(1.0 - t2);
      const double tau1 = dual / (1.0 - t);
      const double rho2 = (1.0 + t) / (1.0 - t);
      const double tau2 = 2.0 * dual / (1.0 - t);
      const double q = 1.0 + 2.0 * t + 2.0 * t2;
      const double rho3 = std::max(t / (1.0 - t), 2.0 * t * (1.0 - t) / q);
      const double tau3 = std::max(1.0 / (1.0 - t), 2.0 * (1.0 - t) / q) * 2.0 *
                          std::sqrt(1.0 + in.delta_psi_s) * (1.0 + in.delta_dual_2s) / (1.0 - t);
      c.rho = rho1 * rho2 * rho3;
      c.tau = tau1 + rho1 * tau2 + rho1 * rho2 * tau3;
      c.rho_bar = rho1;
      c.tau_bar = std::sqrt(1.0 + in.delta_dual_4s) / (1.0 - t);
      break;
    }
    case Algorithm::Iht: {
      c.rho = 2.0 * t;
      c.tau = 2.0 * std::sqrt(1.0 + in.delta_dual_2s);
      break;
    }
    case Algorithm::Htp: {
      const double dual = std::sqrt(1.0 + in.delta_dual_2s);
      c.rho = std::sqrt(2.0 * t2 / (1.0 - t2));
      c.tau = (std::sqrt(2.0 / (1.0 - t2)) + 1.0 / (1.0 - t)) * dual;
      c.rho_bar = 1.0 / std::sqrt(1.0 - t2);
      c.tau_bar = std::sqrt(1.0 + in.delta_dual_4s) / (1.0 - t);
      break;
    }
    default:
      break;
  }
  return c;
}

// Dyadic component bands B_j = {i : 2^{−(j+1)}‖x‖² < |x_i| ≤ 2^{−j}‖x‖²},
// j ∈ ℤ. Returns the band index of every nonzero entry.
template <typename Scalar>
std::vector<int> component_bands(const SparseSignal<Scalar>& x) {
  const double energy = x.values().squaredNorm();
  std::vector<int> bands;
  for (Index i = 0; i < x.values().size(); ++i) {
    const double a = std::abs(x.values()(i));
    if (a == 0.0) continue;
    const double r = a / energy;
    int j = static_cast<int>(std::floor(-std::log2(r)));
    while (std::ldexp(1.0, -(j + 1)) >= r) ++j;
    while (r > std::ldexp(1.0, -j)) --j;
    bands.push_back(j);
  }
  return bands;
}

template <typename Scalar>
Index profile(const SparseSignal<Scalar>& x) {
  std::vector<int> bands = component_bands(x);
  std::sort(bands.begin(), bands.end());
  return static_cast<Index>(std::unique(bands.begin(), bands.end()) - bands.begin());
}

struct IterationBound {
  Index profile = 0;
  double threshold = 0.0;       // t must exceed this
  Index iterations = 0;         // smallest integer t above the threshold
  double error_factor = 0.0;    // ‖x_t − x*‖ ≤ error_factor · ‖z‖
};

// t > L + p ln(1 + 2[ρ̄ + (τ/τ̄)(1 − ρ − η)] √(s/p)) / ln(1/(1 − η)).
template <typename Scalar>
IterationBound iteration_bound(const SparseSignal<Scalar>& x, double rho, double tau,
                               double rho_bar, double tau_bar, double eta, Index lead = 0) {
  if (!(eta > 0.0) || !(rho + eta < 1.0)) {
    throw UndefinedConstants("iteration bound needs eta > 0 and rho + eta < 1");
  }
  if (!(tau_bar > 0.0)) throw UndefinedConstants("iteration bound needs tau_bar > 0");
  IterationBound b;
  b.profile = profile(x);
  const Index s = x.nonzeros();
  if (b.profile == 0) return b;
  const double p = static_cast<double>(b.profile);
  const double inner =
      1.0 + 2.0 * (rho_bar + tau / tau_bar * (1.0 - rho - eta)) *
                std::sqrt(static_cast<double>(s) / p);
  b.threshold = static_cast<double>(lead) + p * std::log(inner) / std::log(1.0 / (1.0 - eta));
  b.iterations = static_cast<Index>(std::floor(b.threshold)) + 1;
  const double rho_l = std::pow(rho, static_cast<double>(lead));
  b.error_factor = rho_l * (tau * rho_bar / (1.0 - rho - eta) + tau_bar) +
                   (rho < 1.0 ? (1.0 - rho_l) / (1.0 - rho) : static_cast<double>(lead)) * tau;
  return b;
}

// Closed-form constants of the sampling theorems.
struct BoundInputs {
  double nu_min = 1.0;
  double nu_max = 1.0;
  double delta_dictionary = 0.0;  // δ_s(D) (rip / overcomplete) or δ_n(D) (biorthogonal)
  double theta_d = 0.0;           // θ_d(ΦΦ*)
  double incoherence = 1.0;       // K
  double one_norm = 1.0;          // ‖(D*D)⁻¹‖_{ℓ1→ℓ1}
  double sup_frame_norm = 0.0;    // sup_ω ‖φ_ω‖₂
  double max_atom_norm = 0.0;     // max_j ‖d_j‖₂
};

enum class BoundCase { Rip, Biorthogonal, Overcomplete };

struct BoundConstants {
  std::optional<double> k0;
  std::optional<double> k1;
  std::optional<double> k2;
};

inline BoundConstants bound_constants(const BoundInputs& in, BoundCase which) {
  if (!(in.nu_min > 0.0) || !(in.nu_min <= 1.0) || !(in.nu_max >= 1.0)) {
    throw UndefinedConstants("bound constants need 0 < nu_min <= 1 <= nu_max");
  }
  if (!(in.delta_dictionary >= 0.0) || !(in.delta_dictionary < 1.0) ||
      !(in.theta_d >= 0.0) || !(in.theta_d < 1.0)) {
    throw UndefinedConstants("bound constants need delta, theta_d in [0, 1)");
  }
  const double d = in.delta_dictionary;
  const double th = in.theta_d;
  BoundConstants out;
  if (which == BoundCase::Rip) {
    out.k0 = std::max(1.0 - in.nu_min, in.nu_max - 1.0) + in.nu_max * (d + th + d * th);
    return out;
  }
  const double spread = std::max(1.0 - 1.0 / in.nu_max, 1.0 / in.nu_min - 1.0);
  const double amp = std::max(in.nu_max, 1.0 / in.nu_min);
  const double frame_term = in.sup_frame_norm * th / (1.0 - th) * in.max_atom_norm;
  if (which == BoundCase::Biorthogonal) {
    out.k1 = spread + amp * (1.0 + d / (1.0 - d) + th / (1.0 - th) +
                             d * th / ((1.0 - d) * (1.0 - th)));
    out.k2 = in.one_norm / (in.nu_min * in.nu_min) * (in.incoherence + frame_term);
  } else {
    out.k1 = spread + amp * (1.0 + d + th / (1.0 - th) + d * th / (1.0 - th));
    out.k2 = (in.incoherence + frame_term) / in.nu_min;
  }
  return out;
}

struct PreservationReport {
  Index trials = 0;
  Index skipped = 0;
  Index violations = 0;
  double worst_slack = INFINITY;  // min over trials of θ_s(Ψ̃*Ψ) + tol − θ_s(projected)
  double theta = 0.0;
};

// For random Ĵ with |Ĵ| < s, compares θ_s of the projected pair
// (Ψ̃_{[n]∖Ĵ}, E Ψ_{[n]∖Ĵ}) against θ_s(Ψ̃*Ψ).
inline PreservationReport verify_projection_preservation(const CMatrix& psi,
                                                         const CMatrix& psi_dual, Index s,
                                                         Index trials, std::uint64_t seed,
                                                         double tol = 1e-9,
                                                         const EnumerationOptions& opts = {}) {
  const Index n = psi.cols();
  PreservationReport r;
  r.theta = restricted_biorthogonality_constant(psi, psi_dual, s, opts).value;
  Rng rng(seed);
  for (Index t = 0; t < trials; ++t) {
    ++r.trials;
    const Index k = rng.uniform_index(s);  // |Ĵ| ∈ [0, s)
    const SupportSet jhat(rng.sample_without_replacement(n, k), n);
    const SupportSet rest = jhat.complement();
    CMatrix projected = select_columns(psi, rest);
    if (!jhat.is_empty()) {
      try {
        const ObliqueProjector<Complex> e(psi, psi_dual, jhat);
        projected = e.apply(projected);
      } catch (const RankDeficiency&) {
        ++r.skipped;
        continue;
      }
    }
    const double value =
        restricted_biorthogonality_constant(projected, select_columns(psi_dual, rest),
                                            std::min(s, rest.size()), opts)
            .value;
    const double slack = r.theta + tol - value;
    r.worst_slack = std::min(r.worst_slack, slack);
    if (slack < 0.0) ++r.violations;
  }
  return r;
}

}  // namespace obpursuit

#endif  // OBPURSUIT_CERTIFICATES_HPP_

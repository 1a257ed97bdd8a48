#ifndef OBPURSUIT_PURSUITS_HPP_
#define OBPURSUIT_PURSUITS_HPP_

// Oblique greedy pursuits. Each algorithm takes the pair (Ψ, Ψ̃); passing
// Ψ̃ = Ψ gives the conventional algorithm.
//
// Inner loops work on the cross-Gram G = Ψ̃*Ψ and h = Ψ̃*y, so the proxy
// Ψ̃*(y − Ψx) is h − Gx and every weighted LS block is read off G.

#include "obpursuit/certificates.hpp"
#include "obpursuit/linalg.hpp"

#include <string>
#include <vector>

namespace obpursuit {

enum class Termination { MaxIter, ResidualStall, ExactFit, RankFailure };

inline std::string termination_name(Termination t) {
  switch (t) {
    case Termination::MaxIter: return "max-iter";
    case Termination::ResidualStall: return "residual-stall";
    case Termination::ExactFit: return "exact-fit";
    case Termination::RankFailure: return "rank-failure";
  }
  return "unknown";
}

struct PursuitConfig {
  Index sparsity = 1;
  Algorithm algorithm = Algorithm::Sp;
  bool oblique = true;
  Index max_iter = 0;            // 0: iteration_multiplier · (s + 1)
  Index iteration_multiplier = 3;
  double tolerance = 1e-8;       // residual-change stop, relative to ‖y‖
  double exact_fit = 1e-12;      // residual stop, relative to ‖y‖
  double singularity_floor = kDefaultSingularityFloor;
  bool record_iterates = false;

  Index effective_max_iter() const {
    return max_iter > 0 ? max_iter : iteration_multiplier * (sparsity + 1);
  }

  void validate() const {
    if (sparsity < 1) throw InvalidSparsity("sparsity must be >= 1");
    if (max_iter < 0 || iteration_multiplier < 1) {
      throw ConfigError("max iterations must be >= 1");
    }
    if (!(tolerance >= 0.0) || !(exact_fit >= 0.0)) {
      throw ConfigError("tolerances must be nonnegative");
    }
  }
};

template <typename Scalar>
struct RecoveryResult {
  SparseSignal<Scalar> estimate;
  Index iterations = 0;
  std::vector<double> residual_history;     // ‖y − Ψx_t‖, t = 0..iterations
  std::vector<SupportSet> support_history;  // supp(x_t), t = 0..iterations
  std::vector<SparseSignal<Scalar>> iterates;  // x_t when record_iterates is set
  Termination termination = Termination::MaxIter;
  std::string message;                      // rank-failure detail
};

// Ψ, Ψ̃, y and the derived cross-Gram quantities.
template <typename Scalar>
class PursuitProblem {
 public:
  PursuitProblem(Matrix<Scalar> psi, Matrix<Scalar> psi_dual, Vector<Scalar> y)
      : psi_(std::move(psi)), psi_dual_(std::move(psi_dual)), y_(std::move(y)) {
    if (psi_.rows() != psi_dual_.rows() || psi_.cols() != psi_dual_.cols() ||
        psi_.rows() != y_.size()) {
      throw ShapeError("pursuit: Ψ is " + std::to_string(psi_.rows()) + "×" +
                       std::to_string(psi_.cols()) + ", Ψ̃ is " +
                       std::to_string(psi_dual_.rows()) + "×" +
                       std::to_string(psi_dual_.cols()) + ", y has " +
                       std::to_string(y_.size()) + " entries");
    }
    gram_ = psi_dual_.adjoint() * psi_;
    proxy0_ = psi_dual_.adjoint() * y_;
    y_norm_ = static_cast<double>(y_.norm());
  }

  // Conventional problem: Ψ̃ = Ψ.
  static PursuitProblem conventional(Matrix<Scalar> psi, Vector<Scalar> y) {
    Matrix<Scalar> copy = psi;
    return PursuitProblem(std::move(psi), std::move(copy), std::move(y));
  }

  const Matrix<Scalar>& psi() const noexcept { return psi_; }
  const Matrix<Scalar>& psi_dual() const noexcept { return psi_dual_; }
  const Vector<Scalar>& y() const noexcept { return y_; }
  const Matrix<Scalar>& gram() const noexcept { return gram_; }
  Index rows() const noexcept { return psi_.rows(); }
  Index cols() const noexcept { return psi_.cols(); }
  double y_norm() const noexcept { return y_norm_; }

  // Ψ̃*(y − Ψx)
  Vector<Scalar> proxy(const SparseSignal<Scalar>& x) const {
    Vector<Scalar> p = proxy0_;
    for (Index i = 0; i < x.support().size(); ++i) {
      p -= gram_.col(x.support()[i]) * x.values()(i);
    }
    return p;
  }

  double residual_norm(const SparseSignal<Scalar>& x) const {
    Vector<Scalar> r = y_;
    for (Index i = 0; i < x.support().size(); ++i) {
      r -= psi_.col(x.support()[i]) * x.values()(i);
    }
    return static_cast<double>(r.norm());
  }

  SparseSignal<Scalar> weighted_ls(const SupportSet& J, double floor) const {
    return weighted_ls_solve_gram(gram_, proxy0_, J, rows(), floor);
  }

 private:
  Matrix<Scalar> psi_;
  Matrix<Scalar> psi_dual_;
  Vector<Scalar> y_;
  Matrix<Scalar> gram_;
  Vector<Scalar> proxy0_;
  double y_norm_ = 0.0;
};

namespace detail {

template <typename Scalar>
class Tracker {
 public:
  Tracker(const PursuitProblem<Scalar>& problem, const PursuitConfig& config)
      : problem_(problem), config_(config) {
    config.validate();
    result_.estimate = SparseSignal<Scalar>::zero(problem.cols());
    result_.residual_history.push_back(problem.y_norm());
    result_.support_history.push_back(result_.estimate.support());
    if (config.record_iterates) result_.iterates.push_back(result_.estimate);
  }

  const SparseSignal<Scalar>& current() const { return result_.estimate; }

  double record(SparseSignal<Scalar> x) {
    const double r = problem_.residual_norm(x);
    ++result_.iterations;
    result_.residual_history.push_back(r);
    result_.support_history.push_back(x.support());
    if (config_.record_iterates) result_.iterates.push_back(x);
    result_.estimate = std::move(x);
    return r;
  }

  // Applies the stopping rule after an iteration; true when the loop ends.
  bool should_stop() {
    const auto& h = result_.residual_history;
    const double scale = problem_.y_norm();
    if (h.back() <= config_.exact_fit * scale) {
      result_.termination = Termination::ExactFit;
      return true;
    }
    if (std::abs(h[h.size() - 1] - h[h.size() - 2]) < config_.tolerance * scale) {
      result_.termination = Termination::ResidualStall;
      return true;
    }
    if (result_.iterations >= config_.effective_max_iter()) {
      result_.termination = Termination::MaxIter;
      return true;
    }
    return false;
  }

  // Reason for single-pass algorithms that always run to completion.
  void finish_single_pass() {
    result_.termination = result_.residual_history.back() <= config_.exact_fit * problem_.y_norm()
                              ? Termination::ExactFit
                              : Termination::MaxIter;
  }

  RecoveryResult<Scalar> rank_failure(const RankDeficiency& e) {
    result_.termination = Termination::RankFailure;
    result_.message = e.what();
    return std::move(result_);
  }

  RecoveryResult<Scalar> take() { return std::move(result_); }

 private:
  const PursuitProblem<Scalar>& problem_;
  const PursuitConfig& config_;
  RecoveryResult<Scalar> result_;
};

template <typename Scalar>
SparseSignal<Scalar> threshold_sparse(const SparseSignal<Scalar>& x, Index s) {
  const SparseSignal<Scalar> kept = hard_threshold(x.values(), std::min(s, x.values().size()));
  std::vector<Index> idx;
  idx.reserve(static_cast<std::size_t>(kept.support().size()));
  for (Index i : kept.support()) idx.push_back(x.support()[i]);
  return SparseSignal<Scalar>::from_dense(x.dense(), SupportSet(std::move(idx), x.length()));
}

inline void check_sparsity(Index s, Index n) {
  if (s > n) {
    throw InvalidSparsity("sparsity " + std::to_string(s) + " exceeds " + std::to_string(n) +
                          " columns");
  }
}

}  // namespace detail

// Ĵ = supp H_s(Ψ̃*y), then a weighted LS refit on Ĵ.
template <typename Scalar>
RecoveryResult<Scalar> oblique_thresholding(const PursuitProblem<Scalar>& problem,
                                            const PursuitConfig& config) {
  detail::check_sparsity(config.sparsity, problem.cols());
  detail::Tracker<Scalar> track(problem, config);
  const SparseSignal<Scalar> proxy =
      hard_threshold(problem.proxy(track.current()), config.sparsity);
  try {
    track.record(problem.weighted_ls(proxy.support(), config.singularity_floor));
  } catch (const RankDeficiency& e) {
    track.record(proxy);
    return track.rank_failure(e);
  }
  track.finish_single_pass();
  return track.take();
}

// Exactly s greedy steps, each adding argmax_{k∉Ĵ} |(Ψ̃*(y − Ψx))_k|.
template <typename Scalar>
RecoveryResult<Scalar> oblique_mp(const PursuitProblem<Scalar>& problem,
                                  const PursuitConfig& config) {
  detail::check_sparsity(config.sparsity, problem.cols());
  detail::Tracker<Scalar> track(problem, config);
  std::vector<Index> chosen;
  for (Index step = 0; step < config.sparsity; ++step) {
    const Vector<Scalar> p = problem.proxy(track.current());
    Index best = -1;
    double best_mag = -1.0;
    for (Index k = 0; k < p.size(); ++k) {
      if (std::find(chosen.begin(), chosen.end(), k) != chosen.end()) continue;
      const double mag = static_cast<double>(std::abs(p(k)));
      if (mag > best_mag) {
        best_mag = mag;
        best = k;
      }
    }
    chosen.push_back(best);
    try {
      track.record(problem.weighted_ls(SupportSet(chosen, problem.cols()),
                                       config.singularity_floor));
    } catch (const RankDeficiency& e) {
      return track.rank_failure(e);
    }
  }
  track.finish_single_pass();
  return track.take();
}

// J̃ = supp(x_t) ∪ supp H_2s(proxy); b = weighted LS on J̃; x_{t+1} = H_s(b).
template <typename Scalar>
RecoveryResult<Scalar> oblique_cosamp(const PursuitProblem<Scalar>& problem,
                                      const PursuitConfig& config) {
  const Index s = config.sparsity;
  detail::check_sparsity(s, problem.cols());
  detail::Tracker<Scalar> track(problem, config);
  const Index widen = std::min(2 * s, problem.cols());
  while (true) {
    const SupportSet omega = hard_threshold(problem.proxy(track.current()), widen).support();
    const SupportSet merged = track.current().support().unite(omega);
    try {
      const SparseSignal<Scalar> b = problem.weighted_ls(merged, config.singularity_floor);
      track.record(detail::threshold_sparse(b, s));
    } catch (const RankDeficiency& e) {
      return track.rank_failure(e);
    }
    if (track.should_stop()) break;
  }
  return track.take();
}

// Augment by supp H_s(proxy), weighted LS on the union, prune to s, then a
// second weighted LS on the pruned support.
template <typename Scalar>
RecoveryResult<Scalar> oblique_sp(const PursuitProblem<Scalar>& problem,
                                  const PursuitConfig& config) {
  const Index s = config.sparsity;
  detail::check_sparsity(s, problem.cols());
  detail::Tracker<Scalar> track(problem, config);
  while (true) {
    const SupportSet added = hard_threshold(problem.proxy(track.current()), s).support();
    const SupportSet merged = track.current().support().unite(added);
    try {
      const SparseSignal<Scalar> b = problem.weighted_ls(merged, config.singularity_floor);
      const SupportSet pruned = detail::threshold_sparse(b, s).support();
      track.record(problem.weighted_ls(pruned, config.singularity_floor));
    } catch (const RankDeficiency& e) {
      return track.rank_failure(e);
    }
    if (track.should_stop()) break;
  }
  return track.take();
}

// x_{t+1} = H_s(x_t + Ψ̃*(y − Ψx_t)), unit step.
template <typename Scalar>
RecoveryResult<Scalar> oblique_iht(const PursuitProblem<Scalar>& problem,
                                   const PursuitConfig& config) {
  const Index s = config.sparsity;
  detail::check_sparsity(s, problem.cols());
  detail::Tracker<Scalar> track(problem, config);
  while (true) {
    const Vector<Scalar> step = track.current().dense() + problem.proxy(track.current());
    track.record(hard_threshold(step, s));
    if (track.should_stop()) break;
  }
  return track.take();
}

// Support of the IHT update, then a weighted LS refit on it.
template <typename Scalar>
RecoveryResult<Scalar> oblique_htp(const PursuitProblem<Scalar>& problem,
                                   const PursuitConfig& config) {
  const Index s = config.sparsity;
  detail::check_sparsity(s, problem.cols());
  detail::Tracker<Scalar> track(problem, config);
  while (true) {
    const Vector<Scalar> step = track.current().dense() + problem.proxy(track.current());
    try {
      track.record(problem.weighted_ls(hard_threshold(step, s).support(),
                                       config.singularity_floor));
    } catch (const RankDeficiency& e) {
      return track.rank_failure(e);
    }
    if (track.should_stop()) break;
  }
  return track.take();
}

template <typename Scalar>
RecoveryResult<Scalar> run_pursuit(const PursuitProblem<Scalar>& problem,
                                   const PursuitConfig& config) {
  switch (config.algorithm) {
    case Algorithm::Thres: return oblique_thresholding(problem, config);
    case Algorithm::Mp: return oblique_mp(problem, config);
    case Algorithm::Cosamp: return oblique_cosamp(problem, config);
    case Algorithm::Sp: return oblique_sp(problem, config);
    case Algorithm::Iht: return oblique_iht(problem, config);
    case Algorithm::Htp: return oblique_htp(problem, config);
  }
  throw ConfigError("unknown algorithm");
}

// With config.oblique false the dual is ignored and Ψ̃ := Ψ.
template <typename Scalar>
RecoveryResult<Scalar> run_pursuit(const Matrix<Scalar>& psi, const Matrix<Scalar>& psi_dual,
                                   const Vector<Scalar>& y, const PursuitConfig& config) {
  if (!config.oblique) {
    return run_pursuit(PursuitProblem<Scalar>::conventional(psi, y), config);
  }
  return run_pursuit(PursuitProblem<Scalar>(psi, psi_dual, y), config);
}

}  // namespace obpursuit

#endif  // OBPURSUIT_PURSUITS_HPP_

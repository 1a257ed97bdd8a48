#ifndef OBPURSUIT_FRAMES_HPP_
#define OBPURSUIT_FRAMES_HPP_

// Frame families over a finite index grid Ω, sampling densities on Ω, and the
// random frame matrices (A, Ã) drawn from them.
//
// Conventions. A frame is stored as the d×N matrix F whose column ω is φ_ω.
// Ω carries the uniform probability measure μ, so the frame operator is
// S = (1/N) F F*; the family is tight when S = I. A density ν is stored
// through its Radon-Nikodym weights w(ω) = dν/dμ(ω), which average to one;
// the probability of drawing ω is w(ω)/N.

#include "obpursuit/linalg.hpp"
#include "obpursuit/rng.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>

namespace obpursuit {

class SamplingDensity {
 public:
  enum class Kind { Uniform, VariablePower, Custom };

  static SamplingDensity uniform(Index grid_size) {
    check_grid(grid_size);
    return SamplingDensity(Kind::Uniform, 0.0, RVector::Ones(grid_size));
  }

  // Weight ∝ (1 + |f(ω)|)^(−α) where f(ω) is the signed frequency of grid
  // point ω (ω for ω < N/2, ω − N otherwise), i.e. centred at frequency 0.
  static SamplingDensity variable_power(Index grid_size, double alpha) {
    check_grid(grid_size);
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
      throw InvalidDensity("variable-power density needs alpha >= 0");
    }
    RVector w(grid_size);
    for (Index k = 0; k < grid_size; ++k) {
      w(k) = std::pow(1.0 + std::abs(static_cast<double>(signed_frequency(k, grid_size))),
                      -alpha);
    }
    return SamplingDensity(Kind::VariablePower, alpha, std::move(w));
  }

  static SamplingDensity custom(const RVector& weights) {
    check_grid(weights.size());
    for (Index k = 0; k < weights.size(); ++k) {
      if (!(weights(k) > 0.0) || !std::isfinite(weights(k))) {
        throw InvalidDensity("custom density weight at grid point " + std::to_string(k) +
                             " is not strictly positive");
      }
    }
    return SamplingDensity(Kind::Custom, 0.0, weights);
  }

  static Index signed_frequency(Index k, Index grid_size) {
    return k < (grid_size + 1) / 2 ? k : k - grid_size;
  }

  Kind kind() const noexcept { return kind_; }
  double alpha() const noexcept { return alpha_; }
  Index grid_size() const noexcept { return weights_.size(); }
  // dν/dμ per grid point; mean one.
  const RVector& weights() const noexcept { return weights_; }
  double weight(Index omega) const { return weights_(omega); }
  double nu_min() const noexcept { return nu_min_; }
  double nu_max() const noexcept { return nu_max_; }
  bool strictly_positive() const noexcept { return nu_min_ > 0.0; }

  RVector probabilities() const {
    return weights_ / static_cast<double>(weights_.size());
  }

  std::string kind_name() const {
    switch (kind_) {
      case Kind::Uniform: return "uniform";
      case Kind::VariablePower: return "variable-power";
      case Kind::Custom: return "custom";
    }
    return "unknown";
  }

 private:
  SamplingDensity(Kind kind, double alpha, RVector raw) : kind_(kind), alpha_(alpha) {
    const double mean = raw.mean();
    if (!(mean > 0.0)) throw InvalidDensity("density has zero total mass");
    weights_ = raw / mean;
    nu_min_ = weights_.minCoeff();
    nu_max_ = weights_.maxCoeff();
  }

  static void check_grid(Index grid_size) {
    if (grid_size < 1) throw InvalidDensity("density grid must have at least one point");
  }

  Kind kind_ = Kind::Uniform;
  double alpha_ = 0.0;
  RVector weights_;
  double nu_min_ = 1.0;
  double nu_max_ = 1.0;
};

class FrameFamily {
 public:
  enum class Kind { PartialDft, MaskedFourier, SyntheticBiorthogonal };

  // φ_ω = [1, e^{−j2πω/N}, …, e^{−j2π(d−1)ω/N}]ᵀ on an N-point grid. N = d is
  // the discrete Fourier basis; N > d realizes the continuous Fourier frame
  // on a refined grid.
  static FrameFamily partial_dft(Index d, Index grid_size = 0) {
    if (grid_size == 0) grid_size = d;
    check_dims(d, grid_size);
    FrameFamily f(Kind::PartialDft, d, grid_size);
    f.vectors_ = fourier_vectors(d, grid_size);
    return f;
  }

  static FrameFamily continuous_fourier(Index d, Index oversampling = 8) {
    return partial_dft(d, oversampling * d);
  }

  // φ_ω = Λ* (Fourier vector), Λ = diag(mask).
  static FrameFamily masked_fourier(const CVector& mask, Index grid_size = 0) {
    const Index d = mask.size();
    if (grid_size == 0) grid_size = d;
    check_dims(d, grid_size);
    for (Index l = 0; l < d; ++l) {
      if (std::abs(mask(l)) == 0.0) {
        throw DegenerateFrame("masked Fourier frame needs a mask without zero entries");
      }
    }
    FrameFamily f(Kind::MaskedFourier, d, grid_size);
    f.mask_ = mask;
    f.vectors_ = mask.conjugate().asDiagonal() * fourier_vectors(d, grid_size);
    return f;
  }

  // φ_ω are the columns of √d · U Σ V* (Ω has d points), so that the frame
  // operator is U Σ² U*.
  static FrameFamily synthetic(const CMatrix& u, const RVector& sigma, const CMatrix& v) {
    const Index d = sigma.size();
    if (u.rows() != d || u.cols() != d || v.rows() != d || v.cols() != d) {
      throw ShapeError("synthetic frame: U, V must be d×d");
    }
    if (sigma.minCoeff() <= 0.0) throw DegenerateFrame("synthetic frame: Σ must be positive");
    FrameFamily f(Kind::SyntheticBiorthogonal, d, d);
    f.u_ = u;
    f.sigma_ = sigma;
    f.v_ = v;
    f.vectors_ = std::sqrt(static_cast<double>(d)) * u *
                 sigma.cast<Complex>().asDiagonal() * v.adjoint();
    return f;
  }

  // Random real orthogonal U, V; Σ linear from sqrt(2/(1+κ)) to
  // sqrt(2κ/(1+κ)) so that κ(ΦΦ*) = κ with the optimal scaling already
  // applied. κ = 2 gives the √(2/3)…√(4/3) profile.
  static FrameFamily random_synthetic(Index d, double kappa, Rng& rng) {
    if (!(kappa >= 1.0)) throw DegenerateFrame("synthetic frame needs kappa >= 1");
    const CMatrix u = random_unitary<double>(d, rng).cast<Complex>();
    const CMatrix v = random_unitary<double>(d, rng).cast<Complex>();
    return synthetic(u, linear_sigma(d, kappa), v);
  }

  static RVector linear_sigma(Index d, double kappa) {
    const double lo = std::sqrt(2.0 / (1.0 + kappa));
    const double hi = std::sqrt(2.0 * kappa / (1.0 + kappa));
    if (d == 1) return RVector::Constant(1, 1.0);
    return RVector::LinSpaced(d, lo, hi);
  }

  Kind kind() const noexcept { return kind_; }
  Index dimension() const noexcept { return d_; }
  Index grid_size() const noexcept { return grid_; }
  double scale() const noexcept { return scale_; }
  const CVector& mask() const noexcept { return mask_; }
  const CMatrix& u() const noexcept { return u_; }
  const RVector& sigma() const noexcept { return sigma_; }
  const CMatrix& v() const noexcept { return v_; }

  // d×N matrix of frame vectors (including the scale factor).
  CMatrix vectors() const { return std::sqrt(scale_) * vectors_; }
  CVector vector(Index omega) const { return std::sqrt(scale_) * vectors_.col(omega); }

  // S = (1/N) F F*.
  CMatrix frame_operator() const {
    return scale_ * (vectors_ * vectors_.adjoint()) / static_cast<double>(grid_);
  }

  // Same family with ΦΦ* multiplied by c.
  FrameFamily scaled(double c) const {
    if (!(c > 0.0)) throw DegenerateFrame("frame scale must be positive");
    FrameFamily f = *this;
    f.scale_ *= c;
    return f;
  }

  std::string kind_name() const {
    switch (kind_) {
      case Kind::PartialDft: return "partial-dft";
      case Kind::MaskedFourier: return "masked-fourier";
      case Kind::SyntheticBiorthogonal: return "synthetic-biorthogonal";
    }
    return "unknown";
  }

  static CMatrix fourier_vectors(Index d, Index grid_size) {
    CMatrix f(d, grid_size);
    for (Index w = 0; w < grid_size; ++w) {
      for (Index l = 0; l < d; ++l) {
        // Reduce l·ω mod N before scaling so the phase stays accurate.
        const auto r = static_cast<double>((l * w) % grid_size);
        const double phase = -2.0 * std::numbers::pi * r / static_cast<double>(grid_size);
        f(l, w) = Complex(std::cos(phase), std::sin(phase));
      }
    }
    return f;
  }

 private:
  FrameFamily(Kind kind, Index d, Index grid) : kind_(kind), d_(d), grid_(grid) {}

  static void check_dims(Index d, Index grid_size) {
    if (d < 1) throw ShapeError("frame dimension must be positive");
    if (grid_size < d) throw DegenerateFrame("frame grid smaller than the dimension");
  }

  Kind kind_;
  Index d_;
  Index grid_;
  double scale_ = 1.0;
  CMatrix vectors_;
  CVector mask_;
  CMatrix u_;
  RVector sigma_;
  CMatrix v_;
};

// Synthesis pair (F, F̃) with (1/N) F̃ F* = I_d.
struct FramePair {
  CMatrix vectors;
  CMatrix dual_vectors;
};

// Canonical dual F̃ = S⁻¹ F.
inline FramePair dual_frame(const FrameFamily& family) {
  const CMatrix s = family.frame_operator();
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(s);
  const RVector lambda = eig.eigenvalues();
  if (!(lambda(0) > 1e-12 * std::max(1.0, lambda(lambda.size() - 1)))) {
    throw DegenerateFrame("frame operator is singular");
  }
  const CMatrix f = family.vectors();
  CMatrix s_inv = eig.eigenvectors() *
                  lambda.cwiseInverse().cast<Complex>().asDiagonal() *
                  eig.eigenvectors().adjoint();
  return {f, s_inv * f};
}

struct FrameOperatorStats {
  double lambda_max = 1.0;
  double lambda_min = 1.0;
  double kappa = 1.0;
  // θ_d(ΦΦ*) = ‖c·ΦΦ* − I‖ after the optimal scaling c.
  double theta_d = 0.0;
  double optimal_scale = 1.0;
};

// Optimal scaling c = 2/(λ₁ + λ_d) puts the spectrum symmetrically around one:
// λ₁ = 1 + (κ−1)/(κ+1), λ_d = 1 − (κ−1)/(κ+1).
inline FrameOperatorStats frame_operator_stats(const FrameFamily& family) {
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(family.frame_operator(), Eigen::EigenvaluesOnly);
  const RVector lambda = eig.eigenvalues();
  FrameOperatorStats st;
  st.lambda_min = lambda(0);
  st.lambda_max = lambda(lambda.size() - 1);
  if (!(st.lambda_min > 1e-12 * std::max(1.0, st.lambda_max))) {
    throw DegenerateFrame("frame operator is singular");
  }
  st.kappa = st.lambda_max / st.lambda_min;
  st.theta_d = (st.kappa - 1.0) / (st.kappa + 1.0);
  st.optimal_scale = 2.0 / (st.lambda_max + st.lambda_min);
  return st;
}

inline FrameFamily optimally_scaled(const FrameFamily& family) {
  return family.scaled(frame_operator_stats(family).optimal_scale);
}

// sup_ω ‖φ_ω‖₂.
inline double frame_sup_norm(const FrameFamily& family) {
  return family.vectors().colwise().norm().maxCoeff();
}

// sup_ω max_j |⟨φ_ω, d_j⟩|.
inline double incoherence(const FrameFamily& family, const CMatrix& dictionary) {
  return (family.vectors().adjoint() * dictionary).cwiseAbs().maxCoeff();
}

struct SensingPair {
  CMatrix a;
  CMatrix a_dual;
  std::vector<Index> indices;
  FrameFamily family;
  SamplingDensity density;
  std::uint64_t seed = 0;

  Index rows() const noexcept { return a.rows(); }
  Index dimension() const noexcept { return a.cols(); }
};

// Rows for a given index sequence:
//   A_k = (1/√m) conj(φ_{ω_k})ᵀ,  Ã_k = (1/√m) w(ω_k)⁻¹ conj(φ̃_{ω_k})ᵀ.
inline SensingPair assemble_sensing_pair(const FrameFamily& family,
                                         const SamplingDensity& density,
                                         std::vector<Index> indices, std::uint64_t seed = 0) {
  const auto m = static_cast<Index>(indices.size());
  if (m < 1) throw ShapeError("sensing pair needs m >= 1");
  if (density.grid_size() != family.grid_size()) {
    throw InvalidDensity("density grid size " + std::to_string(density.grid_size()) +
                         " does not match frame grid " +
                         std::to_string(family.grid_size()));
  }
  if (!density.strictly_positive()) {
    throw InvalidDensity("dual construction needs a strictly positive density");
  }
  const FramePair frames = dual_frame(family);
  SensingPair pair{CMatrix(m, family.dimension()), CMatrix(m, family.dimension()),
                   std::move(indices), family, density, seed};
  const double inv_sqrt_m = 1.0 / std::sqrt(static_cast<double>(m));
  for (Index k = 0; k < m; ++k) {
    const Index omega = pair.indices[static_cast<std::size_t>(k)];
    if (omega < 0 || omega >= family.grid_size()) throw BoundsError("frame index out of range");
    pair.a.row(k) = inv_sqrt_m * frames.vectors.col(omega).adjoint();
    pair.a_dual.row(k) =
        (inv_sqrt_m / density.weight(omega)) * frames.dual_vectors.col(omega).adjoint();
  }
  return pair;
}

// m indices drawn i.i.d. from ν (with replacement).
inline std::vector<Index> draw_indices(const SamplingDensity& density, Index m, Rng& rng) {
  const RVector p = density.probabilities();
  std::discrete_distribution<long long> draw(p.data(), p.data() + p.size());
  std::vector<Index> out(static_cast<std::size_t>(std::max<Index>(m, 0)));
  for (auto& w : out) w = static_cast<Index>(draw(rng.engine()));
  return out;
}

inline SensingPair sample_sensing_pair(const FrameFamily& family,
                                       const SamplingDensity& density, Index m,
                                       std::uint64_t seed) {
  if (m < 1) throw ShapeError("sensing pair needs m >= 1");
  if (!density.strictly_positive()) {
    throw InvalidDensity("dual construction needs a strictly positive density");
  }
  Rng rng(seed);
  return assemble_sensing_pair(family, density, draw_indices(density, m, rng), seed);
}

// Â_k = (1/√m) w(ω_k)^{−1/2} conj(φ_{ω_k})ᵀ, i.e. Â = Λ A with
// Λ = diag(w(ω_k)^{−1/2}).
inline CMatrix preconditioned_matrix(const SensingPair& pair) {
  if (!pair.density.strictly_positive()) {
    throw InvalidDensity("preconditioning needs a strictly positive density");
  }
  CMatrix out = pair.a;
  for (Index k = 0; k < out.rows(); ++k) {
    out.row(k) /= std::sqrt(pair.density.weight(pair.indices[static_cast<std::size_t>(k)]));
  }
  return out;
}

// Exact single-draw expectations, summed over the grid (no sampling). They do
// not depend on m.
struct ExactExpectations {
  CMatrix gram;                 // 𝔼 A*A
  CMatrix dual_gram;            // 𝔼 Ã*A
  CMatrix preconditioned_gram;  // 𝔼 Â*Â
};

inline ExactExpectations exact_expectations(const FrameFamily& family,
                                             const SamplingDensity& density) {
  if (density.grid_size() != family.grid_size()) {
    throw InvalidDensity("density grid does not match frame grid");
  }
  const FramePair frames = dual_frame(family);
  const RVector p = density.probabilities();
  const Index d = family.dimension();
  ExactExpectations e{CMatrix::Zero(d, d), CMatrix::Zero(d, d), CMatrix::Zero(d, d)};
  RVector ratio(p.size());
  for (Index w = 0; w < p.size(); ++w) ratio(w) = p(w) / density.weight(w);
  // 𝔼 A*A = Σ p φφ*, 𝔼 Ã*A = Σ (p/w) φ̃φ*, 𝔼 Â*Â = Σ (p/w) φφ*.
  e.gram = frames.vectors * p.cast<Complex>().asDiagonal() * frames.vectors.adjoint();
  e.dual_gram =
      frames.dual_vectors * ratio.cast<Complex>().asDiagonal() * frames.vectors.adjoint();
  e.preconditioned_gram =
      frames.vectors * ratio.cast<Complex>().asDiagonal() * frames.vectors.adjoint();
  return e;
}

}  // namespace obpursuit

#endif  // OBPURSUIT_FRAMES_HPP_

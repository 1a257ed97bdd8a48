#ifndef OBPURSUIT_DICTIONARIES_HPP_
#define OBPURSUIT_DICTIONARIES_HPP_

// Sparsifying dictionaries D (d×n) and their biorthogonal duals D̃.

#include "obpursuit/certificates.hpp"
#include "obpursuit/linalg.hpp"
#include "obpursuit/rng.hpp"

#include <Eigen/Eigenvalues>

#include <cstdint>
#include <string>

namespace obpursuit {

enum class DictionaryKind { Orthonormal, Invertible, BlockDiagonal, RipOvercomplete };

inline std::string dictionary_kind_name(DictionaryKind k) {
  switch (k) {
    case DictionaryKind::Orthonormal: return "orthonormal";
    case DictionaryKind::Invertible: return "invertible";
    case DictionaryKind::BlockDiagonal: return "block-diagonal";
    case DictionaryKind::RipOvercomplete: return "rip-overcomplete";
  }
  return "unknown";
}

inline DictionaryKind parse_dictionary_kind(const std::string& name) {
  for (auto k : {DictionaryKind::Orthonormal, DictionaryKind::Invertible,
                 DictionaryKind::BlockDiagonal, DictionaryKind::RipOvercomplete}) {
    if (dictionary_kind_name(k) == name) return k;
  }
  throw ConfigError("unknown dictionary kind '" + name + "'");
}

struct DictionarySpec {
  DictionaryKind kind = DictionaryKind::Orthonormal;
  Index d = 0;
  Index n = 0;
  double kappa = 1.0;           // target κ(D) (invertible, block-diagonal)
  Index block = 0;              // block size b (block-diagonal)
  Index rip_sparsity = 2;       // s at which δ_s(D) is certified (rip-overcomplete)
  double rip_threshold = 0.5;   // accept once δ_s(D) < threshold
  Index max_attempts = 1000;
  std::uint64_t seed = 0;
};

struct DictionaryPair {
  CMatrix d;
  CMatrix d_dual;
  DictionarySpec spec;
  double achieved_delta = 0.0;  // δ_n(D), or δ_s(D) for rip-overcomplete
};

// ‖D*D − I‖, i.e. δ_n(D).
inline double delta_n(const CMatrix& d) {
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(d.adjoint() * d, Eigen::EigenvaluesOnly);
  const RVector& l = eig.eigenvalues();
  return std::max(l(l.size() - 1) - 1.0, 1.0 - l(0));
}

// D̃ = D (D*D)⁻¹.
inline CMatrix dictionary_dual(const CMatrix& d, double floor = kDefaultSingularityFloor) {
  if (d.cols() > d.rows()) {
    throw RankDeficiency("dictionary dual needs full column rank (n > d)", INFINITY);
  }
  const CheckedSolver<Complex> solver(d.adjoint() * d, floor);
  return solver.solve(d.adjoint()).adjoint();
}

// Induced ℓ₁ norm of (D*D)⁻¹: its largest absolute column sum.
inline double dictionary_one_norm(const CMatrix& d, double floor = kDefaultSingularityFloor) {
  const CMatrix gram = d.adjoint() * d;
  const CheckedSolver<Complex> solver(gram, floor);
  const CMatrix inv = solver.solve(CMatrix::Identity(gram.rows(), gram.cols()));
  return inv.cwiseAbs().colwise().sum().maxCoeff();
}

// Singular values spread linearly between √(1−θ) and √(1+θ), θ = (κ²−1)/(κ²+1),
// so κ(D) = κ and the spectrum of D*D sits symmetrically around one.
inline RVector optimally_scaled_singular_values(Index k, double kappa) {
  if (!(kappa >= 1.0)) throw ConfigError("dictionary kappa must be >= 1");
  const double theta = (kappa * kappa - 1.0) / (kappa * kappa + 1.0);
  if (k == 1) return RVector::Constant(1, 1.0);
  return RVector::LinSpaced(k, std::sqrt(1.0 - theta), std::sqrt(1.0 + theta));
}

namespace detail {

inline CMatrix conditioned_block(Index k, double kappa, Rng& rng) {
  const RMatrix u = random_unitary<double>(k, rng);
  const RMatrix v = random_unitary<double>(k, rng);
  const RVector sigma = optimally_scaled_singular_values(k, kappa);
  return (u * sigma.asDiagonal() * v.transpose()).cast<Complex>();
}

}  // namespace detail

inline DictionaryPair make_dictionary(const DictionarySpec& spec) {
  if (spec.d < 1 || spec.n < 1) throw ShapeError("dictionary dimensions must be positive");
  Rng rng(spec.seed);
  DictionaryPair out;
  out.spec = spec;
  switch (spec.kind) {
    case DictionaryKind::Orthonormal: {
      if (spec.n > spec.d) throw ShapeError("orthonormal dictionary needs n <= d");
      out.d = random_unitary<double>(spec.d, rng).leftCols(spec.n).cast<Complex>();
      out.d_dual = out.d;
      out.achieved_delta = delta_n(out.d);
      return out;
    }
    case DictionaryKind::Invertible: {
      if (spec.n != spec.d) throw ShapeError("invertible dictionary needs d = n");
      out.d = detail::conditioned_block(spec.d, spec.kappa, rng);
      break;
    }
    case DictionaryKind::BlockDiagonal: {
      if (spec.n != spec.d) throw ShapeError("block-diagonal dictionary needs d = n");
      if (spec.block < 1 || spec.d % spec.block != 0) {
        throw ShapeError("block size " + std::to_string(spec.block) + " does not divide d = " +
                         std::to_string(spec.d));
      }
      out.d = CMatrix::Zero(spec.d, spec.n);
      for (Index b = 0; b < spec.d; b += spec.block) {
        out.d.block(b, b, spec.block, spec.block) =
            detail::conditioned_block(spec.block, spec.kappa, rng);
      }
      // Blockwise inverse keeps the pattern exactly.
      out.d_dual = CMatrix::Zero(spec.d, spec.n);
      for (Index b = 0; b < spec.d; b += spec.block) {
        out.d_dual.block(b, b, spec.block, spec.block) =
            dictionary_dual(out.d.block(b, b, spec.block, spec.block));
      }
      out.achieved_delta = delta_n(out.d);
      return out;
    }
    case DictionaryKind::RipOvercomplete: {
      if (spec.n <= spec.d) throw ShapeError("rip-overcomplete dictionary needs n > d");
      for (Index attempt = 0; attempt < spec.max_attempts; ++attempt) {
        RMatrix g = rng.gaussian_matrix<double>(spec.d, spec.n);
        g.colwise().normalize();
        const CMatrix cand = g.cast<Complex>();
        const double delta = restricted_isometry_constant(cand, spec.rip_sparsity).value;
        if (delta < spec.rip_threshold) {
          out.d = cand;
          out.d_dual = cand;
          out.achieved_delta = delta;
          return out;
        }
      }
      throw ConfigError("no dictionary with delta_" + std::to_string(spec.rip_sparsity) +
                        " below " + std::to_string(spec.rip_threshold) + " after " +
                        std::to_string(spec.max_attempts) + " draws");
    }
  }
  out.d_dual = dictionary_dual(out.d);
  out.achieved_delta = delta_n(out.d);
  return out;
}

// κ(D) = σ_max / σ_min.
inline double dictionary_condition(const CMatrix& d) {
  const RVector sv = singular_values(d);
  return sv(0) / sv(sv.size() - 1);
}

}  // namespace obpursuit

#endif  // OBPURSUIT_DICTIONARIES_HPP_

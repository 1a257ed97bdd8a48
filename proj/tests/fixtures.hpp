#ifndef OBPURSUIT_TESTS_FIXTURES_HPP_
#define OBPURSUIT_TESTS_FIXTURES_HPP_

// Random instance builders shared by the unit and acceptance tests.

#include "obpursuit/rng.hpp"
#include "obpursuit/types.hpp"

namespace fixture {

using namespace obpursuit;

// Gaussian Ψ (m×n, columns of expected unit norm) and Ψ̃ = (Ψ†)* + ε·G/√m.
// For m ≥ n this makes Ψ̃*Ψ = I + O(ε).
inline std::pair<CMatrix, CMatrix> near_biorthogonal(Index m, Index n, double eps, Rng& rng) {
  const double scale = 1.0 / std::sqrt(static_cast<double>(m));
  const CMatrix psi = scale * rng.gaussian_matrix<Complex>(m, n);
  const CMatrix pinv = psi.completeOrthogonalDecomposition().pseudoInverse();
  const CMatrix dual = pinv.adjoint() + eps * scale * rng.gaussian_matrix<Complex>(m, n);
  return {psi, dual};
}

// s-sparse vector with magnitudes in [lo, hi] and uniform random phases.
inline SparseSignal<Complex> random_sparse(Index n, Index s, double lo, double hi, Rng& rng) {
  std::vector<Index> idx = rng.sample_without_replacement(n, s);
  std::sort(idx.begin(), idx.end());
  CVector vals(s);
  for (Index i = 0; i < s; ++i) {
    const double mag = lo + (hi - lo) * rng.uniform();
    vals(i) = std::polar(mag, 2.0 * M_PI * rng.uniform());
  }
  return SparseSignal<Complex>(SupportSet(idx, n), vals);
}

inline CVector noise(Index m, double norm, Rng& rng) {
  CVector z = rng.gaussian_vector<Complex>(m);
  if (norm == 0.0) return CVector::Zero(m);
  return z * (norm / z.norm());
}

}  // namespace fixture

#endif  // OBPURSUIT_TESTS_FIXTURES_HPP_

#ifndef OBPURSUIT_LINALG_HPP_
#define OBPURSUIT_LINALG_HPP_

#include "obpursuit/types.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>

#include <cmath>
#include <numeric>
#include <optional>

namespace obpursuit {

// Default relative floor on the reciprocal condition number of Ψ̃_J*Ψ_J.
inline constexpr double kDefaultSingularityFloor = 1e-12;

// Spectral norm by dense SVD.
template <typename Derived>
double spectral_norm(const Eigen::MatrixBase<Derived>& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  using Scalar = typename Derived::Scalar;
  Eigen::JacobiSVD<Matrix<Scalar>> svd(m.eval());
  return static_cast<double>(svd.singularValues()(0));
}

// Singular values, descending.
template <typename Derived>
RVector singular_values(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  Eigen::JacobiSVD<Matrix<Scalar>> svd(m.eval());
  return svd.singularValues().template cast<double>();
}

template <typename Scalar>
Matrix<Scalar> select_columns(const Matrix<Scalar>& m, const SupportSet& J) {
  Matrix<Scalar> out(m.rows(), J.size());
  for (Index i = 0; i < J.size(); ++i) {
    if (J[i] >= m.cols()) throw BoundsError("column index out of range");
    out.col(i) = m.col(J[i]);
  }
  return out;
}

template <typename Scalar>
Matrix<Scalar> select_block(const Matrix<Scalar>& m, const SupportSet& rows,
                            const SupportSet& cols) {
  Matrix<Scalar> out(rows.size(), cols.size());
  for (Index j = 0; j < cols.size(); ++j) {
    for (Index i = 0; i < rows.size(); ++i) out(i, j) = m(rows[i], cols[j]);
  }
  return out;
}

template <typename Scalar>
Vector<Scalar> select_entries(const Vector<Scalar>& v, const SupportSet& J) {
  Vector<Scalar> out(J.size());
  for (Index i = 0; i < J.size(); ++i) out(i) = v(J[i]);
  return out;
}

// H_s: keep the s largest-magnitude entries. Equal magnitudes are resolved in
// favour of the lower index, so the result is fully deterministic. The
// returned support always has exactly s indices (kept entries may be zero).
template <typename Scalar>
SparseSignal<Scalar> hard_threshold(const Vector<Scalar>& x, Index s) {
  const Index n = x.size();
  if (s < 0 || s > n) {
    throw InvalidSparsity("hard threshold: sparsity " + std::to_string(s) +
                          " outside [0, " + std::to_string(n) + "]");
  }
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  RVector mag(n);
  for (Index i = 0; i < n; ++i) mag(i) = static_cast<double>(std::abs(x(i)));
  std::partial_sort(order.begin(), order.begin() + s, order.end(),
                    [&mag](Index a, Index b) {
                      if (mag(a) != mag(b)) return mag(a) > mag(b);
                      return a < b;
                    });
  order.resize(static_cast<std::size_t>(s));
  SupportSet support(std::move(order), n);
  return SparseSignal<Scalar>::from_dense(x, support);
}

// Π_J x.
template <typename Scalar>
Vector<Scalar> coordinate_project(const Vector<Scalar>& x, const SupportSet& J) {
  Vector<Scalar> out = Vector<Scalar>::Zero(x.size());
  for (Index k : J) {
    if (k >= x.size()) {
      throw BoundsError("coordinate projection: index " + std::to_string(k) +
                        " outside vector of length " + std::to_string(x.size()));
    }
    out(k) = x(k);
  }
  return out;
}

// LU factorization of a square cross-Gram block with a conditioning check.
template <typename Scalar>
class CheckedSolver {
 public:
  CheckedSolver(const Matrix<Scalar>& square, double floor) {
    if (square.rows() != square.cols()) throw ShapeError("solver needs a square matrix");
    if (square.rows() == 0) return;
    lu_.compute(square);
    rcond_ = static_cast<double>(lu_.rcond());
    // rcond() is unreliable once a pivot is exactly zero.
    const auto pivots = lu_.matrixLU().diagonal().cwiseAbs();
    if (!(pivots.minCoeff() > 0.0) || !std::isfinite(pivots.maxCoeff())) rcond_ = 0.0;
    if (!std::isfinite(rcond_) || rcond_ < floor) {
      throw RankDeficiency("cross-Gram block is numerically singular",
                           rcond_ > 0.0 ? 1.0 / rcond_ : INFINITY);
    }
  }

  template <typename Rhs>
  auto solve(const Eigen::MatrixBase<Rhs>& rhs) const {
    return lu_.solve(rhs);
  }

  double condition() const noexcept { return rcond_ > 0.0 ? 1.0 / rcond_ : INFINITY; }

 private:
  Eigen::PartialPivLU<Matrix<Scalar>> lu_;
  double rcond_ = 1.0;
};

// Solution of min ‖Ψ̃_J*(y − Ψx)‖ over supp(x) ⊆ J, i.e.
// x_J = (Ψ̃_J*Ψ_J)⁻¹ Ψ̃_J* y.
template <typename Scalar>
SparseSignal<Scalar> weighted_ls_solve(const Matrix<Scalar>& psi,
                                       const Matrix<Scalar>& psi_dual,
                                       const Vector<Scalar>& y, const SupportSet& J,
                                       double floor = kDefaultSingularityFloor) {
  if (psi.rows() != psi_dual.rows() || psi.cols() != psi_dual.cols() ||
      psi.rows() != y.size()) {
    throw ShapeError("weighted least squares: inconsistent shapes");
  }
  if (J.size() > psi.rows()) {
    throw RankDeficiency("weighted least squares: support larger than row count",
                         INFINITY);
  }
  if (J.is_empty()) return SparseSignal<Scalar>::zero(psi.cols());
  const Matrix<Scalar> psi_j = select_columns(psi, J);
  const Matrix<Scalar> dual_j = select_columns(psi_dual, J);
  const CheckedSolver<Scalar> solver(dual_j.adjoint() * psi_j, floor);
  Vector<Scalar> xj = solver.solve(dual_j.adjoint() * y);
  return SparseSignal<Scalar>(SupportSet(J.indices(), psi.cols()), std::move(xj));
}

// Same solve expressed through the precomputed cross-Gram G = Ψ̃*Ψ and
// proxy h = Ψ̃*y; used in the pursuit inner loops.
template <typename Scalar>
SparseSignal<Scalar> weighted_ls_solve_gram(const Matrix<Scalar>& gram,
                                            const Vector<Scalar>& proxy,
                                            const SupportSet& J, Index rows,
                                            double floor = kDefaultSingularityFloor) {
  if (J.size() > rows) {
    throw RankDeficiency("weighted least squares: support larger than row count",
                         INFINITY);
  }
  if (J.is_empty()) return SparseSignal<Scalar>::zero(gram.cols());
  const CheckedSolver<Scalar> solver(select_block(gram, J, J), floor);
  Vector<Scalar> xj = solver.solve(select_entries(proxy, J));
  return SparseSignal<Scalar>(SupportSet(J.indices(), gram.cols()), std::move(xj));
}

// E = I − Ψ_J(Ψ̃_J*Ψ_J)⁻¹Ψ̃_J*, the oblique projection onto R(Ψ̃_J)^⊥ along
// R(Ψ_J).
template <typename Scalar>
class ObliqueProjector {
 public:
  ObliqueProjector(const Matrix<Scalar>& psi, const Matrix<Scalar>& psi_dual,
                   const SupportSet& J, double floor = kDefaultSingularityFloor)
      : basis_(select_columns(psi, J)),
        dual_(select_columns(psi_dual, J)),
        solver_(dual_.adjoint() * basis_, floor) {
    if (psi.rows() != psi_dual.rows() || psi.cols() != psi_dual.cols()) {
      throw ShapeError("oblique projector: inconsistent shapes");
    }
  }

  Index dimension() const noexcept { return basis_.rows(); }
  double condition() const noexcept { return solver_.condition(); }

  // E v
  Vector<Scalar> apply(const Vector<Scalar>& v) const {
    return v - apply_complement(v);
  }

  // (I − E) v = Ψ_J(Ψ̃_J*Ψ_J)⁻¹Ψ̃_J* v
  Vector<Scalar> apply_complement(const Vector<Scalar>& v) const {
    if (basis_.cols() == 0) return Vector<Scalar>::Zero(v.size());
    return basis_ * solver_.solve(dual_.adjoint() * v).eval();
  }

  Matrix<Scalar> apply(const Matrix<Scalar>& m) const {
    return m - complement_matrix() * m;
  }

  Matrix<Scalar> complement_matrix() const {
    if (basis_.cols() == 0) return Matrix<Scalar>::Zero(dimension(), dimension());
    return basis_ * solver_.solve(dual_.adjoint()).eval();
  }

  Matrix<Scalar> matrix() const {
    return Matrix<Scalar>::Identity(dimension(), dimension()) - complement_matrix();
  }

 private:
  Matrix<Scalar> basis_;
  Matrix<Scalar> dual_;
  CheckedSolver<Scalar> solver_;
};

template <typename Scalar>
ObliqueProjector<Scalar> build_oblique_projector(const Matrix<Scalar>& psi,
                                                 const Matrix<Scalar>& psi_dual,
                                                 const SupportSet& J,
                                                 double floor = kDefaultSingularityFloor) {
  return ObliqueProjector<Scalar>(psi, psi_dual, J, floor);
}

// Schur complement M/M22 for the trailing q×q block.
template <typename Scalar>
Matrix<Scalar> schur_complement(const Matrix<Scalar>& m, Index q) {
  const Index p = m.rows() - q;
  const Matrix<Scalar> m22 = m.bottomRightCorner(q, q);
  Eigen::CompleteOrthogonalDecomposition<Matrix<Scalar>> cod(m22);
  return m.topLeftCorner(p, p) -
         m.topRightCorner(p, q) * cod.pseudoInverse() * m.bottomLeftCorner(q, p);
}

inline CMatrix to_complex(const RMatrix& m) { return m.cast<Complex>(); }
inline CVector to_complex(const RVector& v) { return v.cast<Complex>(); }

// Real part, checking that the imaginary part is negligible.
inline std::optional<RMatrix> real_if_real(const CMatrix& m, double tol = 0.0) {
  if (m.size() > 0 && m.imag().cwiseAbs().maxCoeff() > tol) return std::nullopt;
  return RMatrix(m.real());
}

}  // namespace obpursuit

#endif  // OBPURSUIT_LINALG_HPP_

#ifndef OBPURSUIT_RNG_HPP_
#define OBPURSUIT_RNG_HPP_

#include "obpursuit/types.hpp"

#include <cstdint>
#include <initializer_list>
#include <random>

namespace obpursuit {

// SplitMix64 finalizer; used to derive independent stream seeds from
// (master seed, stream ids) so that trial t of cell c draws the same numbers
// whatever order trials are executed in.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master,
                                 std::initializer_list<std::uint64_t> stream_ids) {
  std::uint64_t h = mix64(master);
  for (std::uint64_t id : stream_ids) h = mix64(h ^ mix64(id + 0x632be59bd9b4e019ULL));
  return h;
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  Rng(std::uint64_t master, std::initializer_list<std::uint64_t> stream_ids)
      : engine_(derive_seed(master, stream_ids)) {}

  // Independent child stream; does not advance this generator.
  Rng split(std::uint64_t id) const {
    return Rng(derive_seed(seed_hash(), {id}));
  }

  double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }

  Index uniform_index(Index n) {
    return static_cast<Index>(
        std::uniform_int_distribution<long long>(0, static_cast<long long>(n) - 1)(engine_));
  }

  double sign() { return uniform_index(2) == 0 ? -1.0 : 1.0; }

  template <typename Scalar>
  Scalar gaussian() {
    if constexpr (is_complex_v<Scalar>) {
      const double re = normal();
      const double im = normal();
      return Scalar(re, im) / std::sqrt(2.0);
    } else {
      return static_cast<Scalar>(normal());
    }
  }

  template <typename Scalar>
  Matrix<Scalar> gaussian_matrix(Index rows, Index cols) {
    Matrix<Scalar> m(rows, cols);
    for (Index j = 0; j < cols; ++j) {
      for (Index i = 0; i < rows; ++i) m(i, j) = gaussian<Scalar>();
    }
    return m;
  }

  template <typename Scalar>
  Vector<Scalar> gaussian_vector(Index n) {
    Vector<Scalar> v(n);
    for (Index i = 0; i < n; ++i) v(i) = gaussian<Scalar>();
    return v;
  }

  // k distinct indices from [0, n), uniformly (partial Fisher-Yates).
  std::vector<Index> sample_without_replacement(Index n, Index k) {
    std::vector<Index> pool(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i;
    for (Index i = 0; i < k; ++i) {
      const Index j = i + uniform_index(n - i);
      std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
    }
    pool.resize(static_cast<std::size_t>(k));
    return pool;
  }

  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::uint64_t seed_hash() const {
    // Snapshot of the engine state without advancing it.
    std::mt19937_64 copy = engine_;
    return copy();
  }

  std::mt19937_64 engine_;
};

// Haar-distributed unitary (orthogonal for real Scalar) via QR of a Gaussian
// matrix with the diagonal phase correction.
template <typename Scalar>
Matrix<Scalar> random_unitary(Index n, Rng& rng) {
  const Matrix<Scalar> g = rng.gaussian_matrix<Scalar>(n, n);
  Eigen::HouseholderQR<Matrix<Scalar>> qr(g);
  Matrix<Scalar> q = qr.householderQ() * Matrix<Scalar>::Identity(n, n);
  const Matrix<Scalar> r = qr.matrixQR().template triangularView<Eigen::Upper>();
  for (Index j = 0; j < n; ++j) {
    const Scalar d = r(j, j);
    const auto mag = std::abs(d);
    if (mag > 0) q.col(j) *= d / static_cast<Scalar>(mag);
  }
  return q;
}

}  // namespace obpursuit

#endif  // OBPURSUIT_RNG_HPP_

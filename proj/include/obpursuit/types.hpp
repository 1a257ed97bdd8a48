#ifndef OBPURSUIT_TYPES_HPP_
#define OBPURSUIT_TYPES_HPP_

#include <Eigen/Dense>

#include <algorithm>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace obpursuit {

using Index = Eigen::Index;
using Complex = std::complex<double>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using CMatrix = Matrix<Complex>;
using CVector = Vector<Complex>;
using RMatrix = Matrix<double>;
using RVector = Vector<double>;

template <typename Scalar>
using RealOf = typename Eigen::NumTraits<Scalar>::Real;

template <typename T>
struct is_complex : std::false_type {};
template <typename T>
struct is_complex<std::complex<T>> : std::true_type {};
template <typename T>
inline constexpr bool is_complex_v = is_complex<T>::value;

// Error hierarchy. Every failure surfaced by the library derives from Error so
// callers (the CLI in particular) can map them onto exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidSparsity : public Error {
 public:
  using Error::Error;
};

class BoundsError : public Error {
 public:
  using Error::Error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

class RankDeficiency : public Error {
 public:
  RankDeficiency(const std::string& what, double condition)
      : Error(what + " (condition estimate " + std::to_string(condition) + ")"),
        condition_(condition) {}
  double condition() const noexcept { return condition_; }

 private:
  double condition_;
};

class InvalidDensity : public Error {
 public:
  using Error::Error;
};

class DegenerateFrame : public Error {
 public:
  using Error::Error;
};

class DegeneratePair : public Error {
 public:
  using Error::Error;
};

class EnumerationBudget : public Error {
 public:
  using Error::Error;
};

class UndefinedConstants : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class FormatError : public Error {
 public:
  using Error::Error;
};

// Sorted, duplicate-free set of column indices into [0, ambient).
class SupportSet {
 public:
  SupportSet() = default;

  // Accepts indices in any order; duplicates and out-of-range entries throw.
  SupportSet(std::vector<Index> indices, Index ambient) : ambient_(ambient) {
    std::sort(indices.begin(), indices.end());
    for (std::size_t i = 0; i < indices.size(); ++i) {
      if (indices[i] < 0 || indices[i] >= ambient) {
        throw BoundsError("support index " + std::to_string(indices[i]) +
                          " outside [0, " + std::to_string(ambient) + ")");
      }
      if (i > 0 && indices[i] == indices[i - 1]) {
        throw BoundsError("duplicate support index " + std::to_string(indices[i]));
      }
    }
    indices_ = std::move(indices);
  }

  SupportSet(std::initializer_list<Index> indices, Index ambient)
      : SupportSet(std::vector<Index>(indices), ambient) {}

  static SupportSet all(Index ambient) {
    std::vector<Index> idx(static_cast<std::size_t>(ambient));
    for (Index i = 0; i < ambient; ++i) idx[static_cast<std::size_t>(i)] = i;
    return SupportSet(std::move(idx), ambient);
  }

  static SupportSet empty(Index ambient) { return SupportSet({}, ambient); }

  Index ambient() const noexcept { return ambient_; }
  Index size() const noexcept { return static_cast<Index>(indices_.size()); }
  bool is_empty() const noexcept { return indices_.empty(); }
  const std::vector<Index>& indices() const noexcept { return indices_; }
  Index operator[](Index i) const { return indices_[static_cast<std::size_t>(i)]; }
  auto begin() const noexcept { return indices_.begin(); }
  auto end() const noexcept { return indices_.end(); }

  bool contains(Index k) const {
    return std::binary_search(indices_.begin(), indices_.end(), k);
  }

  SupportSet unite(const SupportSet& other) const {
    std::vector<Index> out;
    out.reserve(indices_.size() + other.indices_.size());
    std::set_union(indices_.begin(), indices_.end(), other.indices_.begin(),
                   other.indices_.end(), std::back_inserter(out));
    return SupportSet(std::move(out), std::max(ambient_, other.ambient_));
  }

  // Indices of [0, ambient) not in this set.
  SupportSet complement() const {
    std::vector<Index> out;
    out.reserve(static_cast<std::size_t>(ambient_) - indices_.size());
    for (Index k = 0; k < ambient_; ++k) {
      if (!contains(k)) out.push_back(k);
    }
    return SupportSet(std::move(out), ambient_);
  }

  bool operator==(const SupportSet& other) const {
    return indices_ == other.indices_;
  }

 private:
  Index ambient_ = 0;
  std::vector<Index> indices_;
};

// Sparse coefficient vector: values stored in support order.
template <typename Scalar>
class SparseSignal {
 public:
  SparseSignal() = default;

  SparseSignal(SupportSet support, Vector<Scalar> values)
      : support_(std::move(support)), values_(std::move(values)) {
    if (values_.size() != support_.size()) {
      throw ShapeError("sparse signal: " + std::to_string(values_.size()) +
                       " values for a support of size " +
                       std::to_string(support_.size()));
    }
  }

  static SparseSignal zero(Index n) {
    return SparseSignal(SupportSet::empty(n), Vector<Scalar>());
  }

  static SparseSignal from_dense(const Vector<Scalar>& x, const SupportSet& support) {
    Vector<Scalar> values(support.size());
    for (Index i = 0; i < support.size(); ++i) values(i) = x(support[i]);
    return SparseSignal(support, std::move(values));
  }

  Index length() const noexcept { return support_.ambient(); }
  const SupportSet& support() const noexcept { return support_; }
  const Vector<Scalar>& values() const noexcept { return values_; }

  Vector<Scalar> dense() const {
    Vector<Scalar> x = Vector<Scalar>::Zero(length());
    for (Index i = 0; i < support_.size(); ++i) x(support_[i]) = values_(i);
    return x;
  }

  // Count of entries that are actually nonzero (support may carry zeros).
  Index nonzeros() const {
    Index count = 0;
    for (Index i = 0; i < values_.size(); ++i) {
      if (values_(i) != Scalar(0)) ++count;
    }
    return count;
  }

 private:
  SupportSet support_;
  Vector<Scalar> values_;
};

}  // namespace obpursuit

#endif  // OBPURSUIT_TYPES_HPP_

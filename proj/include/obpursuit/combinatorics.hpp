#ifndef OBPURSUIT_COMBINATORICS_HPP_
#define OBPURSUIT_COMBINATORICS_HPP_

#include "obpursuit/types.hpp"

#include <cstdint>
#include <limits>
#include <numeric>

namespace obpursuit {

// C(n, k), saturating at UINT64_MAX.
inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    const std::uint64_t num = n - k + i;
    // result * num / i, exact because the running product is a binomial.
    const std::uint64_t g = std::gcd(result, i);
    const std::uint64_t r = result / g;
    const std::uint64_t d = i / g;
    const std::uint64_t nn = num / d;
    if (r != 0 && nn > std::numeric_limits<std::uint64_t>::max() / r) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    result = r * nn;
  }
  return result;
}

// Lexicographic k-combinations of [0, n).
class CombinationCursor {
 public:
  CombinationCursor(Index n, Index k) : n_(n), idx_(static_cast<std::size_t>(k)) {
    for (Index i = 0; i < k; ++i) idx_[static_cast<std::size_t>(i)] = i;
    done_ = k > n;
  }

  // Cursor positioned at the combination of lexicographic rank `rank`.
  static CombinationCursor at_rank(Index n, Index k, std::uint64_t rank) {
    CombinationCursor c(n, k);
    Index next = 0;
    for (Index i = 0; i < k; ++i) {
      for (Index v = next; v < n; ++v) {
        const std::uint64_t block =
            binomial(static_cast<std::uint64_t>(n - v - 1), static_cast<std::uint64_t>(k - i - 1));
        if (rank < block) {
          c.idx_[static_cast<std::size_t>(i)] = v;
          next = v + 1;
          break;
        }
        rank -= block;
      }
    }
    return c;
  }

  bool done() const noexcept { return done_; }
  const std::vector<Index>& indices() const noexcept { return idx_; }

  void advance() {
    const auto k = static_cast<Index>(idx_.size());
    Index i = k - 1;
    while (i >= 0 && idx_[static_cast<std::size_t>(i)] == n_ - k + i) --i;
    if (i < 0) {
      done_ = true;
      return;
    }
    ++idx_[static_cast<std::size_t>(i)];
    for (Index j = i + 1; j < k; ++j) {
      idx_[static_cast<std::size_t>(j)] = idx_[static_cast<std::size_t>(j - 1)] + 1;
    }
  }

 private:
  Index n_;
  std::vector<Index> idx_;
  bool done_ = false;
};

}  // namespace obpursuit

#endif  // OBPURSUIT_COMBINATORICS_HPP_

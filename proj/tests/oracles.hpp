#ifndef OBPURSUIT_TESTS_ORACLES_HPP_
#define OBPURSUIT_TESTS_ORACLES_HPP_

// Independent reference implementations used as test oracles. They share no
// code with the library beyond Eigen: conventional pursuits solve their least
// squares problems by QR on Ψ_J, and restricted constants are obtained by
// power iteration over recursively enumerated subsets.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

namespace oracle {

using Cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using Idx = std::vector<Eigen::Index>;

// Indices of the k largest magnitudes, ties to the lower index, sorted.
inline Idx top_k(const Vec& v, Eigen::Index k) {
  Idx order(static_cast<std::size_t>(v.size()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return std::abs(v(a)) > std::abs(v(b)); });
  order.resize(static_cast<std::size_t>(k));
  std::sort(order.begin(), order.end());
  return order;
}

inline Idx merge(Idx a, const Idx& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

// argmin ‖y − Ψ_J c‖ embedded in length n.
inline Vec least_squares(const Mat& psi, const Vec& y, const Idx& J) {
  Mat sub(psi.rows(), static_cast<Eigen::Index>(J.size()));
  for (std::size_t i = 0; i < J.size(); ++i) sub.col(static_cast<Eigen::Index>(i)) = psi.col(J[i]);
  const Vec c = sub.colPivHouseholderQr().solve(y);
  Vec x = Vec::Zero(psi.cols());
  for (std::size_t i = 0; i < J.size(); ++i) x(J[i]) = c(static_cast<Eigen::Index>(i));
  return x;
}

inline Vec keep(const Vec& x, const Idx& J) {
  Vec out = Vec::Zero(x.size());
  for (auto j : J) out(j) = x(j);
  return out;
}

struct Trajectory {
  std::vector<Vec> iterates;  // x_0 = 0, x_1, ...
  Idx support;                // support of the last iterate as the algorithm tracks it
};

// Stopping rule shared with the library: exact fit, residual stall, iteration cap.
class Stopper {
 public:
  Stopper(const Mat& psi, const Vec& y, Eigen::Index max_iter)
      : psi_(psi), y_(y), scale_(y.norm()), max_iter_(max_iter), last_(y.norm()) {}

  bool stop(const Vec& x) {
    ++iter_;
    const double r = (y_ - psi_ * x).norm();
    const bool done = r <= 1e-12 * scale_ || std::abs(r - last_) < 1e-8 * scale_ ||
                      iter_ >= max_iter_;
    last_ = r;
    return done;
  }

 private:
  const Mat& psi_;
  const Vec& y_;
  double scale_;
  Eigen::Index max_iter_;
  double last_;
  Eigen::Index iter_ = 0;
};

inline Trajectory thresholding(const Mat& psi, const Vec& y, Eigen::Index s) {
  Trajectory t;
  t.iterates.push_back(Vec::Zero(psi.cols()));
  t.support = top_k(psi.adjoint() * y, s);
  t.iterates.push_back(least_squares(psi, y, t.support));
  return t;
}

inline Trajectory omp(const Mat& psi, const Vec& y, Eigen::Index s) {
  Trajectory t;
  Vec x = Vec::Zero(psi.cols());
  t.iterates.push_back(x);
  for (Eigen::Index step = 0; step < s; ++step) {
    const Vec corr = psi.adjoint() * (y - psi * x);
    Eigen::Index best = -1;
    double mag = -1.0;
    for (Eigen::Index k = 0; k < corr.size(); ++k) {
      if (std::find(t.support.begin(), t.support.end(), k) != t.support.end()) continue;
      if (std::abs(corr(k)) > mag) {
        mag = std::abs(corr(k));
        best = k;
      }
    }
    t.support.push_back(best);
    std::sort(t.support.begin(), t.support.end());
    x = least_squares(psi, y, t.support);
    t.iterates.push_back(x);
  }
  return t;
}

inline Trajectory cosamp(const Mat& psi, const Vec& y, Eigen::Index s) {
  Trajectory t;
  Vec x = Vec::Zero(psi.cols());
  t.iterates.push_back(x);
  Stopper stop(psi, y, 3 * (s + 1));
  while (true) {
    const Vec corr = psi.adjoint() * (y - psi * x);
    const Idx omega = top_k(corr, std::min<Eigen::Index>(2 * s, psi.cols()));
    const Idx merged = merge(t.support, omega);
    const Vec b = least_squares(psi, y, merged);
    Vec sub(static_cast<Eigen::Index>(merged.size()));
    for (std::size_t i = 0; i < merged.size(); ++i) sub(static_cast<Eigen::Index>(i)) = b(merged[i]);
    Idx picked;
    for (auto i : top_k(sub, std::min<Eigen::Index>(s, sub.size()))) picked.push_back(merged[static_cast<std::size_t>(i)]);
    t.support = picked;
    x = keep(b, picked);
    t.iterates.push_back(x);
    if (stop.stop(x)) break;
  }
  return t;
}

inline Trajectory subspace_pursuit(const Mat& psi, const Vec& y, Eigen::Index s) {
  Trajectory t;
  Vec x = Vec::Zero(psi.cols());
  t.iterates.push_back(x);
  Stopper stop(psi, y, 3 * (s + 1));
  while (true) {
    const Vec corr = psi.adjoint() * (y - psi * x);
    const Idx merged = merge(t.support, top_k(corr, s));
    const Vec b = least_squares(psi, y, merged);
    Vec sub(static_cast<Eigen::Index>(merged.size()));
    for (std::size_t i = 0; i < merged.size(); ++i) sub(static_cast<Eigen::Index>(i)) = b(merged[i]);
    Idx picked;
    for (auto i : top_k(sub, s)) picked.push_back(merged[static_cast<std::size_t>(i)]);
    t.support = picked;
    x = least_squares(psi, y, picked);
    t.iterates.push_back(x);
    if (stop.stop(x)) break;
  }
  return t;
}

inline Trajectory iht(const Mat& psi, const Vec& y, Eigen::Index s) {
  Trajectory t;
  Vec x = Vec::Zero(psi.cols());
  t.iterates.push_back(x);
  Stopper stop(psi, y, 3 * (s + 1));
  while (true) {
    const Vec g = x + psi.adjoint() * (y - psi * x);
    t.support = top_k(g, s);
    x = keep(g, t.support);
    t.iterates.push_back(x);
    if (stop.stop(x)) break;
  }
  return t;
}

inline Trajectory htp(const Mat& psi, const Vec& y, Eigen::Index s) {
  Trajectory t;
  Vec x = Vec::Zero(psi.cols());
  t.iterates.push_back(x);
  Stopper stop(psi, y, 3 * (s + 1));
  while (true) {
    const Vec g = x + psi.adjoint() * (y - psi * x);
    t.support = top_k(g, s);
    x = least_squares(psi, y, t.support);
    t.iterates.push_back(x);
    if (stop.stop(x)) break;
  }
  return t;
}

// Calls f(J) for every k-subset of [0, n), recursively.
inline void for_each_subset(Eigen::Index n, Eigen::Index k, const std::function<void(const Idx&)>& f) {
  Idx cur;
  std::function<void(Eigen::Index)> rec = [&](Eigen::Index start) {
    if (static_cast<Eigen::Index>(cur.size()) == k) {
      f(cur);
      return;
    }
    for (Eigen::Index v = start; v < n; ++v) {
      cur.push_back(v);
      rec(v + 1);
      cur.pop_back();
    }
  };
  rec(0);
}

inline Mat cols(const Mat& m, const Idx& J) {
  Mat out(m.rows(), static_cast<Eigen::Index>(J.size()));
  for (std::size_t i = 0; i < J.size(); ++i) out.col(static_cast<Eigen::Index>(i)) = m.col(J[i]);
  return out;
}

// sup |⟨v, M u⟩| over unit u, v by alternating maximization from several
// starts (converges to the top singular value).
inline double bilinear_max(const Mat& m, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  double best = 0.0;
  for (int start = 0; start < 3; ++start) {
    Vec u(m.cols());
    for (Eigen::Index i = 0; i < u.size(); ++i) u(i) = Cd(g(rng), g(rng));
    u.normalize();
    double val = 0.0;
    for (int it = 0; it < 20000; ++it) {
      Vec v = m * u;
      const double nv = v.norm();
      if (nv == 0.0) break;
      v /= nv;
      Vec w = m.adjoint() * v;
      const double nw = w.norm();
      if (nw == 0.0) break;
      u = w / nw;
      if (std::abs(nw - val) <= 1e-15 * std::max(1.0, nw) && it > 10) {
        val = nw;
        break;
      }
      val = nw;
    }
    best = std::max(best, val);
  }
  return best;
}

// θ_s via the bilinear form on every subset.
inline double rboc(const Mat& psi, const Mat& dual, Eigen::Index s, std::uint64_t seed = 5) {
  std::mt19937_64 rng(seed);
  double best = 0.0;
  for_each_subset(psi.cols(), s, [&](const Idx& J) {
    const Mat m = cols(dual, J).adjoint() * cols(psi, J) - Mat::Identity(s, s);
    best = std::max(best, bilinear_max(m, rng));
  });
  return best;
}

// δ_s via max |‖Ψx‖² − ‖x‖²| = largest |eigenvalue| of Ψ_J*Ψ_J − I.
inline double ric(const Mat& psi, Eigen::Index s, std::uint64_t seed = 7) {
  return rboc(psi, psi, s, seed);
}

// Lower bound on δ_s from random s-sparse unit vectors.
inline double ric_random_lower(const Mat& psi, Eigen::Index s, int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  const Eigen::Index n = psi.cols();
  double best = 0.0;
  for (int t = 0; t < samples; ++t) {
    Idx perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    Vec x = Vec::Zero(n);
    for (Eigen::Index i = 0; i < s; ++i) x(perm[static_cast<std::size_t>(i)]) = Cd(g(rng), g(rng));
    x.normalize();
    best = std::max(best, std::abs((psi * x).squaredNorm() - 1.0));
  }
  return best;
}

// μ̃₁ by exhaustive search over k and s-subsets avoiding k.
inline double cross_babel(const Mat& psi, const Mat& dual, Eigen::Index s) {
  const Eigen::Index n = psi.cols();
  double best = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    for_each_subset(n, s, [&](const Idx& J) {
      if (std::find(J.begin(), J.end(), k) != J.end()) return;
      double sum = 0.0;
      for (auto j : J) sum += std::abs(dual.col(j).dot(psi.col(k)));
      best = std::max(best, sum);
    });
  }
  return best;
}

// min over nonempty subsets J of supp(x) of ‖Π_J x‖_∞ / ‖Π_J x‖₂.
inline double dynamic_range(const std::vector<double>& mags) {
  const auto s = static_cast<Eigen::Index>(mags.size());
  double best = INFINITY;
  for (Eigen::Index k = 1; k <= s; ++k) {
    for_each_subset(s, k, [&](const Idx& J) {
      double mx = 0.0;
      double e = 0.0;
      for (auto j : J) {
        mx = std::max(mx, mags[static_cast<std::size_t>(j)]);
        e += mags[static_cast<std::size_t>(j)] * mags[static_cast<std::size_t>(j)];
      }
      best = std::min(best, mx / std::sqrt(e));
    });
  }
  return best;
}

}  // namespace oracle

#endif  // OBPURSUIT_TESTS_ORACLES_HPP_

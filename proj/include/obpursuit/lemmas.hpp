#ifndef OBPURSUIT_LEMMAS_HPP_
#define OBPURSUIT_LEMMAS_HPP_

// Randomized checks of the matrix identities and inequalities that the
// recovery guarantees rest on. Each check draws its own instances from a
// seeded stream and reports the number of violations beyond its tolerance.

#include "obpursuit/certificates.hpp"
#include "obpursuit/linalg.hpp"
#include "obpursuit/rng.hpp"

#include <string>
#include <vector>

namespace obpursuit {

struct LemmaCheck {
  std::string name;
  std::string statement;
  Index trials = 0;
  Index skipped = 0;
  Index violations = 0;
  double worst = 0.0;  // largest violation amount seen (0 when none)
  double tolerance = 0.0;
  bool diagnostic = false;  // reported only, not part of the pass verdict

  bool passed() const noexcept { return violations == 0; }
};

struct LemmaSuiteOptions {
  Index trials = 100;
  std::uint64_t seed = 2012;
};

namespace detail {

// Ψ (m×n) Gaussian with unit-norm-on-average columns and a perturbed dual.
inline std::pair<CMatrix, CMatrix> random_pair(Index m, Index n, double spread, Rng& rng) {
  const double scale = 1.0 / std::sqrt(static_cast<double>(m));
  const CMatrix psi = scale * rng.gaussian_matrix<Complex>(m, n);
  const CMatrix dual = psi + spread * scale * rng.gaussian_matrix<Complex>(m, n);
  return {psi, dual};
}

inline SupportSet random_subset(Index n, Index k, Rng& rng) {
  return SupportSet(rng.sample_without_replacement(n, k), n);
}

inline void note(LemmaCheck& c, double excess) {
  if (excess > 0.0) {
    ++c.violations;
    c.worst = std::max(c.worst, excess);
  }
}

}  // namespace detail

// ‖E² − E‖ ≤ tol · max(1, ‖E‖).
inline LemmaCheck check_idempotence(const LemmaSuiteOptions& opt) {
  LemmaCheck c{"idempotence", "E^2 = E for the oblique projector E", 0, 0, 0, 0.0, 1e-10};
  Rng rng(derive_seed(opt.seed, {1}));
  for (Index t = 0; t < opt.trials; ++t) {
    ++c.trials;
    auto [psi, dual] = detail::random_pair(12, 20, 0.5, rng);
    const SupportSet J = detail::random_subset(20, 1 + rng.uniform_index(5), rng);
    try {
      const CMatrix e = ObliqueProjector<Complex>(psi, dual, J).matrix();
      const double scale = std::max(1.0, spectral_norm(e));
      detail::note(c, spectral_norm(e * e - e) - c.tolerance * scale);
    } catch (const RankDeficiency&) {
      ++c.skipped;
    }
  }
  return c;
}

// |‖E‖ − ‖I − E‖| ≤ tol · ‖E‖ for E ∉ {0, I}.
inline LemmaCheck check_projector_norms(const LemmaSuiteOptions& opt) {
  LemmaCheck c{"ipsen", "||E|| = ||I - E|| for nontrivial idempotent E", 0, 0, 0, 0.0, 1e-8};
  Rng rng(derive_seed(opt.seed, {2}));
  for (Index t = 0; t < opt.trials; ++t) {
    ++c.trials;
    auto [psi, dual] = detail::random_pair(12, 20, 0.5, rng);
    const SupportSet J = detail::random_subset(20, 1 + rng.uniform_index(5), rng);
    try {
      const CMatrix e = ObliqueProjector<Complex>(psi, dual, J).matrix();
      const CMatrix comp = CMatrix::Identity(e.rows(), e.cols()) - e;
      const double ne = spectral_norm(e);
      detail::note(c, std::abs(ne - spectral_norm(comp)) - c.tolerance * ne);
    } catch (const RankDeficiency&) {
      ++c.skipped;
    }
  }
  return c;
}

// ‖M − I‖ = max(1 − σ_min(M), σ_max(M) − 1). With `hermitian` set the draws
// are Hermitian, the setting in which the identity is valid.
inline LemmaCheck check_identity_shift(const LemmaSuiteOptions& opt, bool hermitian = false) {
  LemmaCheck c{hermitian ? "pertub-hermitian" : "pertub",
               "||M - I|| = max(1 - s_min(M), s_max(M) - 1)", 0, 0, 0, 0.0, 1e-10};
  c.diagnostic = hermitian;
  Rng rng(derive_seed(opt.seed, {hermitian ? 31u : 3u}));
  for (Index t = 0; t < opt.trials; ++t) {
    ++c.trials;
    const Index k = 2 + rng.uniform_index(5);
    CMatrix m = CMatrix::Identity(k, k) +
                0.5 / std::sqrt(static_cast<double>(k)) * rng.gaussian_matrix<Complex>(k, k);
    if (hermitian) m = (0.5 * (m + m.adjoint())).eval();
    const RVector sv = singular_values(m);
    const double rhs = std::max(1.0 - sv(k - 1), sv(0) - 1.0);
    const double lhs = spectral_norm(m - CMatrix::Identity(k, k));
    detail::note(c, std::abs(lhs - rhs) - c.tolerance);
  }
  return c;
}

// σ₁(M) ≥ σ₁(M/M₂₂) and σ_j(M/M₂₂) ≥ σ_{j+q}(M), M₂₂ the trailing q×q block.
// With `psd` set the draws are Hermitian positive definite.
inline LemmaCheck check_schur_interlacing(const LemmaSuiteOptions& opt, bool psd = false) {
  LemmaCheck c{psd ? "sinh-psd" : "sinh",
               "s_1(M) >= s_1(M/M22) and s_j(M/M22) >= s_{j+q}(M)", 0, 0, 0, 0.0, 1e-9};
  c.diagnostic = psd;
  Rng rng(derive_seed(opt.seed, {psd ? 41u : 4u}));
  for (Index t = 0; t < opt.trials; ++t) {
    ++c.trials;
    const Index k = 3 + rng.uniform_index(5);
    const Index q = 1 + rng.uniform_index(k - 1);
    CMatrix m = rng.gaussian_matrix<Complex>(k, k);
    if (psd) m = (m * m.adjoint() + 0.1 * CMatrix::Identity(k, k)).eval();
    const RVector sv_m = singular_values(m);
    if (sv_m(k - 1) < 1e-8 * sv_m(0)) {
      ++c.skipped;
      continue;
    }
    const RVector sv_s = singular_values(schur_complement(m, q));
    double excess = sv_s(0) - sv_m(0) - c.tolerance;
    for (Index j = 0; j + q < k; ++j) {
      excess = std::max(excess, sv_m(j + q) - sv_s(j) - c.tolerance);
    }
    detail::note(c, excess);
  }
  return c;
}

// θ_s of the projected pair against θ_s(Ψ̃*Ψ), one random Ĵ per random pair.
// With `against_union` set the right-hand side is θ_{s+|Ĵ|}(Ψ̃*Ψ) instead.
inline LemmaCheck check_projection_preservation(const LemmaSuiteOptions& opt,
                                                bool against_union = false) {
  LemmaCheck c{against_union ? "rbpwoblp-union" : "rbpwoblp",
               against_union ? "theta_s(projected) <= theta_{s+|J|}(pair)"
                             : "theta_s(projected) <= theta_s(pair)",
               0, 0, 0, 0.0, 1e-9};
  c.diagnostic = against_union;
  Rng rng(derive_seed(opt.seed, {against_union ? 51u : 5u}));
  const Index m = 10;
  const Index n = 20;
  const Index s = 3;
  for (Index t = 0; t < opt.trials; ++t) {
    ++c.trials;
    auto [psi, dual] = detail::random_pair(m, n, 0.3, rng);
    const SupportSet jhat = detail::random_subset(n, rng.uniform_index(s), rng);
    const SupportSet rest = jhat.complement();
    CMatrix projected = select_columns(psi, rest);
    if (!jhat.is_empty()) {
      try {
        projected = ObliqueProjector<Complex>(psi, dual, jhat).apply(projected);
      } catch (const RankDeficiency&) {
        ++c.skipped;
        continue;
      }
    }
    const Index bound_s = against_union ? std::min(n, s + jhat.size()) : s;
    const double rhs = restricted_biorthogonality_constant(psi, dual, bound_s).value;
    const double lhs =
        restricted_biorthogonality_constant(projected, select_columns(dual, rest), s).value;
    detail::note(c, lhs - rhs - c.tolerance);
  }
  return c;
}

inline std::vector<LemmaCheck> run_lemma_suite(const LemmaSuiteOptions& opt = {}) {
  return {check_idempotence(opt),
          check_projector_norms(opt),
          check_identity_shift(opt),
          check_identity_shift(opt, true),
          check_schur_interlacing(opt),
          check_schur_interlacing(opt, true),
          check_projection_preservation(opt),
          check_projection_preservation(opt, true)};
}

}  // namespace obpursuit

#endif  // OBPURSUIT_LEMMAS_HPP_

// Conventional versus oblique recovery on one synthetic instance.
//
//   demo_recovery [n] [m] [s] [kappa] [seed]

#include "obpursuit/obpursuit.hpp"

#include <cstdio>
#include <cstdlib>

using namespace obpursuit;

int main(int argc, char** argv) {
  const Index n = argc > 1 ? std::atol(argv[1]) : 128;
  const Index m = argc > 2 ? std::atol(argv[2]) : 64;
  const Index s = argc > 3 ? std::atol(argv[3]) : 6;
  const double kappa = argc > 4 ? std::atof(argv[4]) : 2.0;
  const auto seed = static_cast<std::uint64_t>(argc > 5 ? std::atoll(argv[5]) : 7);

  const TrialInstance t = make_trial(n, m, s, kappa, SamplingDensity::uniform(n), 30.0, seed);
  const RMatrix dual_gram = t.psi_dual.transpose() * t.psi;
  std::printf("n=%ld m=%ld s=%ld kappa=%.2f  ||psi~*psi - I|| = %.3f\n", long(n), long(m),
              long(s), kappa, spectral_norm(RMatrix(dual_gram - RMatrix::Identity(n, n))));
  std::printf("%-8s %14s %6s %14s %6s\n", "alg", "conv rel.err", "iters", "obl rel.err", "iters");
  for (Algorithm a : all_algorithms()) {
    PursuitConfig cfg;
    cfg.sparsity = s;
    cfg.algorithm = a;
    cfg.oblique = false;
    const auto conv = run_pursuit(t.psi, t.psi_dual, t.y, cfg);
    cfg.oblique = true;
    const auto obl = run_pursuit(t.psi, t.psi_dual, t.y, cfg);
    const double xn = t.x.norm();
    std::printf("%-8s %14.3e %6ld %14.3e %6ld\n", algorithm_name(a).c_str(),
                (conv.estimate.dense() - t.x).norm() / xn, long(conv.iterations),
                (obl.estimate.dense() - t.x).norm() / xn, long(obl.iterations));
  }
  return 0;
}

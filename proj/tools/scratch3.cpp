// Scratch driver: slow-material experiments and assorted spec probes.
#include <chrono>
#include <cstdio>

#include "hmmwave/experiments.hpp"

using namespace hmmwave;

namespace {
double now_s() {
  using namespace std::chrono;
  return duration<double>(steady_clock::now().time_since_epoch()).count();
}
}  // namespace

int main(int argc, char**) {
  // Orders at a generic (non-return) time T = 0.37.
  {
    const Material c1 = Constant{1.0};
    auto f = [](double x) { return std::sin(2.0 * std::numbers::pi * x); };
    const double T = 0.37;
    auto exact = [&](int rho) {
      Eigen::VectorXd e(rho);
      for (int i = 0; i < rho; ++i) {
        e(i) = std::sin(2.0 * std::numbers::pi * i / rho) *
               std::cos(2.0 * std::numbers::pi * T);
      }
      return e;
    };
    double errs[2];
    for (int idx = 0; idx < 2; ++idx) {
      const int rho = idx == 0 ? 16 : 32;
      Trajectory t = run_homogenized(c1, f, T, rho, double(rho) / 8192.0, 0);
      errs[idx] = l2_distance(t.final_state.u_curr, exact(rho), 1.0 / rho);
    }
    std::printf("spatial order = %.2f (e: %.3e %.3e)\n",
                std::log2(errs[0] / errs[1]), errs[0], errs[1]);
    for (int idx = 0; idx < 2; ++idx) {
      Trajectory t = run_homogenized(c1, f, T, 64, idx == 0 ? 0.8 : 0.4, 0);
      errs[idx] = l2_distance(t.final_state.u_curr, exact(64), 1.0 / 64);
    }
    std::printf("temporal order = %.2f (e: %.3e %.3e)\n",
                std::log2(errs[0] / errs[1]), errs[0], errs[1]);
  }

  // A2 effective coefficients at x = 0 and x = 0.3 (beta' probe).
  {
    const Material a2 = material_A2();
    const double t0 = now_s();
    auto cs = beta_profile(a2, {0.0, 0.02, 0.28, 0.3, 0.32}, 128);
    std::printf("beta_profile(5 pts): %.2f s\n", now_s() - t0);
    std::printf("A2 beta(0) = %.8g beta(0.02) = %.8g  slope0 ~ %.3e\n",
                cs[0].beta, cs[1].beta,
                (cs[1].beta - cs[0].beta) / 0.02);
    std::printf("A2 beta(0.3) = %.8g  slope ~ %.3e\n", cs[3].beta,
                (cs[4].beta - cs[2].beta) / 0.04);
    std::printf("A2 barA(0) = %.12g (expect sqrt(2.31) = %.12g)\n", cs[0].barA,
                std::sqrt(2.31));
  }

  if (argc > 1) {
    // Experiment two end-to-end (heavier).
    const double t0 = now_s();
    ExperimentParams p = experiment_params("two");
    ExperimentRuns runs = run_experiment(p, {"dns", "hom", "eff", "hmm"}, 0);
    std::printf("experiment two: %.1f s\n", now_s() - t0);
    for (const PairDistance& d : final_distances(runs)) {
      std::printf("  d(%s, %s) = %.6e\n", d.a.c_str(), d.b.c_str(), d.l2);
    }
    const double t1 = now_s();
    ExperimentParams p3 = experiment_params("three");
    ExperimentRuns runs3 = run_experiment(p3, {"dns", "hom", "eff", "hmm"}, 0);
    std::printf("experiment three: %.1f s\n", now_s() - t1);
    for (const PairDistance& d : final_distances(runs3)) {
      std::printf("  d(%s, %s) = %.6e\n", d.a.c_str(), d.b.c_str(), d.l2);
    }
  }
  return 0;
}

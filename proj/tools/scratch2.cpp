// Scratch driver: solver-level probes.
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

int main() {
  // Criterion 6: homogenized periodicity, A1, T = 1.47722, rho = 1000.
  {
    const double t0 = now_s();
    const Material a1 = material_A1();
    Trajectory hom = run_homogenized(a1, gaussian_pulse_pair, 1.47722, 1000,
                                     0.5, 0);
    Eigen::VectorXd u0(1000);
    for (int i = 0; i < 1000; ++i) u0(i) = gaussian_pulse_pair(i / 1000.0);
    const double err = l2_distance(hom.final_state.u_curr, u0, 1e-3) /
                       std::sqrt(1e-3 * u0.squaredNorm());
    std::printf("criterion 6: hom return rel err = %.4e (<= 1e-3), %.1f s\n",
                err, now_s() - t0);
  }

  // Criterion 8 orders: standing wave, A = 1.
  {
    const Material c1 = Constant{1.0};
    auto f = [](double x) { return std::sin(2.0 * std::numbers::pi * x); };
    // spatial: fixed small dt = 1/8192 via lambda = rho / 8192 on the
    // constant material (Abar = c), so only the h^4 term moves.
    double errs[2];
    for (int idx = 0; idx < 2; ++idx) {
      const int rho = idx == 0 ? 16 : 32;
      const double lambda = double(rho) / 8192.0;
      Trajectory t = run_homogenized(c1, f, 1.0, rho, lambda, 0);
      Eigen::VectorXd exact(rho);
      for (int i = 0; i < rho; ++i) {
        exact(i) = std::sin(2.0 * std::numbers::pi * i / rho) *
                   std::cos(2.0 * std::numbers::pi * 1.0);
      }
      errs[idx] = l2_distance(t.final_state.u_curr, exact, 1.0 / rho);
    }
    std::printf("spatial: e16 = %.3e e32 = %.3e order = %.2f\n", errs[0],
                errs[1], std::log2(errs[0] / errs[1]));
    for (int idx = 0; idx < 2; ++idx) {
      const int rho = 64;
      const double lambda = idx == 0 ? 0.8 : 0.4;
      Trajectory t = run_homogenized(c1, f, 1.0, rho, lambda, 0);
      Eigen::VectorXd exact(rho);
      for (int i = 0; i < rho; ++i) {
        exact(i) = std::sin(2.0 * std::numbers::pi * i / rho) *
                   std::cos(2.0 * std::numbers::pi * 1.0);
      }
      errs[idx] = l2_distance(t.final_state.u_curr, exact, 1.0 / rho);
    }
    std::printf("temporal: e0.8 = %.3e e0.4 = %.3e order = %.2f\n", errs[0],
                errs[1], std::log2(errs[0] / errs[1]));
  }

  // Criterion 7: experiment one.
  {
    const double t0 = now_s();
    ExperimentParams p = experiment_params("one");
    ExperimentRuns runs = run_experiment(p, {"dns", "hom", "eff", "hmm"}, 0);
    std::printf("experiment one runs: %.1f s\n", now_s() - t0);
    for (const PairDistance& d : final_distances(runs)) {
      std::printf("  d(%s, %s) = %.6e\n", d.a.c_str(), d.b.c_str(), d.l2);
    }
    Eigen::VectorXd u0(p.rho);
    for (int i = 0; i < p.rho; ++i) {
      u0(i) = gaussian_pulse_pair(double(i) / p.rho);
    }
    std::printf("  initial norm = %.4f\n",
                std::sqrt(u0.squaredNorm() / p.rho));
  }
  return 0;
}

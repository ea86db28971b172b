// Scratch driver for numerical probing during development.
#include <chrono>
#include <cstdio>

#include "hmmwave/bloch.hpp"
#include "hmmwave/kernels.hpp"
#include "hmmwave/materials.hpp"
#include "hmmwave/micro_flux.hpp"

using namespace hmmwave;

int main() {
  // Kernel (1,1): P = 15/16.
  const KernelSpec k11 = construct_kernel(1, 1);
  std::printf("K11 P(0) = %.17g (expect 0.9375)\n", k11.even_coeffs(0));
  std::printf("K11(0)   = %.17g\n", kernel_value(k11, 0.0));

  // Table 1 column for K^{9,9}.
  const KernelSpec k99 = construct_kernel(9, 9);
  for (int n : {10, 20, 40, 80, 160}) {
    auto nw = kernel_quadrature_weights(k99, 1.0, n);
    double s = 0.0;
    for (auto& [x, w] : nw) s += w;
    std::printf("N=%3d  rel_err = %.4e\n", n, std::abs(s - 1.0));
  }

  // Kernel 19,19 moment sanity.
  const KernelSpec k19 = construct_kernel(19, 19);
  {
    const int nq = 10000;
    for (int j : {0, 2, 10, 18}) {
      auto nw = kernel_quadrature_weights(k19, 1.0, nq);
      double mom = 0.0;
      for (auto& [x, w] : nw) {
        double p = 1.0;
        for (int e = 0; e < j; ++e) p *= x;
        mom += w * p;
      }
      std::printf("K19,19 moment %2d = %.3e\n", j, mom - (j == 0 ? 1.0 : 0.0));
    }
  }

  // Bloch for A1.
  const auto t0 = std::chrono::steady_clock::now();
  CellProblem cp;
  cp.fast_profile = frozen_fast_profile(material_A1(), 0.0);
  cp.n_modes = 128;
  const EffectiveCoeffs ec = effective_coeffs(cp);
  const auto t1 = std::chrono::steady_clock::now();
  std::printf("A1: barA = %.15g (expect %.15g, rel %.2e)\n", ec.barA,
              std::sqrt(0.21), std::abs(ec.barA / std::sqrt(0.21) - 1.0));
  std::printf("A1: beta = %.12g (expect 0.01078280318, rel %.2e)\n", ec.beta,
              std::abs(ec.beta / 0.01078280318 - 1.0));
  std::printf("A1: gamma = %.6g (expect ~0.023530)\n", ec.gamma);
  std::printf("bloch time %.2f s\n",
              std::chrono::duration<double>(t1 - t0).count());

  // Flux study of section 4.4: A1, eps = 0.01, eta = tau = 20 eps, K^{9,9},
  // rho_eps = 64, lambda = 0.5.
  const Material a1 = material_A1();
  const MicroConfig cfg = make_micro_config(a1, 0.01, 20.0, 64, 0.5, 9, 9);
  std::printf("micro: L = %g, offsets =", cfg.box_halfwidth);
  for (double d : cfg.sample_offsets) std::printf(" %g", d);
  std::printf("\n");
  const auto t2 = std::chrono::steady_clock::now();
  const MicroResult r = compute_correction_matrix(a1, 0.0, cfg);
  const auto t3 = std::chrono::steady_clock::now();
  std::printf("micro time %.2f s\n",
              std::chrono::duration<double>(t3 - t2).count());

  std::printf("f       = %.15e %.15e %.15e %.15e\n", r.f(0), r.f(1), r.f(2),
              r.f(3));
  std::printf("f_tilde = %.15e %.15e %.15e %.15e\n", r.f_tilde(0), r.f_tilde(1),
              r.f_tilde(2), r.f_tilde(3));
  const Eigen::Matrix4d m0 =
      (r.M - Eigen::Matrix4d::Identity()) / (0.01 * 0.01);
  std::printf("(M-I)/eps^2 =\n");
  for (int i = 0; i < 4; ++i) {
    std::printf("  %12.4e %12.4e %12.4e %12.4e\n", m0(i, 0), m0(i, 1),
                m0(i, 2), m0(i, 3));
  }
  std::printf("paper: (0,2)=4.7060e-02 (1,3)=1.4118e-01\n");
  std::printf("f1 vs sqrt(0.21): rel = %.4e (paper 2.5019e-10)\n",
              std::abs(r.f(1) / std::sqrt(0.21) - 1.0));
  const double six_beta_eps2 = 6.0 * 0.01078280318 * 1e-4;
  std::printf("raw f3 vs 6 beta eps^2: rel = %.4f (paper 1.0000)\n",
              std::abs(r.f(3) / six_beta_eps2 - 1.0));
  std::printf("corrected f3 vs 6 beta eps^2: rel = %.4e (paper 8e-6)\n",
              std::abs(r.f_tilde(3) / six_beta_eps2 - 1.0));
  return 0;
}

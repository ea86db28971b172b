#include "hmmwave/bloch.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "hmmwave/parallel.hpp"

namespace hmmwave {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
using Complex = std::complex<double>;

// Fourier coefficients ahat_j = int_0^1 A(y) e^{-2 pi i j y} dy by periodic
// trapezoid; exact to round-off for band-limited profiles, spectrally
// accurate otherwise.
Eigen::VectorXcd fourier_coefficients(const std::function<double(double)>& a,
                                      int max_mode) {
  const int ns = std::max(4096, 8 * max_mode);
  Eigen::VectorXd samples(ns);
  for (int s = 0; s < ns; ++s) samples(s) = a(double(s) / ns);

  Eigen::VectorXcd ahat(2 * max_mode + 1);
  for (int j = -max_mode; j <= max_mode; ++j) {
    Complex acc{0.0, 0.0};
    for (int s = 0; s < ns; ++s) {
      const double phase = -kTwoPi * j * s / double(ns);
      acc += samples(s) * Complex{std::cos(phase), std::sin(phase)};
    }
    ahat(j + max_mode) = acc / double(ns);
  }
  return ahat;
}

}  // namespace

CellOperator::CellOperator(const CellProblem& cp) : n_modes_(cp.n_modes) {
  if (cp.n_modes < 16) {
    throw std::invalid_argument("CellProblem: n_modes must be >= 16");
  }
  const int N = n_modes_;
  const Eigen::VectorXcd ahat = fourier_coefficients(cp.fast_profile, 2 * N);
  const int dim = 2 * N + 1;
  coeff_op_.resize(dim, dim);
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) {
      coeff_op_(r, c) = ahat((r - c) + 2 * N);
    }
  }
  Eigen::LLT<Eigen::MatrixXcd> llt(coeff_op_);
  if (llt.info() != Eigen::Success) {
    throw std::runtime_error("cell operator is not positive definite");
  }
  coeff_cholesky_u_ = llt.matrixU();
}

DispersionSample CellOperator::solve(double k) const {
  if (std::abs(k) > std::numbers::pi + 1e-12) {
    throw std::invalid_argument("cell_eigensolve: |k| must be <= pi");
  }
  const int N = n_modes_;
  const int dim = 2 * N + 1;

  if (k == 0.0) {
    // omega_0(0) = 0 with the constant eigenfunction; b_m(0) = delta_m.
    return DispersionSample{0.0, 0.0, Complex{1.0, 0.0}, 1.0};
  }

  Eigen::VectorXd s(dim);
  for (int r = 0; r < dim; ++r) s(r) = k + kTwoPi * (r - N);

  Eigen::MatrixXcd H = coeff_op_;
  for (int r = 0; r < dim; ++r) H.row(r) *= s(r);
  for (int c = 0; c < dim; ++c) H.col(c) *= s(c);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("cell eigensolver failed to converge");
  }
  Eigen::VectorXcd psi = es.eigenvectors().col(0);

  // The raw eigenvalue carries eps * ||H|| absolute noise, which would wreck
  // the small k^2-scale band values.  Evaluate the Rayleigh quotient through
  // the factored form instead: omega^2 = || U (S psi) ||^2 with A = U^H U,
  // a sum of positive terms sized by the band value itself.
  const Eigen::VectorXcd y = s.cast<Complex>().cwiseProduct(psi);
  const double omega_sq =
      (coeff_cholesky_u_.triangularView<Eigen::Upper>() * y).squaredNorm();

  const double h_norm = std::max(std::abs(es.eigenvalues()(0)),
                                 std::abs(es.eigenvalues()(dim - 1)));
  const double residual = (H * psi - omega_sq * psi).norm();
  if (residual > 1e-10 * h_norm) {
    throw std::runtime_error("cell eigensolve residual too large: " +
                             std::to_string(residual));
  }

  // Rotate the phase so the zero-mode component is real and non-negative;
  // b0 = conj(zero mode of psi_0), B is phase invariant.
  Complex z0 = psi(N);
  if (std::abs(z0) > 0.0) psi *= std::conj(z0) / std::abs(z0);

  DispersionSample out;
  out.k = k;
  out.omega0_sq = omega_sq;
  out.b0 = std::conj(psi(N));
  out.B = std::norm(psi(N));
  return out;
}

DispersionSample cell_eigensolve(const CellProblem& cp, double k) {
  return CellOperator(cp).solve(k);
}

namespace {

// Richardson table for F(delta) = F0 + c1 delta^2 + c2 delta^4 + ... sampled
// on a geometric ladder delta_i = delta_0 2^i.  Returns the fully
// extrapolated value and the disagreement with the previous diagonal entry.
struct Extrapolated {
  double value = 0.0;
  double disagreement = 0.0;
};

Extrapolated richardson_even(std::vector<double> f) {
  const std::size_t m = f.size();
  double prev_diag = f[0];
  double pow4 = 1.0;
  for (std::size_t j = 1; j < m; ++j) {
    pow4 *= 4.0;
    prev_diag = f[0];
    for (std::size_t i = 0; i + j < m; ++i) {
      f[i] = (pow4 * f[i] - f[i + 1]) / (pow4 - 1.0);
    }
  }
  return {f[0], std::abs(f[0] - prev_diag)};
}

constexpr double kAgreementTol = 1e-6;

void require_agreement(const Extrapolated& e, double scale, const char* what) {
  if (e.disagreement > kAgreementTol * std::max(std::abs(e.value), scale)) {
    throw std::runtime_error(std::string("Richardson levels disagree for ") +
                             what + ": " + std::to_string(e.disagreement));
  }
}

}  // namespace

EffectiveCoeffs effective_coeffs(const CellProblem& cp) {
  const CellOperator op(cp);

  // Omega'' and Omega'''' use delta in {0.005, 0.01, 0.02, 0.04} * 2 pi (the
  // 4-jet stencil also needs 2 delta); B'' tolerates a coarser ladder, which
  // keeps it clear of the eigenvector noise floor.
  const std::vector<double> omega_ladder = {0.005 * kTwoPi, 0.01 * kTwoPi,
                                            0.02 * kTwoPi, 0.04 * kTwoPi};
  const std::vector<double> b_ladder = {0.02 * kTwoPi, 0.04 * kTwoPi,
                                        0.08 * kTwoPi, 0.16 * kTwoPi};

  std::vector<double> omega(omega_ladder.size() + 1);
  for (std::size_t i = 0; i < omega_ladder.size(); ++i) {
    omega[i] = op.solve(omega_ladder[i]).omega0_sq;
  }
  omega.back() = op.solve(2.0 * omega_ladder.back()).omega0_sq;

  // Omega(0) = 0 and Omega is even:
  //   2 Omega(d) / d^2            -> Omega''(0) + O(d^2),
  //   (2 Omega(2d) - 8 Omega(d)) / d^4 -> Omega''''(0) + O(d^2).
  std::vector<double> d2(omega_ladder.size()), d4(omega_ladder.size());
  for (std::size_t i = 0; i < omega_ladder.size(); ++i) {
    const double d = omega_ladder[i];
    const double next = (i + 1 < omega_ladder.size()) ? omega[i + 1] : omega.back();
    d2[i] = 2.0 * omega[i] / (d * d);
    d4[i] = (2.0 * next - 8.0 * omega[i]) / (d * d * d * d);
  }
  const Extrapolated om2 = richardson_even(d2);
  const Extrapolated om4 = richardson_even(d4);
  require_agreement(om2, 0.0, "Omega''(0)");
  require_agreement(om4, 1e-3 * std::abs(om2.value), "Omega''''(0)");

  // B(0) = 1 and B'(0) = 0: 2 (B(d) - 1) / d^2 -> B''(0) + O(d^2).
  std::vector<double> b2(b_ladder.size());
  for (std::size_t i = 0; i < b_ladder.size(); ++i) {
    const double d = b_ladder[i];
    b2[i] = 2.0 * (op.solve(d).B - 1.0) / (d * d);
  }
  const Extrapolated bpp = richardson_even(b2);
  require_agreement(bpp, 1.0, "B''(0)");

  EffectiveCoeffs out;
  out.barA = om2.value / 2.0;
  out.beta = -om4.value / 24.0;
  out.gamma = -bpp.value / 2.0;
  return out;
}

std::vector<EffectiveCoeffs> beta_profile(const Material& m,
                                          const std::vector<double>& x_samples,
                                          int n_modes) {
  std::vector<EffectiveCoeffs> out(x_samples.size());
  parallel_for(x_samples.size(), [&](std::size_t i) {
    CellProblem cp;
    cp.fast_profile = frozen_fast_profile(m, x_samples[i]);
    cp.n_modes = n_modes;
    out[i] = effective_coeffs(cp);
  });
  return out;
}

}  // namespace hmmwave

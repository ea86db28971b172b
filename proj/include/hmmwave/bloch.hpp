#pragma once

#include <Eigen/Dense>

#include <complex>
#include <functional>
#include <vector>

#include "hmmwave/materials.hpp"

namespace hmmwave {

/// Shifted cell eigenvalue problem for a 1-periodic coefficient profile,
/// discretized by Fourier-Galerkin truncation to modes |n| <= n_modes.
struct CellProblem {
  std::function<double(double)> fast_profile;
  int n_modes = 128;
};

/// Bottom band sample at quasi-momentum k: Omega(k) = omega_0(k)^2 plus the
/// first Bloch coefficient b0 = int psi_0^* dy of the L2-normalized mode.
struct DispersionSample {
  double k = 0.0;
  double omega0_sq = 0.0;
  std::complex<double> b0{1.0, 0.0};
  double B = 1.0;  // |b0|^2
};

/// Effective coefficients of the long-time model:
///   barA = Omega''(0) / 2!,  beta = -Omega''''(0) / 4!,  gamma = -B''(0) / 2.
struct EffectiveCoeffs {
  double barA = 1.0;
  double beta = 0.0;
  double gamma = 0.0;
};

/// Assembled Fourier-Galerkin cell operator, reusable across k values.
/// The matrix H(k)_{nm} = (k + 2 pi n)(k + 2 pi m) Ahat(n - m) is Hermitian;
/// the smallest eigenpair is the bottom Bloch band.
class CellOperator {
 public:
  explicit CellOperator(const CellProblem& cp);

  DispersionSample solve(double k) const;
  int n_modes() const { return n_modes_; }

 private:
  int n_modes_;
  Eigen::MatrixXcd coeff_op_;          // multiplication by A in Fourier space
  Eigen::MatrixXcd coeff_cholesky_u_;  // upper factor of its LLT
};

/// Solves the cell problem at |k| <= pi for the smallest eigenpair.
DispersionSample cell_eigensolve(const CellProblem& cp, double k);

/// k-derivatives of Omega and B at 0 by even-symmetry central differences on
/// a delta ladder with Neville extrapolation; throws when the extrapolation
/// levels disagree (cancellation guard).
EffectiveCoeffs effective_coeffs(const CellProblem& cp);

/// Effective coefficients per slow location, freezing x in A(x, y).
std::vector<EffectiveCoeffs> beta_profile(const Material& m,
                                          const std::vector<double>& x_samples,
                                          int n_modes = 128);

}  // namespace hmmwave

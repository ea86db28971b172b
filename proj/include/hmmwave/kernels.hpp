#pragma once

#include <Eigen/Dense>

#include <utility>
#include <vector>

namespace hmmwave {

/// Symmetric polynomial averaging kernel with p vanishing moments and q
/// continuous derivatives, stored in the factorized form
///   K(x) = (1 - x^2)^(q+1) * P(x),
/// where P is even.  Unit mass, support exactly [-1, 1].
struct KernelSpec {
  int p = 1;
  int q = 1;
  /// Even monomial coefficients of P: P(x) = sum_m even_coeffs[m] * x^(2m).
  Eigen::VectorXd even_coeffs;
};

/// View of K_eta(x) = K(x / eta) / eta; unit mass, support [-eta, eta].
struct ScaledKernelView {
  KernelSpec base;
  double eta = 1.0;

  double operator()(double x) const;
};

/// Builds the kernel in K^{p,q} by solving the even-moment system for P.
/// The moments of (1 - x^2)^(q+1) x^(2n) are assembled from the Beta-function
/// closed form, so no quadrature enters the construction.
KernelSpec construct_kernel(int p, int q);

/// Evaluates K via the factorized form; exactly zero outside [-1, 1].
double kernel_value(const KernelSpec& k, double x);

/// Exact moment integral of the basis: \int_{-1}^{1} (1-x^2)^(q+1) x^(2n) dx.
double kernel_basis_moment(int n, int q);

/// Composite-trapezoid nodes and weights for x -> K_eta(x) on [-eta, eta]
/// with n intervals.  The weights sum to ~1 with spectral accuracy in n since
/// the first q derivatives of K vanish at the support ends.
std::vector<std::pair<double, double>> kernel_quadrature_weights(
    const KernelSpec& k, double eta, int n);

/// Tensor-product kernel average of samples on a uniform (x, t) grid.
/// field(i, j) holds f(x_i, t_j) with x spacing hx covering [-eta, eta].
/// With half_time_even = false the t axis covers [-tau, tau]; with
/// half_time_even = true it covers [0, tau] and f is taken even in t, so the
/// doubled half-range weights reproduce the full-range sum identically.
double space_time_average(const Eigen::MatrixXd& field, double hx, double ht,
                          const KernelSpec& kx, double eta,
                          const KernelSpec& kt, double tau,
                          bool half_time_even = false);

}  // namespace hmmwave

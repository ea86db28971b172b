#include "hmmwave/kernels.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hmmwave {

double kernel_basis_moment(int n, int q) {
  // I(0, q) = \int (1-x^2)^(q+1) dx via the Wallis recurrence
  // I_s = I_{s-1} * 2s / (2s + 1), then
  // I(n+1, q) / I(n, q) = (n + 1/2) / (n + q + 5/2).
  double m = 2.0;
  for (int s = 1; s <= q + 1; ++s) m *= (2.0 * s) / (2.0 * s + 1.0);
  for (int j = 0; j < n; ++j) m *= (j + 0.5) / (j + q + 2.5);
  return m;
}

KernelSpec construct_kernel(int p, int q) {
  if (p < 1 || q < 1) {
    throw std::invalid_argument("construct_kernel: p and q must be >= 1");
  }
  // Odd moments vanish by symmetry; the even moments j = 0, 2, ..., 2(M-1)
  // with M = floor(p/2) + 1 pin the M even coefficients of P.
  const int M = p / 2 + 1;
  Eigen::MatrixXd A(M, M);
  for (int i = 0; i < M; ++i)
    for (int m = 0; m < M; ++m) A(i, m) = kernel_basis_moment(i + m, q);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(M);
  b(0) = 1.0;

  // Scale rows by their max element before the partial-pivoted solve.
  for (int i = 0; i < M; ++i) {
    const double s = A.row(i).cwiseAbs().maxCoeff();
    A.row(i) /= s;
    b(i) /= s;
  }
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
  if (!(lu.rcond() > 1e-14)) {
    throw std::runtime_error(
        "construct_kernel: singular moment system, rcond = " +
        std::to_string(lu.rcond()));
  }
  Eigen::VectorXd c = lu.solve(b);
  c += lu.solve(b - A * c);  // one step of iterative refinement

  KernelSpec k;
  k.p = p;
  k.q = q;
  k.even_coeffs = c;
  return k;
}

double kernel_value(const KernelSpec& k, double x) {
  const double u = x * x;
  if (u > 1.0) return 0.0;
  // Horner in u = x^2 over the even coefficients of P.
  double pval = 0.0;
  for (Eigen::Index m = k.even_coeffs.size() - 1; m >= 0; --m) {
    pval = pval * u + k.even_coeffs(m);
  }
  double w = 1.0;
  const double f = 1.0 - u;
  for (int j = 0; j <= k.q; ++j) w *= f;
  return w * pval;
}

double ScaledKernelView::operator()(double x) const {
  return kernel_value(base, x / eta) / eta;
}

std::vector<std::pair<double, double>> kernel_quadrature_weights(
    const KernelSpec& k, double eta, int n) {
  if (n < 2) {
    throw std::invalid_argument(
        "kernel_quadrature_weights: need at least 2 intervals");
  }
  if (!(eta > 0.0)) {
    throw std::invalid_argument("kernel_quadrature_weights: eta must be > 0");
  }
  const double h = 2.0 * eta / n;
  std::vector<std::pair<double, double>> nw;
  nw.reserve(n + 1);
  for (int i = 0; i <= n; ++i) {
    const double x = -eta + i * h;
    const double edge = (i == 0 || i == n) ? 0.5 : 1.0;
    nw.emplace_back(x, edge * h * kernel_value(k, x / eta) / eta);
  }
  return nw;
}

double space_time_average(const Eigen::MatrixXd& field, double hx, double ht,
                          const KernelSpec& kx, double eta,
                          const KernelSpec& kt, double tau,
                          bool half_time_even) {
  const Eigen::Index nx = field.rows() - 1;
  const Eigen::Index nt = field.cols() - 1;
  if (nx < 2 || nt < 1) {
    throw std::domain_error("space_time_average: field grid too small");
  }
  const double x_span = nx * hx;
  const double t_span = nt * ht;
  const double t_need = half_time_even ? tau : 2.0 * tau;
  if (x_span < 2.0 * eta - 1e-9 * eta || t_span < t_need - 1e-9 * tau) {
    throw std::domain_error(
        "space_time_average: field domain smaller than kernel support");
  }
  if (x_span > 2.0 * eta + 1e-9 * eta || t_span > t_need + 1e-9 * tau) {
    throw std::domain_error(
        "space_time_average: field must cover the kernel support exactly");
  }

  Eigen::VectorXd wx(nx + 1);
  for (Eigen::Index i = 0; i <= nx; ++i) {
    const double x = -eta + i * hx;
    const double edge = (i == 0 || i == nx) ? 0.5 : 1.0;
    wx(i) = edge * hx * kernel_value(kx, x / eta) / eta;
  }
  Eigen::VectorXd wt(nt + 1);
  if (half_time_even) {
    // Doubled [0, tau] trapezoid; equals the full-range sum for even fields.
    for (Eigen::Index j = 0; j <= nt; ++j) {
      const double t = j * ht;
      const double c = (j == 0 || j == nt) ? 1.0 : 2.0;
      wt(j) = c * ht * kernel_value(kt, t / tau) / tau;
    }
  } else {
    for (Eigen::Index j = 0; j <= nt; ++j) {
      const double t = -tau + j * ht;
      const double edge = (j == 0 || j == nt) ? 0.5 : 1.0;
      wt(j) = edge * ht * kernel_value(kt, t / tau) / tau;
    }
  }
  return wx.dot(field * wt);
}

}  // namespace hmmwave

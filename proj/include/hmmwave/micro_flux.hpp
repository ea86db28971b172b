#pragma once

#include <Eigen/Dense>

#include <functional>
#include <vector>

#include "hmmwave/kernels.hpp"
#include "hmmwave/materials.hpp"
#include "hmmwave/wave_core.hpp"

namespace hmmwave {

/// Parameters of one micro solve and its kernel-averaged reconstruction.
struct MicroConfig {
  double eps = 0.01;
  double eta = 0.2;  // spatial kernel half-width
  double tau = 0.2;  // temporal kernel half-width
  int rho_eps = 64;  // micro points per eps
  double lambda = 0.5;
  int kernel_p = 9;
  int kernel_q = 9;
  std::vector<double> sample_offsets;  // Delta_k for the correction fit
  double box_halfwidth = 0.0;          // L

  double h() const { return eps / double(rho_eps); }
};

/// Default configuration: eta = tau = eta_ratio * eps, five equispaced
/// sample offsets {-2..2} * eta/4 snapped to the micro grid, and the box
/// half-width L = eta + max|Delta| + tau sqrt(max A) + eps rounded up to a
/// whole number of eps periods so the periodic box stays commensurate.
MicroConfig make_micro_config(const Material& m, double eps, double eta_ratio,
                              int rho_eps, double lambda, int p, int q);

/// Enforces the MicroConfig invariants (window containment, grid
/// commensuration, kernel sanity); throws std::invalid_argument.
void validate_micro_config(const MicroConfig& cfg, const Material& m);

/// Raw flux vector f (initial data Q = 1, x, x^2, x^3), correction matrix M,
/// and corrected flux f_tilde = M^{-T} f.
struct MicroResult {
  Eigen::Vector4d f = Eigen::Vector4d::Zero();
  Eigen::Matrix4d M = Eigen::Matrix4d::Identity();
  Eigen::Vector4d f_tilde = Eigen::Vector4d::Zero();
};

/// One MicroResult per macro half-point.
struct FluxTable {
  std::vector<double> x_half;
  std::vector<MicroResult> entries;
};

/// The micro wave problem v_tt = (A^eps(x + x') v_x)_x on [-L, L] x [0, tau]
/// with v(x, 0) = Q(x), v_t(x, 0) = 0 and v - Q periodic.  Solved for
/// w = v - Q (periodic, zero initial data) with the source (A Q')_x
/// discretized by the same 4th-order half-point stencil.  The t < 0 half of
/// the averaging windows follows from evenness of v in time.
class MicroProblem {
 public:
  MicroProblem(const Material& m, double x_center,
               const Eigen::Vector4d& q_coeffs, const MicroConfig& cfg);

  const MicroConfig& config() const { return cfg_; }
  const Grid1D& grid() const { return grid_; }
  double dt() const { return dt_; }
  Eigen::Index n_steps() const { return n_steps_; }

  /// Streams the solution: observe(k, v_nodes, flux_half) at t_k = k dt for
  /// k = 0..n_steps, where flux_half(j) = A^eps v_x at the half-points.
  void run(const std::function<void(Eigen::Index, const Eigen::VectorXd&,
                                    const Eigen::VectorXd&)>& observe) const;

 private:
  void fluxes_into(const Eigen::VectorXd& w, Eigen::VectorXd& g) const;

  MicroConfig cfg_;
  Grid1D grid_;
  double dt_ = 0.0;
  Eigen::Index n_steps_ = 0;
  double max_a_ = 0.0;
  Eigen::VectorXd a_half_;
  Eigen::VectorXd q_nodes_;
  Eigen::VectorXd q_prime_half_;
};

/// Sets up the micro problem with cubic initial data Q (coefficients in the
/// local coordinate centered at x_center).
MicroProblem solve_micro(const Material& m, double x_center,
                         const Eigen::Vector4d& q_coeffs,
                         const MicroConfig& cfg);

/// Space-time kernel average of the micro flux,
/// F = 2 int_0^tau int K_tau(t) K_eta(x) A^eps v_x dx dt.
double compute_raw_flux(const MicroProblem& problem);

/// Kernel averages of the solution itself at the sample offsets,
/// Y_k = (K v)(Delta_k, 0); used by the correction fit.
struct MicroAverages {
  double flux = 0.0;
  Eigen::VectorXd solution_at_offsets;
};
MicroAverages accumulate_micro(const MicroProblem& problem);

/// Runs the four monomial micro problems at x_center, fits cubics through
/// the averaged solutions to form M column by column, and corrects the flux.
MicroResult compute_correction_matrix(const Material& m, double x_center,
                                      const MicroConfig& cfg);

/// One MicroResult per macro half-point; materials without slow variation
/// are translation invariant, so a single result is computed and replicated.
FluxTable build_flux_table(const Material& m, const Grid1D& macro_grid,
                           const MicroConfig& cfg);

}  // namespace hmmwave

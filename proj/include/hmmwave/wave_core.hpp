#pragma once

#include <Eigen/Dense>

#include <functional>
#include <vector>

#include "hmmwave/bloch.hpp"
#include "hmmwave/materials.hpp"

namespace hmmwave {

/// Periodic 1D grid of n cells on [a, b]; node i sits at a + i h, the
/// half-point with index m at a + (m - 1/2) h.
struct Grid1D {
  double a = 0.0;
  double b = 1.0;
  Eigen::Index n = 0;

  double h() const { return (b - a) / double(n); }
  double node(Eigen::Index i) const { return a + double(i) * h(); }
  double half_point(Eigen::Index m) const {
    return a + (double(m) - 0.5) * h();
  }
  Eigen::Index wrap(Eigen::Index i) const { return ((i % n) + n) % n; }
};

/// Two consecutive time levels of a periodic grid function.
struct WaveField {
  Grid1D grid;
  Eigen::VectorXd u_prev;
  Eigen::VectorXd u_curr;
  double t = 0.0;
  double dt = 0.0;
};

/// Numerical flux at half-point m from the current field values.
using FluxProvider = std::function<double(const Eigen::VectorXd&, Eigen::Index)>;

/// von Neumann limit of the leapfrog / 4th-order staggered flux scheme:
/// the composite stencil symbol peaks at 7/3, so dt sqrt(max A) / h <= 6/7.
inline constexpr double kCflLimit = 6.0 / 7.0;

/// Throws when dt * sqrt(max_coeff) / h exceeds the stability limit.
void require_cfl(double dt, double h, double max_coeff);

/// 4th-order first derivative at x_{m-1/2}:
/// (v_{m-2} - 27 v_{m-1} + 27 v_m - v_{m+1}) / (24 h), periodic indexing.
double fd4_halfpoint_derivative(const Eigen::VectorXd& v, Eigen::Index m,
                                double h);

/// 2nd-order third derivative at x_{m-1/2}:
/// (v_{m+1} - 3 v_m + 3 v_{m-1} - v_{m-2}) / h^3, periodic indexing.
double fd3_halfpoint_third_derivative(const Eigen::VectorXd& v, Eigen::Index m,
                                      double h);

/// Adds scale * (-G_{m+2} + 27 G_{m+1} - 27 G_m + G_{m-1}) to out, where
/// G_m holds the flux at x_{m-1/2}; scale carries the dt^2/(24 h) factor.
void add_flux_divergence(const Eigen::VectorXd& half_fluxes, double scale,
                         Eigen::VectorXd& out);

/// One leapfrog step
///   U^{n+1}_m = 2 U^n_m - U^{n-1}_m
///             + dt^2/(24 h) (-F_{m+3/2} + 27 F_{m+1/2} - 27 F_{m-1/2} + F_{m-3/2}),
/// guarded by the CFL check against max_coeff.
WaveField leapfrog_step(const WaveField& w, const FluxProvider& flux,
                        double max_coeff);

/// First step from rest (g == 0) via the ghost level u^{-1} = u^{1}: the
/// flux divergence enters with half weight, preserving time symmetry.
WaveField leapfrog_start(const Grid1D& grid, const Eigen::VectorXd& u0,
                         double dt, const FluxProvider& flux, double max_coeff);

/// Stored snapshots of a run plus the final two-level state.
struct Trajectory {
  std::vector<double> times;
  std::vector<Eigen::VectorXd> snapshots;
  WaveField final_state;
};

/// Drives n_steps of leapfrog from rest, recording every `stride` steps
/// (stride <= 0 records only t = 0 and the final time).
Trajectory run_leapfrog_from_rest(const Grid1D& grid,
                                  const Eigen::VectorXd& u0, double dt,
                                  Eigen::Index n_steps,
                                  const FluxProvider& flux, double max_coeff,
                                  Eigen::Index stride);

/// Direct numerical simulation of u_tt = (A^eps u_x)_x on [0, 1] with
/// h ~ eps / rho_eps and dt = lambda h (snapped so the run ends exactly at T).
Trajectory run_dns(const Material& m, double eps,
                   const std::function<double(double)>& f, double T,
                   int rho_eps, double lambda, Eigen::Index snapshot_stride = 0);

/// Homogenized equation u_tt = (Abar(x) u_x)_x on the coarse grid h = 1/rho.
Trajectory run_homogenized(const Material& m,
                           const std::function<double(double)>& f, double T,
                           int rho, double lambda,
                           Eigen::Index snapshot_stride = 0);

/// Long-time effective equation u_tt = (Abar u_x + eps^2 beta u_xxx)_x.
/// Coarse grids only: refuses h < eps / 4 (the dispersive term has the
/// unstable sign; the floor keeps the discrete symbol below the hyperbolic
/// part for the materials at hand).
Trajectory run_effective(const Material& m, double eps,
                         const std::function<double(double)>& f, double T,
                         int rho, double lambda,
                         const std::function<EffectiveCoeffs(double)>& coeffs,
                         Eigen::Index snapshot_stride = 0);

/// sqrt(h * sum (a_i - b_i)^2).
double l2_distance(const Eigen::VectorXd& a, const Eigen::VectorXd& b,
                   double h);

/// Periodic linear interpolation of u (on `from`) onto the nodes of `to`.
Eigen::VectorXd resample_periodic(const Eigen::VectorXd& u, const Grid1D& from,
                                  const Grid1D& to);

/// Initial pulse of the experiments: e^{-100 x^2} + e^{-100 (1-x)^2}.
double gaussian_pulse_pair(double x);

}  // namespace hmmwave

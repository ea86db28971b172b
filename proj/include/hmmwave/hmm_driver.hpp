#pragma once

#include <Eigen/Dense>

#include <functional>

#include "hmmwave/micro_flux.hpp"
#include "hmmwave/wave_core.hpp"

namespace hmmwave {

/// Macro-scale HMM configuration; the micro config supplies the flux table.
struct HmmConfig {
  int rho = 80;           // macro points per unit length
  double lambda = 0.5;    // macro dt / h
  double T_final = 1.0;
  MicroConfig micro;
  Material material;
  double eps = 0.03;
  Eigen::Index snapshot_stride = 0;
};

/// Interpolating cubic through the window (u_{m-2}, ..., u_{m+1}) in the
/// local coordinate xi = x - x_{m-1/2}; the nodes sit at xi/H in
/// {-3/2, -1/2, 1/2, 3/2}, so the inverse Vandermonde is closed-form.
Eigen::Vector4d fit_local_cubic(const Eigen::Vector4d& window, double H);

/// Corrected HMM flux F = f_tilde . c_tilde.
double hmm_flux(const MicroResult& entry, const Eigen::Vector4d& c_tilde);

/// Macro leapfrog with the corrected flux: every half-point evaluates
/// hmm_flux(table[m], fit_local_cubic(window, H)).  Builds the flux table
/// once unless a prebuilt one is supplied.
Trajectory run_hmm(const HmmConfig& cfg, const std::function<double(double)>& f,
                   const FluxTable* prebuilt = nullptr);

}  // namespace hmmwave

#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hmmwave/hmm_driver.hpp"
#include "hmmwave/wave_core.hpp"

namespace hmmwave {

/// Parameter set of one long-time wave propagation experiment.
struct ExperimentParams {
  std::string name;
  std::string material_key;
  double eps = 0.03;
  double T = 1.0;
  int rho = 80;          // macro grid, all solvers except DNS
  double lambda = 0.5;   // macro CFL ratio
  double dns_lambda = 0.5;
  int dns_rho_eps = 64;
  int micro_rho_eps = 64;
  double eta_ratio = 20.0;
  int kernel_p = 19;
  int kernel_q = 19;
  int n_modes = 128;
};

/// "one" | "two" | "three".
ExperimentParams experiment_params(const std::string& name);

/// Shrinks T and eps jointly, holding eta/eps, rho, rho_eps fixed.
void apply_scale(ExperimentParams& p, double scale);

struct ExperimentRuns {
  std::optional<Trajectory> dns, hom, eff, hmm;
};

/// Runs the selected solvers on the experiment's initial pulse, each with
/// `snapshots` stored time levels (plus t = 0 and T).
ExperimentRuns run_experiment(const ExperimentParams& p,
                              const std::set<std::string>& solvers,
                              Eigen::Index snapshots);

struct PairDistance {
  std::string a, b;
  double l2 = 0.0;
};

/// Pairwise L2 distances of the final states, resampled onto the coarser
/// grid of each pair.
std::vector<PairDistance> final_distances(const ExperimentRuns& runs);

/// Effective coefficients sampled at the macro half-points (parallel over
/// points when the material varies slowly).
std::vector<EffectiveCoeffs> effective_coeffs_at_half_points(
    const Material& m, const Grid1D& grid, int n_modes);

/// run_effective driven by per-half-point coefficients.
Trajectory run_effective_tabulated(const Material& m, double eps,
                                   const std::function<double(double)>& f,
                                   double T, int rho, double lambda,
                                   const std::vector<EffectiveCoeffs>& coeffs,
                                   Eigen::Index snapshot_stride = 0);

}  // namespace hmmwave

#include "hmmwave/hmm_driver.hpp"

#include <cmath>
#include <stdexcept>

namespace hmmwave {

Eigen::Vector4d fit_local_cubic(const Eigen::Vector4d& w, double H) {
  const double s1 = w(1) + w(2);
  const double s3 = w(0) + w(3);
  const double d1 = w(2) - w(1);
  const double d3 = w(3) - w(0);
  // Coefficients in z = xi / H, then rescaled.
  const double b0 = (9.0 * s1 - s3) / 16.0;
  const double b1 = (27.0 * d1 - d3) / 24.0;
  const double b2 = (s3 - s1) / 4.0;
  const double b3 = (d3 - 3.0 * d1) / 6.0;
  return {b0, b1 / H, b2 / (H * H), b3 / (H * H * H)};
}

double hmm_flux(const MicroResult& entry, const Eigen::Vector4d& c_tilde) {
  return entry.f_tilde.dot(c_tilde);
}

Trajectory run_hmm(const HmmConfig& cfg, const std::function<double(double)>& f,
                   const FluxTable* prebuilt) {
  Grid1D grid;
  grid.n = cfg.rho;
  const double h = grid.h();
  if (h < cfg.eps / 4.0) {
    throw std::invalid_argument(
        "run_hmm: macro grid too fine relative to eps (requires h >= eps/4)");
  }

  FluxTable local;
  const FluxTable* table = prebuilt;
  if (table == nullptr) {
    local = build_flux_table(cfg.material, grid, cfg.micro);
    table = &local;
  }
  if (Eigen::Index(table->entries.size()) != grid.n) {
    throw std::invalid_argument("run_hmm: flux table does not match the grid");
  }

  double max_abar = 0.0;
  for (Eigen::Index j = 0; j < grid.n; ++j) {
    max_abar = std::max(max_abar, harmonic_mean_barA(cfg.material,
                                                     grid.half_point(j)));
  }

  const std::vector<MicroResult>& entries = table->entries;
  FluxProvider flux = [&entries, h](const Eigen::VectorXd& u, Eigen::Index m) {
    const Eigen::Index n = u.size();
    auto w = [n](Eigen::Index i) { return ((i % n) + n) % n; };
    const Eigen::Vector4d window{u(w(m - 2)), u(w(m - 1)), u(w(m)),
                                 u(w(m + 1))};
    return entries[std::size_t(m)].f_tilde.dot(fit_local_cubic(window, h));
  };

  Eigen::VectorXd u0(grid.n);
  for (Eigen::Index i = 0; i < grid.n; ++i) u0(i) = f(grid.node(i));

  const auto n_steps = std::max<Eigen::Index>(
      cfg.T_final > 0.0
          ? Eigen::Index(std::llround(cfg.T_final / (cfg.lambda * h)))
          : 0,
      cfg.T_final > 0.0 ? 1 : 0);
  const double dt =
      n_steps > 0 ? cfg.T_final / double(n_steps) : cfg.lambda * h;
  return run_leapfrog_from_rest(grid, u0, dt, n_steps, flux, max_abar,
                                cfg.snapshot_stride);
}

}  // namespace hmmwave

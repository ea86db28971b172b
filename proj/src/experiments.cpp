#include "hmmwave/experiments.hpp"

#include <cmath>
#include <stdexcept>

#include "hmmwave/bloch.hpp"

namespace hmmwave {

ExperimentParams experiment_params(const std::string& name) {
  ExperimentParams p;
  p.name = name;
  if (name == "one") {
    p.material_key = "A1";
    p.T = 12.4976;
    p.rho = 80;
    p.lambda = 0.5;
    p.dns_lambda = 0.5;
  } else if (name == "two") {
    p.material_key = "A2";
    p.T = 7.9985;
    p.rho = 100;
    p.lambda = 0.5;
    p.dns_lambda = 0.25;
  } else if (name == "three") {
    p.material_key = "A3";
    p.T = 8.5677;
    p.rho = 70;
    p.lambda = 0.5;
    p.dns_lambda = 0.25;
  } else {
    throw std::invalid_argument("unknown experiment: " + name +
                                " (expected one|two|three)");
  }
  return p;
}

void apply_scale(ExperimentParams& p, double scale) {
  if (!(scale > 0.0)) throw std::invalid_argument("scale must be > 0");
  p.T *= scale;
  p.eps *= scale;
}

namespace {

Eigen::Index planned_steps(double T, double lambda, double h) {
  if (T <= 0.0) return 0;
  return std::max<Eigen::Index>(1, Eigen::Index(std::llround(T / (lambda * h))));
}

Eigen::Index stride_for(Eigen::Index n_steps, Eigen::Index snapshots) {
  if (snapshots <= 0) return 0;
  return std::max<Eigen::Index>(1, n_steps / snapshots);
}

}  // namespace

std::vector<EffectiveCoeffs> effective_coeffs_at_half_points(
    const Material& m, const Grid1D& grid, int n_modes) {
  if (!has_slow_variation(m)) {
    CellProblem cp;
    cp.fast_profile = frozen_fast_profile(m, 0.0);
    cp.n_modes = n_modes;
    return std::vector<EffectiveCoeffs>(std::size_t(grid.n),
                                        effective_coeffs(cp));
  }
  std::vector<double> xs(std::size_t(grid.n));
  for (Eigen::Index j = 0; j < grid.n; ++j) {
    xs[std::size_t(j)] = grid.half_point(j);
  }
  return beta_profile(m, xs, n_modes);
}

Trajectory run_effective_tabulated(const Material& m, double eps,
                                   const std::function<double(double)>& f,
                                   double T, int rho, double lambda,
                                   const std::vector<EffectiveCoeffs>& coeffs,
                                   Eigen::Index snapshot_stride) {
  if (Eigen::Index(coeffs.size()) != rho) {
    throw std::invalid_argument("effective coefficients do not match grid");
  }
  const double h = 1.0 / double(rho);
  auto lookup = [&coeffs, h, rho](double x) {
    auto j = Eigen::Index(std::llround(x / h + 0.5));
    j = ((j % rho) + rho) % rho;
    return coeffs[std::size_t(j)];
  };
  return run_effective(m, eps, f, T, rho, lambda, lookup, snapshot_stride);
}

ExperimentRuns run_experiment(const ExperimentParams& p,
                              const std::set<std::string>& solvers,
                              Eigen::Index snapshots) {
  const Material m = parse_material(p.material_key);
  const auto pulse = [](double x) { return gaussian_pulse_pair(x); };
  const double h = 1.0 / double(p.rho);

  ExperimentRuns runs;
  if (solvers.count("dns") != 0u) {
    const auto n_dns =
        Eigen::Index(std::llround(double(p.dns_rho_eps) / p.eps));
    const double h_dns = 1.0 / double(n_dns);
    runs.dns = run_dns(m, p.eps, pulse, p.T, p.dns_rho_eps, p.dns_lambda,
                       stride_for(planned_steps(p.T, p.dns_lambda, h_dns),
                                  snapshots));
  }
  const Eigen::Index macro_stride =
      stride_for(planned_steps(p.T, p.lambda, h), snapshots);
  if (solvers.count("hom") != 0u) {
    runs.hom = run_homogenized(m, pulse, p.T, p.rho, p.lambda, macro_stride);
  }
  if (solvers.count("eff") != 0u) {
    Grid1D grid;
    grid.n = p.rho;
    const auto coeffs = effective_coeffs_at_half_points(m, grid, p.n_modes);
    runs.eff = run_effective_tabulated(m, p.eps, pulse, p.T, p.rho, p.lambda,
                                       coeffs, macro_stride);
  }
  if (solvers.count("hmm") != 0u) {
    HmmConfig cfg;
    cfg.rho = p.rho;
    cfg.lambda = p.lambda;
    cfg.T_final = p.T;
    cfg.micro = make_micro_config(m, p.eps, p.eta_ratio, p.micro_rho_eps,
                                  p.lambda, p.kernel_p, p.kernel_q);
    cfg.material = m;
    cfg.eps = p.eps;
    cfg.snapshot_stride = macro_stride;
    runs.hmm = run_hmm(cfg, pulse);
  }
  return runs;
}

std::vector<PairDistance> final_distances(const ExperimentRuns& runs) {
  std::vector<std::pair<std::string, const Trajectory*>> present;
  if (runs.dns) present.emplace_back("dns", &*runs.dns);
  if (runs.hom) present.emplace_back("hom", &*runs.hom);
  if (runs.eff) present.emplace_back("eff", &*runs.eff);
  if (runs.hmm) present.emplace_back("hmm", &*runs.hmm);

  std::vector<PairDistance> out;
  for (std::size_t i = 0; i < present.size(); ++i) {
    for (std::size_t j = i + 1; j < present.size(); ++j) {
      const WaveField& a = present[i].second->final_state;
      const WaveField& b = present[j].second->final_state;
      const bool a_coarser = a.grid.n <= b.grid.n;
      const WaveField& coarse = a_coarser ? a : b;
      const WaveField& fine = a_coarser ? b : a;
      const Eigen::VectorXd resampled =
          resample_periodic(fine.u_curr, fine.grid, coarse.grid);
      out.push_back({present[i].first, present[j].first,
                     l2_distance(coarse.u_curr, resampled, coarse.grid.h())});
    }
  }
  return out;
}

}  // namespace hmmwave

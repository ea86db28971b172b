#include "hmmwave/micro_flux.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "hmmwave/parallel.hpp"

namespace hmmwave {

namespace {

double max_abs_offset(const std::vector<double>& offsets) {
  double m = 0.0;
  for (double d : offsets) m = std::max(m, std::abs(d));
  return m;
}

Eigen::Index near_integer(double x, const char* what) {
  const double r = std::round(x);
  if (std::abs(x - r) > 1e-9 * std::max(1.0, std::abs(x))) {
    throw std::invalid_argument(std::string("micro grid misalignment: ") +
                                what + " = " + std::to_string(x) +
                                " is not an integer multiple");
  }
  return Eigen::Index(r);
}

}  // namespace

MicroConfig make_micro_config(const Material& m, double eps, double eta_ratio,
                              int rho_eps, double lambda, int p, int q) {
  MicroConfig cfg;
  cfg.eps = eps;
  cfg.eta = eta_ratio * eps;
  cfg.tau = cfg.eta;
  cfg.rho_eps = rho_eps;
  cfg.lambda = lambda;
  cfg.kernel_p = p;
  cfg.kernel_q = q;

  const double h = cfg.h();
  for (int k = -2; k <= 2; ++k) {
    const double raw = double(k) * cfg.eta / 4.0;
    cfg.sample_offsets.push_back(std::round(raw / h) * h);
  }

  const double l0 = cfg.eta + max_abs_offset(cfg.sample_offsets) +
                    cfg.tau * std::sqrt(max_value(m)) + eps;
  cfg.box_halfwidth = std::ceil(l0 / eps - 1e-9) * eps;
  validate_micro_config(cfg, m);
  return cfg;
}

void validate_micro_config(const MicroConfig& cfg, const Material& m) {
  if (!(cfg.eps > 0.0) || !(cfg.eta > 0.0) || !(cfg.tau > 0.0)) {
    throw std::invalid_argument("micro config: eps, eta, tau must be > 0");
  }
  if (cfg.rho_eps < 4) {
    throw std::invalid_argument("micro config: rho_eps must be >= 4");
  }
  if (cfg.eta < 2.0 * cfg.eps) {
    throw std::invalid_argument(
        "micro config: eta/eps must be >= 2 (kernel must span periods)");
  }
  if (cfg.kernel_p < 1 || cfg.kernel_q < 1) {
    throw std::invalid_argument("micro config: kernel orders must be >= 1");
  }
  if (cfg.sample_offsets.size() < 5) {
    throw std::invalid_argument("micro config: need at least 5 sample offsets");
  }
  std::vector<double> sorted = cfg.sample_offsets;
  std::sort(sorted.begin(), sorted.end());
  const double h = cfg.h();
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i] - sorted[i - 1] < 0.5 * h) {
      throw std::invalid_argument("micro config: sample offsets not distinct");
    }
  }
  const double needed = cfg.eta + max_abs_offset(cfg.sample_offsets) +
                        cfg.tau * std::sqrt(max_value(m)) + cfg.eps;
  if (cfg.box_halfwidth < needed * (1.0 - 1e-12)) {
    throw std::invalid_argument(
        "micro config: box too small, boundary waves would reach the "
        "averaging window (L >= eta + max|Delta| + tau sqrt(max A) + eps)");
  }
  near_integer(2.0 * cfg.box_halfwidth / h, "2L/h");
  near_integer(cfg.eta / h, "eta/h");
}

MicroProblem::MicroProblem(const Material& m, double x_center,
                           const Eigen::Vector4d& q, const MicroConfig& cfg)
    : cfg_(cfg) {
  validate_micro_config(cfg, m);
  const double h = cfg.h();
  grid_.a = -cfg.box_halfwidth;
  grid_.b = cfg.box_halfwidth;
  grid_.n = near_integer(2.0 * cfg.box_halfwidth / h, "2L/h");

  n_steps_ = std::max<Eigen::Index>(
      1, Eigen::Index(std::llround(cfg.tau / (cfg.lambda * h))));
  dt_ = cfg.tau / double(n_steps_);
  max_a_ = max_value(m);
  require_cfl(dt_, h, max_a_);

  a_half_.resize(grid_.n);
  q_prime_half_.resize(grid_.n);
  q_nodes_.resize(grid_.n);
  for (Eigen::Index j = 0; j < grid_.n; ++j) {
    const double xh = grid_.half_point(j);
    a_half_(j) = material_eval(m, x_center + xh, cfg.eps);
    q_prime_half_(j) = q(1) + xh * (2.0 * q(2) + xh * 3.0 * q(3));
    const double xn = grid_.node(j);
    q_nodes_(j) = q(0) + xn * (q(1) + xn * (q(2) + xn * q(3)));
  }
}

void MicroProblem::fluxes_into(const Eigen::VectorXd& w,
                               Eigen::VectorXd& g) const {
  const Eigen::Index n = grid_.n;
  const double c = 1.0 / (24.0 * grid_.h());
  auto wr = [n](Eigen::Index i) { return ((i % n) + n) % n; };
  const Eigen::Index len = n - 3;  // half-points j = 2 .. n-2
  g.segment(2, len) = a_half_.segment(2, len).cwiseProduct(
      c * (w.segment(0, len) - 27.0 * w.segment(1, len) +
           27.0 * w.segment(2, len) - w.segment(3, len)) +
      q_prime_half_.segment(2, len));
  for (Eigen::Index j : {Eigen::Index(0), Eigen::Index(1), n - 1}) {
    const double d1 = c * (w(wr(j - 2)) - 27.0 * w(wr(j - 1)) +
                           27.0 * w(wr(j)) - w(wr(j + 1)));
    g(j) = a_half_(j) * (d1 + q_prime_half_(j));
  }
}

void MicroProblem::run(
    const std::function<void(Eigen::Index, const Eigen::VectorXd&,
                             const Eigen::VectorXd&)>& observe) const {
  const Eigen::Index n = grid_.n;
  Eigen::VectorXd w_prev = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd w_curr = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd w_next(n);
  Eigen::VectorXd g(n), v(n);
  const double scale = dt_ * dt_ / (24.0 * grid_.h());

  for (Eigen::Index k = 0; k <= n_steps_; ++k) {
    fluxes_into(w_curr, g);
    v = w_curr + q_nodes_;
    observe(k, v, g);
    if (k == n_steps_) break;
    if (k == 0) {
      // First step from rest: ghost level w^{-1} = w^{1}.
      add_flux_divergence(g, 0.5 * scale, w_curr);
    } else {
      w_next = 2.0 * w_curr - w_prev;
      add_flux_divergence(g, scale, w_next);
      w_prev.swap(w_curr);
      w_curr.swap(w_next);
    }
  }
}

MicroProblem solve_micro(const Material& m, double x_center,
                         const Eigen::Vector4d& q_coeffs,
                         const MicroConfig& cfg) {
  return MicroProblem(m, x_center, q_coeffs, cfg);
}

namespace {

// Quadrature windows of the averaging operator on the micro grid.  The flux
// lives on the staggered half-points, so its spatial rule is the midpoint
// rule over [-eta, eta]; the solution windows use node trapezoid over
// [Delta - eta, Delta + eta].  Both inherit spectral accuracy from the
// kernel's vanishing endpoint derivatives.
struct MicroWindows {
  Eigen::Index flux_begin = 0;
  Eigen::VectorXd flux_weights;
  std::vector<Eigen::Index> sol_begin;
  std::vector<Eigen::VectorXd> sol_weights;
  Eigen::VectorXd time_weights;  // doubled half-range trapezoid in t
};

MicroWindows build_windows(const MicroProblem& prob) {
  const MicroConfig& cfg = prob.config();
  const Grid1D& grid = prob.grid();
  const double h = grid.h();
  const double L = cfg.box_halfwidth;
  const KernelSpec kernel = construct_kernel(cfg.kernel_p, cfg.kernel_q);

  MicroWindows w;
  const Eigen::Index half_per_eta = near_integer(cfg.eta / h, "eta/h");

  // Half-points strictly inside (-eta, eta): midpoints of the 2 eta/h cells.
  w.flux_begin = near_integer((L - cfg.eta) / h, "(L-eta)/h") + 1;
  const Eigen::Index n_flux = 2 * half_per_eta;
  w.flux_weights.resize(n_flux);
  for (Eigen::Index i = 0; i < n_flux; ++i) {
    const double x = grid.half_point(w.flux_begin + i);
    w.flux_weights(i) = h * kernel_value(kernel, x / cfg.eta) / cfg.eta;
  }

  for (double delta : cfg.sample_offsets) {
    const Eigen::Index center = near_integer((delta + L) / h, "Delta/h");
    const Eigen::Index begin = center - half_per_eta;
    if (begin < 0 || center + half_per_eta >= grid.n) {
      throw std::invalid_argument(
          "micro config: sample window exceeds the micro box");
    }
    Eigen::VectorXd weights(2 * half_per_eta + 1);
    for (Eigen::Index i = 0; i < weights.size(); ++i) {
      const double x = grid.node(begin + i) - grid.node(center);
      weights(i) = h * kernel_value(kernel, x / cfg.eta) / cfg.eta;
    }
    w.sol_begin.push_back(begin);
    w.sol_weights.push_back(std::move(weights));
  }

  // 2 int_0^tau K_tau(t) ... dt realized as the doubled trapezoid; the t = 0
  // node keeps single weight (it is its own mirror image).
  const double dt = prob.dt();
  w.time_weights.resize(prob.n_steps() + 1);
  for (Eigen::Index k = 0; k <= prob.n_steps(); ++k) {
    const double c = (k == 0) ? 1.0 : 2.0;
    w.time_weights(k) =
        c * dt * kernel_value(kernel, double(k) * dt / cfg.tau) / cfg.tau;
  }
  return w;
}

}  // namespace

MicroAverages accumulate_micro(const MicroProblem& problem) {
  const MicroWindows win = build_windows(problem);
  const auto n_offsets = Eigen::Index(win.sol_begin.size());

  MicroAverages acc;
  acc.solution_at_offsets = Eigen::VectorXd::Zero(n_offsets);
  const Eigen::Index n_flux = win.flux_weights.size();

  problem.run([&](Eigen::Index k, const Eigen::VectorXd& v,
                  const Eigen::VectorXd& g) {
    const double wt = win.time_weights(k);
    if (wt == 0.0) return;
    acc.flux += wt * win.flux_weights.dot(g.segment(win.flux_begin, n_flux));
    for (Eigen::Index o = 0; o < n_offsets; ++o) {
      acc.solution_at_offsets(o) +=
          wt * win.sol_weights[o].dot(
                   v.segment(win.sol_begin[o], win.sol_weights[o].size()));
    }
  });
  return acc;
}

double compute_raw_flux(const MicroProblem& problem) {
  return accumulate_micro(problem).flux;
}

namespace {

// Fits cubics through (Delta_k, Y_k) in the scaled coordinate z = Delta/eta
// and assembles M (column i from initial data Q = x^i), then
// f_tilde = M^{-T} f.
MicroResult assemble_result(const Eigen::Vector4d& f,
                            const Eigen::MatrixXd& y_columns,
                            const MicroConfig& cfg) {
  const auto n_off = Eigen::Index(cfg.sample_offsets.size());
  Eigen::MatrixXd vand(n_off, 4);
  for (Eigen::Index r = 0; r < n_off; ++r) {
    const double z = cfg.sample_offsets[std::size_t(r)] / cfg.eta;
    vand(r, 0) = 1.0;
    for (int c = 1; c < 4; ++c) vand(r, c) = vand(r, c - 1) * z;
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(vand);
  if (qr.rank() < 4) {
    throw std::runtime_error(
        "correction fit is rank deficient (sample offsets too clustered)");
  }

  MicroResult out;
  out.f = f;
  for (int i = 0; i < 4; ++i) {
    const Eigen::Vector4d b = qr.solve(y_columns.col(i));
    double scale = 1.0;
    for (int j = 0; j < 4; ++j) {
      out.M(j, i) = b(j) / scale;
      scale *= cfg.eta;
    }
  }

  Eigen::PartialPivLU<Eigen::Matrix4d> lu(out.M.transpose());
  if (!(lu.rcond() > 1e-12)) {
    throw std::runtime_error("correction matrix is numerically singular");
  }
  out.f_tilde = lu.solve(out.f);
  return out;
}

}  // namespace

MicroResult compute_correction_matrix(const Material& m, double x_center,
                                      const MicroConfig& cfg) {
  Eigen::Vector4d f;
  Eigen::MatrixXd y(Eigen::Index(cfg.sample_offsets.size()), 4);
  parallel_for(4, [&](std::size_t i) {
    const MicroProblem prob(m, x_center, Eigen::Vector4d::Unit(Eigen::Index(i)),
                            cfg);
    const MicroAverages av = accumulate_micro(prob);
    f(Eigen::Index(i)) = av.flux;
    y.col(Eigen::Index(i)) = av.solution_at_offsets;
  });
  return assemble_result(f, y, cfg);
}

FluxTable build_flux_table(const Material& m, const Grid1D& macro_grid,
                           const MicroConfig& cfg) {
  FluxTable table;
  const double period = macro_grid.b - macro_grid.a;
  table.x_half.resize(std::size_t(macro_grid.n));
  for (Eigen::Index j = 0; j < macro_grid.n; ++j) {
    double x = macro_grid.half_point(j);
    if (x < macro_grid.a) x += period;
    table.x_half[std::size_t(j)] = x;
  }

  if (!has_slow_variation(m)) {
    const MicroResult one = compute_correction_matrix(m, 0.0, cfg);
    table.entries.assign(std::size_t(macro_grid.n), one);
    return table;
  }

  // Parallel map over (half-point x monomial); each task owns one slot.
  const std::size_t n_points = std::size_t(macro_grid.n);
  std::vector<Eigen::Vector4d> fs(n_points);
  std::vector<Eigen::MatrixXd> ys(
      n_points,
      Eigen::MatrixXd(Eigen::Index(cfg.sample_offsets.size()), 4));
  parallel_for(n_points * 4, [&](std::size_t task) {
    const std::size_t pt = task / 4;
    const auto i = Eigen::Index(task % 4);
    const MicroProblem prob(m, table.x_half[pt], Eigen::Vector4d::Unit(i), cfg);
    const MicroAverages av = accumulate_micro(prob);
    fs[pt](i) = av.flux;
    ys[pt].col(i) = av.solution_at_offsets;
  });
  table.entries.resize(n_points);
  for (std::size_t pt = 0; pt < n_points; ++pt) {
    table.entries[pt] = assemble_result(fs[pt], ys[pt], cfg);
  }
  return table;
}

}  // namespace hmmwave

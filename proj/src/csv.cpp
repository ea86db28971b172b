#include "hmmwave/csv.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace hmmwave {

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string snapshot_filename(const std::string& run, double t) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", t);
  return run + "_t" + buf + ".csv";
}

void write_snapshot_csv(const std::filesystem::path& file, const Grid1D& grid,
                        const Eigen::VectorXd& u) {
  std::ofstream os(file);
  if (!os) throw std::runtime_error("cannot write " + file.string());
  os << "x,u\n";
  for (Eigen::Index i = 0; i < grid.n; ++i) {
    os << format_g17(grid.node(i)) << ',' << format_g17(u(i)) << '\n';
  }
}

void write_trajectory_csv(const std::filesystem::path& dir,
                          const std::string& run, const Trajectory& traj) {
  std::filesystem::create_directories(dir);
  for (std::size_t s = 0; s < traj.snapshots.size(); ++s) {
    write_snapshot_csv(dir / snapshot_filename(run, traj.times[s]),
                       traj.final_state.grid, traj.snapshots[s]);
  }
}

}  // namespace hmmwave

#pragma once

#include <filesystem>
#include <string>

#include "hmmwave/wave_core.hpp"

namespace hmmwave {

/// Shortest round-trip-exact decimal form of a double (17 significant digits).
std::string format_g17(double v);

/// "<run>_t<time>.csv"
std::string snapshot_filename(const std::string& run, double t);

/// Writes one snapshot as CSV with header "x,u", one row per node.
void write_snapshot_csv(const std::filesystem::path& file, const Grid1D& grid,
                        const Eigen::VectorXd& u);

/// Writes every stored snapshot of a trajectory into dir.
void write_trajectory_csv(const std::filesystem::path& dir,
                          const std::string& run, const Trajectory& traj);

}  // namespace hmmwave

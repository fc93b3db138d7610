#pragma once

#include <string>
#include <vector>

#include "qtraj/analysis.hpp"
#include "qtraj/bohmian.hpp"
#include "qtraj/config.hpp"
#include "qtraj/propagator.hpp"

namespace qtraj {

struct RunResult {
  SnapshotSet snapshots;        // recorded at snapshot_stride
  TrajectoryEnsemble ensemble;  // recorded at traj_stride
  std::vector<double> obs_times;
  std::vector<Moments> moments;        // at obs_times
  std::vector<double> mean_force;      // at obs_times
  ScatteringReport report;
};

/// Propagates the configured scenario, integrating the trajectory ensemble on
/// the traj_stride cadence, and fills the scattering report. For a barrier
/// scenario a matched free-potential baseline run supplies the onset time.
RunResult simulate(const RunConfig& config);

/// simulate() plus output files (fields.csv, trajectories.csv, report.txt) in
/// config.out_dir. A lockfile guards the directory against concurrent runs.
RunResult run_to_files(const RunConfig& config);

}  // namespace qtraj

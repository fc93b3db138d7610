#include "qtraj/runner.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

namespace qtraj {

namespace {

struct CoreResult {
  SnapshotSet snapshots;
  TrajectoryEnsemble ensemble;
  std::vector<double> obs_times;
  std::vector<Moments> moments;
  std::vector<double> mean_force;
  ComplexField final_field;
};

CoreResult simulate_core(const RunConfig& config) {
  const Grid grid = config.grid();
  const PotentialSpec pot = config.potential_spec();
  const ComplexField initial = gaussian_packet(grid, config.packet());

  CoreResult r;
  r.ensemble = make_ensemble(config.packet(), config.n_traj, config.half_span);

  auto observer = [&](std::size_t step, const ComplexField& f) {
    const bool last = step == grid.n_steps;
    if (step % config.traj_stride != 0 && !last) return;
    const PolarField polar = polar_decompose(f);
    const FieldDerived derived = compute_field_derived(polar, grid);
    const std::size_t next = std::min(step + config.traj_stride, grid.n_steps);
    const double dt_adv = static_cast<double>(next - step) * grid.dt;
    record_and_advance(r.ensemble, derived, pot, grid, dt_adv);
    r.obs_times.push_back(f.time);
    r.moments.push_back(expectation_values(f, grid));
    r.mean_force.push_back(mean_classical_force(f, grid, pot));
    if (last) r.final_field = f;
  };

  r.snapshots = propagate(initial, pot, grid, config.schedule(), observer);
  if (grid.n_steps == 0) r.final_field = initial;
  return r;
}

}  // namespace

RunResult simulate(const RunConfig& config) {
  CoreResult core = simulate_core(config);

  RunResult out;
  out.report.split_position = config.split;
  out.report.evaluation_time = core.final_field.time;
  const auto [t, refl] =
      transmission_reflection(core.final_field, config.grid(), config.split);
  out.report.transmission = t;
  out.report.reflection = refl;
  const auto [rq, rp] =
      ehrenfest_residuals(core.obs_times, core.moments, core.mean_force);
  out.report.ehrenfest_q_residual = rq;
  out.report.ehrenfest_p_residual = rp;

  if (config.potential == PotentialSpec::Kind::Eckart) {
    RunConfig twin = config;
    twin.potential = PotentialSpec::Kind::Free;
    CoreResult baseline = simulate_core(twin);
    out.report.onset_time =
        onset_detector(core.ensemble, baseline.ensemble, 0, config.onset_threshold);
  }

  out.snapshots = std::move(core.snapshots);
  out.ensemble = std::move(core.ensemble);
  out.obs_times = std::move(core.obs_times);
  out.moments = std::move(core.moments);
  out.mean_force = std::move(core.mean_force);
  return out;
}

namespace {

// Exclusive ownership of <dir>/.lock for the lifetime of a run.
class DirLock {
 public:
  explicit DirLock(const std::filesystem::path& dir) : path_(dir / ".lock") {
    fd_ = ::open(path_.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
    if (fd_ < 0) {
      throw std::runtime_error("output directory '" + dir.string() +
                               "' is locked by another run (" + path_.string() +
                               " exists)");
    }
  }
  ~DirLock() {
    if (fd_ >= 0) {
      ::close(fd_);
      std::error_code ec;
      std::filesystem::remove(path_, ec);
    }
  }
  DirLock(const DirLock&) = delete;
  DirLock& operator=(const DirLock&) = delete;

 private:
  std::filesystem::path path_;
  int fd_ = -1;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_fields_csv(const std::filesystem::path& path, const RunConfig& config,
                      const RunResult& result) {
  const Grid grid = config.grid();
  const std::vector<double> pot =
      potential_table(config.potential_spec(), grid);
  std::ofstream out(path);
  out << "t,q,re,im,R,S,Q,V\n";
  for (const Snapshot& snap : result.snapshots.snapshots) {
    const std::vector<double> q = quantum_potential(snap.polar, grid);
    for (std::size_t i = 0; i < grid.n_points; ++i) {
      out << fmt(snap.time) << ',' << fmt(grid.node(i)) << ','
          << fmt(snap.field.re[i]) << ',' << fmt(snap.field.im[i]) << ','
          << fmt(snap.polar.amplitude[i]) << ',' << fmt(snap.polar.phase[i])
          << ',' << fmt(q[i]) << ',' << fmt(pot[i]) << '\n';
    }
  }
}

void write_trajectories_csv(const std::filesystem::path& path,
                            const RunResult& result) {
  std::ofstream out(path);
  out << "traj_id,t,q,v,Q,FQ,FC,Feff\n";
  for (std::size_t j = 0; j < result.ensemble.size(); ++j) {
    for (const TrajectoryPoint& p : result.ensemble.series[j]) {
      out << j << ',' << fmt(p.t) << ',' << fmt(p.q) << ',' << fmt(p.v) << ','
          << fmt(p.Q) << ',' << fmt(p.FQ) << ',' << fmt(p.FC) << ','
          << fmt(p.Feff) << '\n';
    }
  }
}

void write_report(const std::filesystem::path& path, const RunConfig& config,
                  const RunResult& result) {
  std::ofstream out(path);
  out << "scenario = " << config.scenario << "\n";
  out << "scheme = "
      << (config.scheme == Scheme::ExplicitFTCS ? "ftcs" : "cn") << "\n";
  out << "grid = [" << fmt(config.q_min) << ", " << fmt(config.q_max) << "] x "
      << config.n_points << ", dt = " << fmt(config.dt) << ", n_steps = "
      << config.n_steps << "\n";
  out << "\nnorm_history:\n";
  for (const auto& [t, norm] : result.snapshots.norm_history) {
    out << "  t = " << fmt(t) << "  norm = " << fmt(norm)
        << "  drift = " << fmt(norm - 1.0) << "\n";
  }
  if (result.snapshots.norm_drift_exceeded) {
    out << "WARNING: explicit-scheme norm drift exceeded 1e-3\n";
  }
  out << "\nsplit = " << fmt(result.report.split_position)
      << "  (evaluated at t = " << fmt(result.report.evaluation_time) << ")\n";
  out << "transmission T = " << fmt(result.report.transmission) << "\n";
  out << "reflection  R = " << fmt(result.report.reflection) << "\n";
  out << "\nehrenfest_q_residual = " << fmt(result.report.ehrenfest_q_residual)
      << "\n";
  out << "ehrenfest_p_residual = " << fmt(result.report.ehrenfest_p_residual)
      << "\n";
  out << "\nonset_reference_time = 0.15\n";
  if (result.report.onset_time) {
    out << "onset_time = " << fmt(*result.report.onset_time) << "\n";
  } else {
    out << "onset_time = none\n";
  }
}

}  // namespace

RunResult run_to_files(const RunConfig& config) {
  const std::filesystem::path dir(config.out_dir);
  std::filesystem::create_directories(dir);
  DirLock lock(dir);

  RunResult result = simulate(config);
  if (result.snapshots.norm_drift_exceeded) {
    std::cerr << "warning: explicit-scheme norm drift exceeded 1e-3\n";
  }
  write_fields_csv(dir / "fields.csv", config, result);
  write_trajectories_csv(dir / "trajectories.csv", result);
  write_report(dir / "report.txt", config, result);
  return result;
}

}  // namespace qtraj

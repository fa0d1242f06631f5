#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "accelflow/solver.hpp"

namespace accelflow {

enum class ExperimentKind { convergence, alpha_sweep, size_sweep, noise_sweep };

const char* experiment_kind_name(ExperimentKind k);
ExperimentKind experiment_kind_from_name(const std::string& name);

/// A serialized experiment: flat `key = value` text, one pair per line,
/// '#' starts a comment. Every field is echoed into the CSV headers so a
/// result file is self-describing.
struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::convergence;
  std::vector<Scheme> schemes = {Scheme::agd, Scheme::gd};

  int width = 50;
  int height = 50;
  int square = 20;  // square side, pixels
  int shift_x = 10;
  int shift_y = 0;
  int rect_w = 0;  // > 0 selects the square-vs-rectangle pair (no ground truth)
  int rect_h = 0;

  double alpha = 5.0;
  std::vector<double> alphas = {1, 2, 4, 8, 16};   // alpha_sweep
  std::vector<int> sizes = {50, 75, 100};          // size_sweep
  std::vector<double> noise_levels = {0.0, 0.1, 0.2, 0.3};  // noise_sweep

  std::uint64_t seed = 7;
  double tol = 1e-4;
  int max_iters = 100000;
  double safety = 0.9;
  int p = 2;
  double C = 0.0;          // 0 = auto: 1/(W H)
  double eps_visc = -1.0;  // < 0 = auto: 0.05 for the velocity schemes

  static ExperimentSpec parse(std::istream& in);
  static ExperimentSpec parse_file(const std::string& path);
  std::string serialize() const;

  SolverConfig solver_config(Scheme scheme, double alpha_value, const GridSpec& g) const;
};

/// Runs every configuration of the spec. Writes, under out_dir:
/// per-scheme per-configuration trace CSVs (iter,t,potential,kinetic,
/// total,dt,map_increment), warped images and DFLO flows, and a
/// summary.csv (one row per configuration and scheme). Run failures land
/// in the summary's status column instead of aborting the sweep.
void run_experiment(const ExperimentSpec& spec, const std::string& out_dir);

}  // namespace accelflow

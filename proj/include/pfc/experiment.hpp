#pragma once

#include <filesystem>
#include <string>

#include "pfc/config.hpp"

namespace pfc {

struct ExperimentSummary {
  int steps = 0;
  int snapshots = 0;
  int non_converged_steps = 0;
  double final_energy = 0.0;
};

/// Snapshot file stem for a step, e.g. "step_000050".
std::string snapshot_stem(int step);

/// CSV row for one step report, in the column order of kEnergyCsvHeader.
std::string energy_csv_row(const StepReport &r);

inline constexpr const char *kEnergyCsvHeader = "step,time,energy,inner_iters,final_change";

/// Runs the configured experiment from its seeded random initial state and
/// writes into config.output.dir: step_%06d.field / .ppm every save_every
/// steps (step 0 included) and energy.csv. I/O failures raise IoError.
ExperimentSummary run_experiment(const RunConfig &config);

} // namespace pfc

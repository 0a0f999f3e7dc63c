#include "pfc/experiment.hpp"

#include <cstdio>
#include <fstream>

#include "pfc/errors.hpp"
#include "pfc/field_io.hpp"
#include "pfc/image.hpp"

namespace pfc {

std::string snapshot_stem(int step) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "step_%06d", step);
  return buf;
}

std::string energy_csv_row(const StepReport &r) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%d,%.17g", r.step, r.time, r.energy,
                r.inner_iters, r.final_change);
  return buf;
}

ExperimentSummary run_experiment(const RunConfig &config) {
  const Solver solver = config.make_solver();
  const std::filesystem::path dir = config.output.dir;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec)
    throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());

  std::ofstream csv;
  if (config.output.csv) {
    csv.open(dir / "energy.csv", std::ios::binary | std::ios::trunc);
    if (!csv)
      throw IoError("cannot open '" + (dir / "energy.csv").string() + "' for writing");
    csv << kEnergyCsvHeader << '\n';
  }

  ExperimentSummary summary;
  RunObserver observer;
  observer.save_every = config.output.save_every;
  observer.on_step = [&](const StepReport &r) {
    ++summary.steps;
    if (!r.converged)
      ++summary.non_converged_steps;
    summary.final_energy = r.energy;
    if (csv.is_open()) {
      csv << energy_csv_row(r) << '\n';
      if (!csv)
        throw IoError("failed writing energy.csv");
    }
  };
  observer.on_snapshot = [&](int step, const PhaseField &u) {
    ++summary.snapshots;
    const std::string stem = snapshot_stem(step);
    if (config.output.field)
      write_field(dir / (stem + ".field"), u);
    if (config.output.ppm)
      write_image(dir / (stem + ".ppm"), u, solver.set());
  };

  const PhaseField u0 = init_random(solver.grid(), solver.set(), config.seed);
  if (summary.steps == 0 && config.solver.steps == 0)
    summary.final_energy = solver.energy(u0);
  solver.run(u0, config.solver.steps, observer);
  if (csv.is_open()) {
    csv.flush();
    if (!csv)
      throw IoError("failed writing energy.csv");
  }
  return summary;
}

} // namespace pfc

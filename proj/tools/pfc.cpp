// Command-line driver: run experiments, probe projections, analyze snapshots.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pfc/config.hpp"
#include "pfc/diagnostics.hpp"
#include "pfc/errors.hpp"
#include "pfc/experiment.hpp"
#include "pfc/field_io.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;
constexpr int kExitNotConverged = 4;

pfc::Vec2 parse_point(const std::string &text, int dimension) {
  std::vector<double> coords;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      coords.push_back(std::stod(item, &used));
      if (used != item.size())
        throw std::invalid_argument(item);
    } catch (const std::exception &) {
      throw pfc::ConfigError(0, "invalid coordinate '" + item + "'");
    }
  }
  if (static_cast<int>(coords.size()) != dimension)
    throw pfc::ConfigError(0, "point needs " + std::to_string(dimension) + " coordinate(s)");
  return {coords[0], dimension > 1 ? coords[1] : 0.0};
}

int cmd_run(const std::string &config_path, std::optional<std::uint64_t> seed,
            std::optional<int> steps, std::optional<std::string> out, bool strict) {
  pfc::RunConfig cfg = pfc::load_config(config_path);
  if (seed)
    cfg.seed = *seed;
  if (steps) {
    if (*steps < 0)
      throw pfc::ConfigError(0, "--steps must be >= 0");
    cfg.solver.steps = *steps;
  }
  if (out)
    cfg.output.dir = *out;
  const pfc::ExperimentSummary s = pfc::run_experiment(cfg);
  std::printf("%d steps, %d snapshots, final energy %.10g, %d non-converged steps\n", s.steps,
              s.snapshots, s.final_energy, s.non_converged_steps);
  if (strict && s.non_converged_steps > 0) {
    std::fprintf(stderr, "error: inner iteration did not converge in %d step(s)\n",
                 s.non_converged_steps);
    return kExitNotConverged;
  }
  return 0;
}

int cmd_project(const std::string &set_name, const std::string &point) {
  const pfc::ConstraintSet set = pfc::named_set(set_name);
  const pfc::Vec2 q = set.project(parse_point(point, set.dimension()));
  if (set.dimension() == 1)
    std::printf("%g\n", q.x);
  else
    std::printf("%g %g\n", q.x, q.y);
  return 0;
}

int cmd_diag(const std::string &kind, const std::string &field_path,
             const std::string &config_path) {
  const pfc::RunConfig cfg = pfc::load_config(config_path);
  const pfc::ConstraintSet set = cfg.constraint.make();
  const pfc::PhaseField u = pfc::read_field(field_path, cfg.grid);
  if (u.components() != set.dimension())
    throw pfc::IoError("field component count does not match the configured set");

  if (kind == "vortices") {
    if (u.components() != 2)
      throw pfc::ConfigError(0, "vortex detection needs a two-component field");
    const auto list = pfc::detect_vortices(u, 0.3 * set.radial_extent());
    std::printf("vortices %zu composites %zu total_polarity %d\n", list.vortices.size(),
                list.composites.size(), list.total_polarity());
    for (const auto &v : list.vortices)
      std::printf("vortex %.6f %.6f %+d\n", v.position.x, v.position.y, v.polarity);
    for (const auto &v : list.composites)
      std::printf("composite %.6f %.6f %+d\n", v.position.x, v.position.y, v.polarity);
  } else if (kind == "fractions") {
    const auto f = pfc::phase_fractions(u, set, 1e-9);
    for (std::size_t p = 0; p + 1 < f.size(); ++p)
      std::printf("phase%zu %.10f\n", p + 1, f[p]);
    std::printf("interface %.10f\n", f.back());
    if (set.kind() == pfc::SetKind::Lens) {
      const auto split = pfc::lens_interface_split(u, set, 1e-9);
      std::printf("interface_red %.10f\ninterface_blue %.10f\n", split.red, split.blue);
    }
  } else {
    for (int c = 0; c < u.components(); ++c)
      std::printf("component%d dominant_kx %.10g\n", c, pfc::dominant_wavenumber_x(u, c));
  }
  return 0;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Convex-constrained phase-field simulator"};
  app.require_subcommand(1);

  std::string config_path, out_dir, set_name, point, field_path, diag_kind;
  std::uint64_t seed = 0;
  int steps = 0;
  bool strict = false;

  auto *run = app.add_subcommand("run", "Run an experiment from a config file");
  run->add_option("--config", config_path, "Config file")->required();
  auto *seed_opt = run->add_option("--seed", seed, "Override init.seed");
  auto *steps_opt = run->add_option("--steps", steps, "Override solver.steps");
  auto *out_opt = run->add_option("--out", out_dir, "Override output.dir");
  run->add_flag("--strict", strict, "Exit with status 4 if any inner loop fails to converge");

  auto *project = app.add_subcommand("project", "Print the projection of a point onto a set");
  project->add_option("--set", set_name, "interval | disk | triangle | lens")->required();
  project->add_option("--point", point, "X or X,Y")->required();

  auto *diag = app.add_subcommand("diag", "Analyze a saved field");
  diag->add_option("kind", diag_kind, "vortices | fractions | spectrum")
      ->required()
      ->check(CLI::IsMember({"vortices", "fractions", "spectrum"}));
  diag->add_option("--field", field_path, "PFC1 field file")->required();
  diag->add_option("--config", config_path, "Config the field was produced with")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (run->parsed())
      return cmd_run(config_path, seed_opt->count() ? std::optional(seed) : std::nullopt,
                     steps_opt->count() ? std::optional(steps) : std::nullopt,
                     out_opt->count() ? std::optional(out_dir) : std::nullopt, strict);
    if (project->parsed())
      return cmd_project(set_name, point);
    return cmd_diag(diag_kind, field_path, config_path);
  } catch (const pfc::ConfigError &e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const pfc::IoError &e) {
    std::fprintf(stderr, "I/O error: %s\n", e.what());
    return kExitIo;
  } catch (const std::invalid_argument &e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const std::exception &e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}

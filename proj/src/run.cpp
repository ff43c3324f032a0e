#include "necklace/run.hpp"

#include "necklace/ids.hpp"
#include "necklace/report.hpp"
#include "necklace/scattering.hpp"
#include "necklace/verify.hpp"

#include <cmath>
#include <fstream>

namespace necklace {

namespace {

std::ofstream open_output(const std::string &path) {
  std::ofstream out(path);
  if (!out)
    throw ConfigError("cannot write '" + path + "'");
  return out;
}

void run_curve(const RunConfig &config, std::ostream &log) {
  const auto dist = config.distribution();
  CurveOptions options;
  options.chain_length = config.chain_length;
  options.realizations = config.realizations;
  options.seed = config.seed;
  options.magnetic_field = config.magnetic_field;
  options.threads = config.threads;
  const auto curve = full_curve(dist, energy_grid(config), options);

  auto csv = open_output(config.output);
  write_curve_csv(csv, curve);
  const std::string svg_path = svg_path_for(config.output);
  auto svg = open_output(svg_path);
  write_curve_svg(svg, curve, mode_name(config.mode));
  log << "wrote " << config.output << " and " << svg_path << '\n';
}

void run_jumps(const RunConfig &config, std::ostream &log) {
  const auto jumps = jump_set(config.distribution(), config.e_max, config.magnetic_field);
  auto csv = open_output(config.output);
  write_jumps_csv(csv, jumps);
  log << "wrote " << jumps.size() << " jumps to " << config.output << '\n';
}

void run_bands(const RunConfig &config, std::ostream &log) {
  const auto dist = config.distribution();
  if (dist.atoms().size() != 1 || !dist.pieces().empty())
    throw ConfigError("bands mode needs a single atom (periodic necklace)");
  const double omega0 = dist.atoms().front().length;
  std::vector<BandRow> rows;
  for (double e : energy_grid(config)) {
    const double h = hill_discriminant(e, omega0);
    rows.push_back({e, h, std::abs(h) <= 2.0});
  }
  auto csv = open_output(config.output);
  write_bands_csv(csv, rows);
  log << "wrote " << config.output << '\n';
}

} // namespace

int run(const RunConfig &config, std::ostream &log) {
  try {
    validate(config);
    switch (config.mode) {
    case Mode::ids:
    case Mode::lyapunov:
      run_curve(config, log);
      break;
    case Mode::jumps:
      run_jumps(config, log);
      break;
    case Mode::bands:
      run_bands(config, log);
      break;
    case Mode::verify: {
      VerifyOptions options;
      options.seed = config.seed;
      return print_table(log, run_verification(options)) ? kExitOk : kExitCheckFailed;
    }
    }
  } catch (const ConfigError &ex) {
    log << "config error: " << ex.what() << '\n';
    return kExitConfig;
  } catch (const PointFailure &ex) {
    log << "numerical abort at energy index " << ex.index() << ": " << ex.what() << '\n';
    return kExitNumeric;
  } catch (const NumericalError &ex) {
    log << "numerical abort: " << ex.what() << '\n';
    return kExitNumeric;
  }
  return kExitOk;
}

} // namespace necklace

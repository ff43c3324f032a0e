// Batch front-end for the random necklace library.
//
//   necklace <ids|lyapunov|jumps|bands|verify> --config run.json
//            [--seed S] [--points N] [--chain M] [--realizations R]
//            [--out PATH] [--threads T] [--sqrt-grid]
//
// Flags override the corresponding config fields. `verify` runs without a
// config file. Exit status: 0 ok, 1 verification failed, 2 config error,
// 3 numerical abort.

#include "necklace/config.hpp"
#include "necklace/run.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

int main(int argc, char **argv) {
  using namespace necklace;

  CLI::App app{"Spectral curves of the random necklace graph"};
  std::string mode;
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<long> points;
  std::optional<long> chain;
  std::optional<int> realizations;
  std::optional<std::string> out;
  std::optional<unsigned> threads;
  bool sqrt_grid = false;

  app.add_option("mode", mode, "ids, lyapunov, jumps, bands or verify")->required();
  app.add_option("--config", config_path, "JSON run configuration");
  app.add_option("--seed", seed, "master seed");
  app.add_option("--points", points, "number of grid energies");
  app.add_option("--chain", chain, "loops per chain");
  app.add_option("--realizations", realizations, "independent chains per energy");
  app.add_option("--out", out, "output CSV path");
  app.add_option("--threads", threads, "worker threads, 0 for all cores");
  app.add_flag("--sqrt-grid", sqrt_grid, "grid uniform in sqrt(E)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kExitConfig;
  }

  RunConfig config;
  try {
    const Mode requested = parse_mode(mode);
    if (!config_path.empty())
      config = load_config(config_path);
    else if (requested != Mode::verify)
      throw ConfigError("--config is required for mode '" + mode + "'");
    config.mode = requested;
  } catch (const ConfigError &e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }

  if (seed)
    config.seed = *seed;
  if (points)
    config.points = *points;
  if (chain)
    config.chain_length = *chain;
  if (realizations)
    config.realizations = *realizations;
  if (out)
    config.output = *out;
  if (threads)
    config.threads = *threads;
  if (sqrt_grid)
    config.spacing = GridSpacing::sqrt_energy;

  std::ostream &log = config.mode == Mode::verify ? std::cout : std::cerr;
  return run(config, log);
}

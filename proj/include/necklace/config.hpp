#ifndef NECKLACE_CONFIG_HPP
#define NECKLACE_CONFIG_HPP

#include "necklace/distributions.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace necklace {

class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class Mode { ids, lyapunov, jumps, bands, verify };
enum class GridSpacing { linear, sqrt_energy };

/// One batch run. Parsed from a JSON document with `"schema": 1`:
///
///   {
///     "schema": 1,
///     "mode": "ids",
///     "distribution": {"atoms": [[2, 0.5], [6, 0.5]], "density": [[0.5, 1.5, 1.0]]},
///     "grid": {"e_min": 0.05, "e_max": 120, "points": 1000, "spacing": "linear"},
///     "chain_length": 100000, "realizations": 8, "seed": 1,
///     "magnetic_field": 0, "threads": 1, "output": "ids.csv"
///   }
///
/// Every key except "schema" and "distribution" is optional.
struct RunConfig {
  Mode mode = Mode::ids;
  std::vector<Atom> atoms;
  std::vector<DensityPiece> density;
  double e_min = 0.05;
  double e_max = 100.0;
  long points = 200;
  GridSpacing spacing = GridSpacing::linear;
  long chain_length = 100000;
  int realizations = 8;
  std::uint64_t seed = 1;
  double magnetic_field = 0.0;
  unsigned threads = 1;
  std::string output = "necklace.csv";

  /// Throws ConfigError if the law is invalid.
  ArcLengthDistribution distribution() const;
};

Mode parse_mode(const std::string &name);
std::string mode_name(Mode mode);

RunConfig parse_config(const std::string &json_text);
RunConfig load_config(const std::string &path);

/// Throws ConfigError on out-of-range fields.
void validate(const RunConfig &config);

/// Linear in E, or uniform in sqrt(E).
std::vector<double> energy_grid(const RunConfig &config);

} // namespace necklace

#endif // NECKLACE_CONFIG_HPP

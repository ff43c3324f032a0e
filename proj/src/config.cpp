#include "necklace/config.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace necklace {

namespace {

using nlohmann::json;

template <typename T> T get_field(const json &obj, const char *key, T fallback) {
  if (!obj.contains(key))
    return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception &ex) {
    throw ConfigError(std::string("field '") + key + "': " + ex.what());
  }
}

void reject_unknown(const json &obj, const std::set<std::string> &known, const std::string &where) {
  for (const auto &[key, value] : obj.items())
    if (!known.contains(key))
      throw ConfigError("unknown key '" + key + "' in " + where);
}

} // namespace

ArcLengthDistribution RunConfig::distribution() const {
  try {
    return ArcLengthDistribution(atoms, density);
  } catch (const std::invalid_argument &ex) {
    throw ConfigError(std::string("distribution: ") + ex.what());
  }
}

Mode parse_mode(const std::string &name) {
  if (name == "ids")
    return Mode::ids;
  if (name == "lyapunov")
    return Mode::lyapunov;
  if (name == "jumps")
    return Mode::jumps;
  if (name == "bands")
    return Mode::bands;
  if (name == "verify")
    return Mode::verify;
  throw ConfigError("unknown mode '" + name + "'");
}

std::string mode_name(Mode mode) {
  switch (mode) {
  case Mode::ids:
    return "ids";
  case Mode::lyapunov:
    return "lyapunov";
  case Mode::jumps:
    return "jumps";
  case Mode::bands:
    return "bands";
  case Mode::verify:
    return "verify";
  }
  return "?";
}

RunConfig parse_config(const std::string &json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error &ex) {
    throw ConfigError(std::string("malformed config: ") + ex.what());
  }
  if (!doc.is_object())
    throw ConfigError("config must be a JSON object");
  reject_unknown(doc,
                 {"schema", "mode", "distribution", "grid", "chain_length", "realizations", "seed",
                  "magnetic_field", "threads", "output"},
                 "config");
  if (get_field<int>(doc, "schema", 0) != 1)
    throw ConfigError("config needs \"schema\": 1");

  RunConfig cfg;
  if (doc.contains("mode"))
    cfg.mode = parse_mode(get_field<std::string>(doc, "mode", "ids"));

  if (!doc.contains("distribution") || !doc["distribution"].is_object())
    throw ConfigError("config needs a \"distribution\" object");
  const json &dist = doc.at("distribution");
  reject_unknown(dist, {"atoms", "density"}, "distribution");
  for (const auto &a : get_field<std::vector<std::vector<double>>>(dist, "atoms", {})) {
    if (a.size() != 2)
      throw ConfigError("atoms are [length, weight] pairs");
    cfg.atoms.push_back({a[0], a[1]});
  }
  for (const auto &p : get_field<std::vector<std::vector<double>>>(dist, "density", {})) {
    if (p.size() != 3)
      throw ConfigError("density pieces are [lower, upper, height] triples");
    cfg.density.push_back({p[0], p[1], p[2]});
  }

  if (doc.contains("grid")) {
    const json &grid = doc["grid"];
    if (!grid.is_object())
      throw ConfigError("\"grid\" must be an object");
    reject_unknown(grid, {"e_min", "e_max", "points", "spacing"}, "grid");
    cfg.e_min = get_field(grid, "e_min", cfg.e_min);
    cfg.e_max = get_field(grid, "e_max", cfg.e_max);
    cfg.points = get_field(grid, "points", cfg.points);
    const auto spacing = get_field<std::string>(grid, "spacing", "linear");
    if (spacing == "linear")
      cfg.spacing = GridSpacing::linear;
    else if (spacing == "sqrt")
      cfg.spacing = GridSpacing::sqrt_energy;
    else
      throw ConfigError("grid spacing must be \"linear\" or \"sqrt\"");
  }
  cfg.chain_length = get_field(doc, "chain_length", cfg.chain_length);
  cfg.realizations = get_field(doc, "realizations", cfg.realizations);
  if (doc.contains("seed") && !doc["seed"].is_number_unsigned())
    throw ConfigError("seed must be a non-negative integer");
  cfg.seed = get_field(doc, "seed", cfg.seed);
  cfg.magnetic_field = get_field(doc, "magnetic_field", cfg.magnetic_field);
  const long threads = get_field<long>(doc, "threads", cfg.threads);
  if (threads < 0)
    throw ConfigError("threads must be non-negative");
  cfg.threads = static_cast<unsigned>(threads);
  cfg.output = get_field(doc, "output", cfg.output);
  return cfg;
}

RunConfig load_config(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

void validate(const RunConfig &config) {
  if (config.mode == Mode::verify)
    return;
  (void)config.distribution();
  if (!(config.e_min > 0.0) || !std::isfinite(config.e_max) || config.e_max < config.e_min)
    throw ConfigError("grid needs 0 < e_min <= e_max");
  if (config.points < 1)
    throw ConfigError("grid needs at least one point");
  if (config.chain_length < 1)
    throw ConfigError("chain_length must be at least 1");
  if (config.realizations < 1)
    throw ConfigError("realizations must be at least 1");
  if (!std::isfinite(config.magnetic_field))
    throw ConfigError("magnetic_field must be finite");
  if (config.output.empty())
    throw ConfigError("output path is empty");
}

std::vector<double> energy_grid(const RunConfig &config) {
  const auto n = static_cast<std::size_t>(config.points);
  std::vector<double> grid(n);
  if (n == 1) {
    grid[0] = config.e_min;
    return grid;
  }
  const bool by_root = config.spacing == GridSpacing::sqrt_energy;
  const double lo = by_root ? std::sqrt(config.e_min) : config.e_min;
  const double hi = by_root ? std::sqrt(config.e_max) : config.e_max;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    grid[i] = by_root ? x * x : x;
  }
  grid.back() = config.e_max;
  return grid;
}

} // namespace necklace

#include "necklace/distributions.hpp"

#include "necklace/numeric.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace necklace {

namespace {

constexpr double kMassTolerance = 1e-12;

std::uint32_t low_word(std::uint64_t x) { return static_cast<std::uint32_t>(x & 0xffffffffu); }
std::uint32_t high_word(std::uint64_t x) { return static_cast<std::uint32_t>(x >> 32); }

// Integral of strict_floor over [0, x] for x >= 0.
double strict_floor_integral(double x) {
  const double n = std::floor(x);
  return 0.5 * n * (n - 1.0) + n * (x - n);
}

} // namespace

ArcLengthDistribution::ArcLengthDistribution(std::vector<Atom> atoms,
                                             std::vector<DensityPiece> pieces)
    : atoms_(std::move(atoms)), pieces_(std::move(pieces)) {
  double mass = 0.0;
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    const auto &a = atoms_[i];
    if (!(a.length > 0.0) || !std::isfinite(a.length))
      throw std::invalid_argument("atom length must be positive and finite");
    if (!(a.weight >= 0.0))
      throw std::invalid_argument("atom weight must be non-negative");
    for (std::size_t j = 0; j < i; ++j)
      if (atoms_[j].length == a.length)
        throw std::invalid_argument("duplicate atom at length " + std::to_string(a.length));
    mass += a.weight;
    atomic_mass_ += a.weight;
    atom_cumulative_.push_back(atomic_mass_);
    if (a.weight > 0.0)
      support_bound_ = std::max(support_bound_, a.length);
  }

  double piece_mass = 0.0;
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const auto &p = pieces_[i];
    if (!(p.lower > 0.0) || !(p.upper > p.lower) || !std::isfinite(p.upper))
      throw std::invalid_argument("density piece needs 0 < lower < upper");
    if (!(p.height >= 0.0) || !std::isfinite(p.height))
      throw std::invalid_argument("density height must be non-negative");
    if (i > 0 && p.lower < pieces_[i - 1].upper)
      throw std::invalid_argument("density pieces must be sorted and non-overlapping");
    piece_mass += p.height * (p.upper - p.lower);
    piece_cumulative_.push_back(piece_mass);
    if (p.height > 0.0)
      support_bound_ = std::max(support_bound_, p.upper);
  }
  mass += piece_mass;

  if (std::abs(mass - 1.0) > kMassTolerance)
    throw std::invalid_argument("total mass is " + std::to_string(mass) + ", expected 1");
  if (!(support_bound_ > 0.0))
    throw std::invalid_argument("distribution has empty support");
}

ArcLengthDistribution ArcLengthDistribution::point_mass(double length) {
  return ArcLengthDistribution({{length, 1.0}}, {});
}

ArcLengthDistribution ArcLengthDistribution::uniform(double lower, double upper) {
  return ArcLengthDistribution({}, {{lower, upper, 1.0 / (upper - lower)}});
}

double ArcLengthDistribution::max_density() const {
  double h = 0.0;
  for (const auto &p : pieces_)
    h = std::max(h, p.height);
  return h;
}

double ArcLengthDistribution::mean() const {
  double m = 0.0;
  for (const auto &a : atoms_)
    m += a.weight * a.length;
  for (const auto &p : pieces_)
    m += p.height * 0.5 * (p.upper * p.upper - p.lower * p.lower);
  return m;
}

ArcDraw ArcLengthDistribution::locate(double u) const {
  if (u < atomic_mass_ || pieces_.empty()) {
    auto it = std::upper_bound(atom_cumulative_.begin(), atom_cumulative_.end(), u);
    if (it == atom_cumulative_.end())
      --it;
    const auto i = static_cast<int>(it - atom_cumulative_.begin());
    return {atoms_[i].length, i};
  }
  const double v = u - atomic_mass_;
  auto it = std::upper_bound(piece_cumulative_.begin(), piece_cumulative_.end(), v);
  if (it == piece_cumulative_.end())
    --it;
  auto j = static_cast<std::size_t>(it - piece_cumulative_.begin());
  while (pieces_[j].height <= 0.0 && j > 0)
    --j;
  const auto &p = pieces_[j];
  const double before = j == 0 ? 0.0 : piece_cumulative_[j - 1];
  double omega = p.lower + (v - before) / p.height;
  omega = std::clamp(omega, p.lower, std::nextafter(p.upper, p.lower));
  return {omega, -1};
}

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{low_word(seed), high_word(seed), low_word(stream), high_word(stream)};
  engine_.seed(seq);
}

double RandomStream::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::seed_seq seq{low_word(master), high_word(master), low_word(index), high_word(index),
                    0x9e3779b9u};
  std::array<std::uint32_t, 2> out{};
  seq.generate(out.begin(), out.end());
  return (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
}

SampleSequence sample_sequence(const ArcLengthDistribution &dist, std::size_t count,
                               std::uint64_t seed, std::uint64_t stream) {
  if (count == 0)
    throw std::invalid_argument("sample count must be positive");
  RandomStream rng(seed, stream);
  SampleSequence out{{}, seed};
  out.values.reserve(count);
  for (std::size_t i = 0; i < count; ++i)
    out.values.push_back(dist.locate(rng.uniform()).length);
  return out;
}

double expect_step_count(const ArcLengthDistribution &dist, double energy) {
  if (!(energy > 0.0))
    throw std::invalid_argument("energy must be positive");
  const double rate = std::sqrt(energy) / std::numbers::pi;
  double total = 0.0;
  for (const auto &a : dist.atoms())
    total += a.weight * strict_floor(a.length * rate);
  for (const auto &p : dist.pieces()) {
    if (p.height == 0.0)
      continue;
    const double span = strict_floor_integral(p.upper * rate) - strict_floor_integral(p.lower * rate);
    total += p.height * span / rate;
  }
  return total;
}

std::vector<Atom> atoms_with_integer_ratio(const ArcLengthDistribution &dist, double energy) {
  if (!(energy > 0.0))
    throw std::invalid_argument("energy must be positive");
  const double rate = std::sqrt(energy) / std::numbers::pi;
  std::vector<Atom> out;
  for (const auto &a : dist.atoms())
    if (auto n = nearest_integer_within(a.length * rate); n && *n >= 1)
      out.push_back(a);
  return out;
}

} // namespace necklace

#include "necklace/ids.hpp"

#include "necklace/ensemble.hpp"
#include "necklace/magnetic.hpp"
#include "necklace/scattering.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace necklace {

namespace {

constexpr double kMergeTolerance = 1e-12;
constexpr double pi = std::numbers::pi;

// Antiderivative of log|x|.
double xlogx(double x) { return x == 0.0 ? 0.0 : x * std::log(std::abs(x)) - x; }

// s log|s^2 - a| + sqrt(a) log|(s + sqrt a)/(s - sqrt a)|; the derivative is log|s^2 - a| + 2.
double tail_primitive(double s, double a) {
  const double r = std::sqrt(a);
  return s * std::log(std::abs(s * s - a)) + r * std::log(std::abs((s + r) / (s - r)));
}

} // namespace

double loop_ids(const ArcLengthDistribution &dist, double energy, double field) {
  if (field == 0.0)
    return expect_step_count(dist, energy);
  if (!(energy > 0.0))
    throw std::invalid_argument("energy must be positive");
  const double rate = std::sqrt(energy) / pi;
  double total = 0.0;
  for (const auto &a : dist.atoms())
    if (flux_is_integral(a.length, field))
      total += a.weight * strict_floor(a.length * rate);
  return total;
}

std::vector<JumpRecord> jump_set(const ArcLengthDistribution &dist, double max_energy,
                                 double field) {
  if (!(max_energy > 0.0))
    throw std::invalid_argument("maximum energy must be positive");
  std::vector<JumpRecord> raw;
  for (const auto &a : dist.atoms()) {
    if (!(a.weight > 0.0))
      continue;
    if (field != 0.0 && !flux_is_integral(a.length, field))
      continue;
    for (long long k = 1;; ++k) {
      const double e = std::pow(pi * static_cast<double>(k) / a.length, 2);
      if (e > max_energy)
        break;
      raw.push_back({e, a.weight, {{a.length, k, a.weight}}});
    }
  }
  std::sort(raw.begin(), raw.end(),
            [](const JumpRecord &x, const JumpRecord &y) { return x.energy < y.energy; });

  std::vector<JumpRecord> merged;
  for (auto &r : raw) {
    if (!merged.empty() &&
        std::abs(r.energy - merged.back().energy) <= kMergeTolerance * r.energy) {
      merged.back().magnitude += r.magnitude;
      merged.back().atoms.push_back(r.atoms.front());
    } else {
      merged.push_back(std::move(r));
    }
  }
  return merged;
}

SpectralCurve full_curve(const ArcLengthDistribution &dist, const std::vector<double> &grid,
                         const CurveOptions &options) {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0))
      throw std::invalid_argument("energy grid must be positive");
    if (i > 0 && grid[i] < grid[i - 1])
      throw std::invalid_argument("energy grid must be sorted");
  }

  SpectralCurve curve;
  curve.mean_half_length = dist.mean();
  curve.points.resize(grid.size());
  std::vector<std::exception_ptr> errors(grid.size());

  auto compute = [&](std::size_t i) {
    try {
      const double e = grid[i];
      EnsembleOptions eo;
      eo.chain_length = options.chain_length;
      eo.realizations = options.realizations;
      eo.seed = derive_seed(options.seed, i);
      eo.magnetic_field = options.magnetic_field;
      const ChainEstimates est = sample_chains(dist, e, eo);
      SpectralPoint &p = curve.points[i];
      p.energy = e;
      p.n_loop = loop_ids(dist, e, options.magnetic_field);
      p.n_tilde = est.n_tilde.mean;
      p.n_tilde_se = est.n_tilde.std_error;
      p.n_total = p.n_tilde + p.n_loop;
      p.gamma = est.gamma.mean;
      p.gamma_se = est.gamma.std_error;
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };

  unsigned workers = options.threads == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                          : options.threads;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(grid.size(), 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < grid.size(); ++i)
      compute(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < grid.size(); i = next++)
          compute(i);
      });
  }

  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (!errors[i])
      continue;
    try {
      std::rethrow_exception(errors[i]);
    } catch (const std::exception &ex) {
      throw PointFailure(std::string(ex.what()) + " (energy index " + std::to_string(i) + ")", i);
    }
  }
  return curve;
}

double arctan_expectation(const ArcLengthDistribution &dist, double energy) {
  if (!(energy > 0.0))
    throw std::invalid_argument("energy must be positive");
  const double k = std::sqrt(energy);
  double total = 0.0;
  for (const auto &a : dist.atoms())
    total += a.weight * continuous_arctan(a.length * k);

  using boost::math::quadrature::gauss;
  auto integrand = [k](double omega) { return continuous_arctan(omega * k); };
  for (const auto &p : dist.pieces()) {
    if (p.height == 0.0)
      continue;
    // breakpoints where tan(omega k) passes through infinity
    double lo = p.lower;
    long long j = static_cast<long long>(std::floor(p.lower * k / pi - 0.5)) + 1;
    while (true) {
      const double next = (static_cast<double>(j) + 0.5) * pi / k;
      const double hi = std::min(next, p.upper);
      if (hi > lo)
        total += p.height * gauss<double, 20>::integrate(integrand, lo, hi);
      if (next >= p.upper)
        break;
      lo = next;
      ++j;
    }
  }
  return total;
}

EstimateCheck estimate_check(const ArcLengthDistribution &dist, const SpectralCurve &curve) {
  EstimateCheck out;
  out.max_excess = -std::numeric_limits<double>::infinity();
  for (const auto &p : curve.points) {
    const double free_ids = std::sqrt(p.energy) / pi;
    const double dev = std::abs(p.n_tilde - free_ids - arctan_expectation(dist, p.energy) / pi);
    if (dev > out.max_deviation) {
      out.max_deviation = dev;
      out.std_error_at_max = p.n_tilde_se;
      out.energy_at_max = p.energy;
    }
    out.max_excess = std::max(out.max_excess, dev - 3.0 * p.n_tilde_se);
  }
  return out;
}

double interpolate_gamma(const SpectralCurve &curve, double energy) {
  const auto &pts = curve.points;
  if (pts.empty() || energy < pts.front().energy || energy > pts.back().energy)
    throw std::invalid_argument("energy outside the curve's grid");
  auto it = std::lower_bound(pts.begin(), pts.end(), energy,
                             [](const SpectralPoint &p, double e) { return p.energy < e; });
  if (it->energy == energy || it == pts.begin())
    return it->gamma;
  const auto &b = *it;
  const auto &a = *(it - 1);
  const double t = (energy - a.energy) / (b.energy - a.energy);
  return a.gamma + t * (b.gamma - a.gamma);
}

std::vector<double> thouless_residual(const SpectralCurve &curve,
                                      const std::vector<std::pair<double, double>> &pairs) {
  const auto &pts = curve.points;
  if (pts.size() < 2)
    throw std::invalid_argument("insufficient grid coverage: need at least two points");
  const double cutoff = pts.back().energy;
  for (const auto &[e1, e2] : pairs) {
    const double hi = std::max(e1, e2);
    const double lo = std::min(e1, e2);
    if (lo < pts.front().energy || 4.0 * hi > cutoff)
      throw std::invalid_argument("insufficient grid coverage for the pair energies");
  }

  // Average offset of N~ against its asymptotic growth over the upper window.
  const double growth = (1.0 + curve.mean_half_length) / pi;
  double offset = 0.0;
  int count = 0;
  for (const auto &p : pts)
    if (p.energy >= 0.25 * cutoff) {
      offset += p.n_tilde - growth * std::sqrt(p.energy);
      ++count;
    }
  offset /= count;

  std::vector<double> out;
  out.reserve(pairs.size());
  for (const auto &[e1, e2] : pairs) {
    if (e1 == e2) {
      out.push_back(0.0);
      continue;
    }
    auto cell_integral = [&](double a, double b) {
      return (xlogx(b - e1) - xlogx(a - e1)) - (xlogx(b - e2) - xlogx(a - e2));
    };
    double integral = 0.0;
    double prev_e = 0.0;
    double prev_n = 0.0;
    for (const auto &p : pts) {
      const double dn = p.n_tilde - prev_n;
      if (p.energy > prev_e)
        integral += dn * cell_integral(prev_e, p.energy) / (p.energy - prev_e);
      prev_e = p.energy;
      prev_n = p.n_tilde;
    }
    const double s = std::sqrt(cutoff);
    integral += -growth * (tail_primitive(s, e1) - tail_primitive(s, e2));
    const double model_at_cut = growth * s + offset;
    const double f_cut = std::log(std::abs((cutoff - e1) / (cutoff - e2)));
    integral += -f_cut * (pts.back().n_tilde - model_at_cut);

    out.push_back(interpolate_gamma(curve, e1) - interpolate_gamma(curve, e2) - integral);
  }
  return out;
}

} // namespace necklace

#include "necklace/ensemble.hpp"

#include "necklace/magnetic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace necklace {

namespace {

constexpr double kHalfPi = 0.5 * std::numbers::pi;

} // namespace

ChainAccumulator::ChainAccumulator(Projection projection) : projection_(projection) {
  direction_ = projection == Projection::plus ? Vector2c<double>(1.0, 0.0)
                                              : Vector2c<double>(0.0, 1.0);
}

void ChainAccumulator::absorb(const TransferMatrix<double> &lam) {
  const int i = projection_ == Projection::plus ? 0 : 1;
  const Vector2c<double> v = lam.entries * direction_;
  const double norm = v.norm();
  if (!std::isfinite(norm) || !(norm > 0.0))
    throw NumericalOverflow("numerical overflow at step " + std::to_string(steps_ + 1), steps_ + 1);

  const double own = i == 0 ? lam.diagonal_phase : -lam.diagonal_phase;
  double delta = std::arg(v(i) / (direction_(i) * lam.entries(i, i)));
  if (std::abs(delta) >= kHalfPi) {
    ++fallbacks_;
    using LC = std::complex<long double>;
    const LC vi = LC(lam.entries(i, 0)) * LC(direction_(0)) + LC(lam.entries(i, 1)) * LC(direction_(1));
    delta = static_cast<double>(std::arg(vi / (LC(direction_(i)) * LC(lam.entries(i, i)))));
    if (std::abs(delta) >= kHalfPi)
      ++violations_;
  }
  phase_ += own + delta;
  log_norm_ += std::log(norm);
  direction_ = v / norm;
  ++steps_;
}

double ChainAccumulator::log_abs_projection() const {
  const int i = projection_ == Projection::plus ? 0 : 1;
  return log_norm_ + std::log(std::abs(direction_(i)));
}

ChainAccumulator accumulate(ChainAccumulator acc, const TransferMatrix<double> &lam) {
  acc.absorb(lam);
  return acc;
}

LoopTransferSampler::LoopTransferSampler(const ArcLengthDistribution &dist, double energy,
                                         double magnetic_field)
    : dist_(&dist), energy_(energy), wavenumber_(std::sqrt(energy)), field_(magnetic_field) {
  if (!(energy > 0.0))
    throw std::invalid_argument("energy must be positive");
  atom_cache_.reserve(dist.atoms().size());
  for (const auto &a : dist.atoms())
    atom_cache_.push_back(build(a.length));
}

TransferMatrix<double> LoopTransferSampler::build(double omega0) const {
  if (field_ == 0.0)
    return transfer_matrix_at_wavenumber(loop_amplitudes_at_wavenumber(wavenumber_, omega0),
                                         wavenumber_);
  try {
    return transfer_matrix(loop_amplitudes_magnetic_offset(energy_, omega0, field_), energy_);
  } catch (const OpaqueLoop &) {
    const double shifted = energy_ * (1.0 + kResonancePerturbation);
    return transfer_matrix(loop_amplitudes_magnetic_offset(shifted, omega0, field_), shifted);
  }
}

TransferMatrix<double> LoopTransferSampler::draw(RandomStream &rng) const {
  const ArcDraw d = dist_->locate(rng.uniform());
  if (d.atom >= 0)
    return atom_cache_[static_cast<std::size_t>(d.atom)];
  return build(d.length);
}

void extend_chain(ChainAccumulator &acc, const LoopTransferSampler &sampler, RandomStream &rng,
                  long steps) {
  for (long s = 0; s < steps; ++s)
    acc.absorb(sampler.draw(rng));
}

EnsembleEstimate summarize(const std::vector<double> &values, long chain_length) {
  EnsembleEstimate out;
  out.chain_length = chain_length;
  out.realizations = static_cast<int>(values.size());
  if (values.empty())
    return out;
  double sum = 0.0;
  for (double v : values)
    sum += v;
  out.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values)
      ss += (v - out.mean) * (v - out.mean);
    const double n = static_cast<double>(values.size());
    out.std_error = std::sqrt(ss / (n - 1.0) / n);
  }
  return out;
}

ChainEstimates sample_chains(const ArcLengthDistribution &dist, double energy,
                             const EnsembleOptions &options, Projection projection) {
  if (options.chain_length < 1 || options.realizations < 1)
    throw std::invalid_argument("chain length and realizations must be positive");
  const LoopTransferSampler sampler(dist, energy, options.magnetic_field);
  const double m = static_cast<double>(options.chain_length);
  const double sign = projection == Projection::plus ? -1.0 : 1.0;

  std::vector<double> gammas, densities;
  ChainEstimates out;
  for (int r = 0; r < options.realizations; ++r) {
    RandomStream rng(options.seed, static_cast<std::uint64_t>(r));
    ChainAccumulator acc(projection);
    extend_chain(acc, sampler, rng, options.chain_length);
    gammas.push_back(acc.log_abs_projection() / m);
    densities.push_back(sign * acc.phase() / (std::numbers::pi * m));
    out.branch_violations += acc.branch_violations();
  }
  out.gamma = summarize(gammas, options.chain_length);
  out.n_tilde = summarize(densities, options.chain_length);
  return out;
}

EnsembleEstimate lyapunov(const ArcLengthDistribution &dist, double energy,
                          const EnsembleOptions &options) {
  return sample_chains(dist, energy, options).gamma;
}

EnsembleEstimate phase_density(const ArcLengthDistribution &dist, double energy,
                               const EnsembleOptions &options, Projection projection) {
  return sample_chains(dist, energy, options, projection).n_tilde;
}

} // namespace necklace

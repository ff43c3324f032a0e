#ifndef NECKLACE_ENSEMBLE_HPP
#define NECKLACE_ENSEMBLE_HPP

#include "necklace/distributions.hpp"
#include "necklace/scattering.hpp"

#include <cstdint>
#include <vector>

namespace necklace {

/// Which diagonal entry of the chain product is tracked: <e+, P e+> or <e-, P e->.
enum class Projection { plus, minus };

/// Running state of the ordered product P = Lambda_n ... Lambda_1 applied to e+ or e-.
///
/// The product vector is kept as a unit `direction()` times exp(log_norm()).
/// The tracked component's argument is unwrapped step by step: each loop
/// contributes the continuous phase of its own diagonal entry plus the
/// principal argument of the remaining correction factor, which lies within
/// pi/2 because |R| < 1 for the new loop and |L| < 1 for the partial product.
class ChainAccumulator {
public:
  explicit ChainAccumulator(Projection projection = Projection::plus);

  /// Multiplies `lam` onto the product from the left.
  /// Throws NumericalOverflow if the product stops being finite.
  void absorb(const TransferMatrix<double> &lam);

  Projection projection() const { return projection_; }
  const Vector2c<double> &direction() const { return direction_; }
  double log_norm() const { return log_norm_; }
  double phase() const { return phase_; }
  long steps() const { return steps_; }

  /// log |<e, P e>| for the tracked basis vector e.
  double log_abs_projection() const;

  /// Steps whose correction factor left the (-pi/2, pi/2) window in double
  /// precision and had to be recomputed in extended precision.
  long branch_fallbacks() const { return fallbacks_; }
  /// Steps that stayed outside the window after the recomputation.
  long branch_violations() const { return violations_; }

private:
  Projection projection_;
  Vector2c<double> direction_;
  double log_norm_ = 0.0;
  double phase_ = 0.0;
  long steps_ = 0;
  long fallbacks_ = 0;
  long violations_ = 0;
};

ChainAccumulator accumulate(ChainAccumulator acc, const TransferMatrix<double> &lam);

/// Draws loop transfer matrices at a fixed energy. Matrices for the atoms
/// of the law are built once; continuous draws are built on demand.
class LoopTransferSampler {
public:
  LoopTransferSampler(const ArcLengthDistribution &dist, double energy, double magnetic_field = 0.0);

  TransferMatrix<double> draw(RandomStream &rng) const;
  TransferMatrix<double> build(double omega0) const;

  double energy() const { return energy_; }

private:
  const ArcLengthDistribution *dist_;
  double energy_;
  double wavenumber_;
  double field_;
  std::vector<TransferMatrix<double>> atom_cache_;
};

/// Runs `steps` more loops of a chain drawn from `rng` into `acc`.
void extend_chain(ChainAccumulator &acc, const LoopTransferSampler &sampler, RandomStream &rng,
                  long steps);

struct EnsembleEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  long chain_length = 0;
  int realizations = 0;
};

struct EnsembleOptions {
  long chain_length = 100000;
  int realizations = 8;
  std::uint64_t seed = 0;
  double magnetic_field = 0.0;
};

/// Lyapunov exponent and phase-route density from the same chains.
struct ChainEstimates {
  EnsembleEstimate gamma;
  EnsembleEstimate n_tilde;
  long branch_violations = 0;
};

/// Realization r uses RandomStream(options.seed, r).
ChainEstimates sample_chains(const ArcLengthDistribution &dist, double energy,
                             const EnsembleOptions &options,
                             Projection projection = Projection::plus);

EnsembleEstimate lyapunov(const ArcLengthDistribution &dist, double energy,
                          const EnsembleOptions &options);

/// Estimate of N~(E) = -+(1/pi) phase / M for the e+ (upper sign) or e- projection.
EnsembleEstimate phase_density(const ArcLengthDistribution &dist, double energy,
                               const EnsembleOptions &options,
                               Projection projection = Projection::plus);

/// Mean and standard error of the mean.
EnsembleEstimate summarize(const std::vector<double> &values, long chain_length);

} // namespace necklace

#endif // NECKLACE_ENSEMBLE_HPP

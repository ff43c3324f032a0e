#ifndef NECKLACE_IDS_HPP
#define NECKLACE_IDS_HPP

#include "necklace/distributions.hpp"
#include "necklace/numeric.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace necklace {

/// Integrated density of loop states. With a field, only atoms with an
/// integral flux ratio keep their loop eigenvalues; the continuous part of
/// the law contributes nothing.
double loop_ids(const ArcLengthDistribution &dist, double energy, double field = 0.0);

struct JumpContribution {
  double length;   ///< s_i
  long long order; ///< k in E = (pi k / s_i)^2
  double weight;   ///< p_i
};

struct JumpRecord {
  double energy;
  double magnitude;
  std::vector<JumpContribution> atoms;
};

/// Discontinuities of the IDS up to `max_energy`, sorted by energy, with
/// coincident energies from different atoms merged.
std::vector<JumpRecord> jump_set(const ArcLengthDistribution &dist, double max_energy,
                                 double field = 0.0);

struct SpectralPoint {
  double energy;
  double n_loop;
  double n_tilde;
  double n_tilde_se;
  double n_total;
  double gamma;
  double gamma_se;
};

struct SpectralCurve {
  std::vector<SpectralPoint> points;
  double mean_half_length = 0.0; ///< mean of the arc-length law
};

struct CurveOptions {
  long chain_length = 100000;
  int realizations = 8;
  std::uint64_t seed = 0;
  double magnetic_field = 0.0;
  unsigned threads = 1; ///< 0 picks the hardware concurrency
};

/// A grid point whose ensemble run aborted.
class PointFailure : public NumericalError {
public:
  PointFailure(const std::string &what, std::size_t index) : NumericalError(what), index_(index) {}
  std::size_t index() const { return index_; }

private:
  std::size_t index_;
};

/// N_loop analytically, N~ and gamma from chains seeded by
/// derive_seed(options.seed, grid index). The result does not depend on the
/// number of threads.
SpectralCurve full_curve(const ArcLengthDistribution &dist, const std::vector<double> &grid,
                         const CurveOptions &options);

/// Integral of Arctan((5/4) tan(omega sqrt(E))) against the law.
double arctan_expectation(const ArcLengthDistribution &dist, double energy);

struct EstimateCheck {
  double max_deviation = 0.0;    ///< max |N~ - N_0 - (1/pi) int Arctan|
  double std_error_at_max = 0.0;
  double energy_at_max = 0.0;
  double max_excess = 0.0;       ///< max of (deviation - 3 std_error)
};

EstimateCheck estimate_check(const ArcLengthDistribution &dist, const SpectralCurve &curve);

/// gamma(E) by linear interpolation on the curve.
double interpolate_gamma(const SpectralCurve &curve, double energy);

/// For each (E1, E2): [gamma(E1) - gamma(E2)] - int log|(l - E1)/(l - E2)| dN~(l).
///
/// The integral is a Stieltjes sum over the curve's N~ increments (cell
/// averages of the logarithm, so a grid point on E1 or E2 is harmless) plus
/// the tail beyond the last grid energy E_cut, where N~ is replaced by
/// (1 + mean half length) sqrt(l) / pi shifted to match the curve's average
/// offset. Throws std::invalid_argument unless every pair lies inside the
/// grid and below E_cut / 4.
std::vector<double> thouless_residual(const SpectralCurve &curve,
                                      const std::vector<std::pair<double, double>> &pairs);

} // namespace necklace

#endif // NECKLACE_IDS_HPP

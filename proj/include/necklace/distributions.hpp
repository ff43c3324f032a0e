#ifndef NECKLACE_DISTRIBUTIONS_HPP
#define NECKLACE_DISTRIBUTIONS_HPP

#include <cstdint>
#include <random>
#include <vector>

namespace necklace {

struct Atom {
  double length; ///< s_i > 0
  double weight; ///< p_i >= 0
};

/// Constant density `height` on [lower, upper).
struct DensityPiece {
  double lower;
  double upper;
  double height;
};

/// Result of mapping one uniform variate through the law.
struct ArcDraw {
  double length;
  int atom; ///< index into atoms(), or -1 for the continuous part
};

/// Law of the loop half-arc-lengths: finitely many atoms plus a
/// piecewise-constant density, supported in (0, K].
///
/// Immutable after construction. The constructor rejects laws whose total
/// mass differs from one by more than 1e-12, non-positive lengths,
/// duplicated atoms, and overlapping or unsorted density pieces.
class ArcLengthDistribution {
public:
  ArcLengthDistribution(std::vector<Atom> atoms, std::vector<DensityPiece> pieces);

  static ArcLengthDistribution point_mass(double length);
  static ArcLengthDistribution uniform(double lower, double upper);

  const std::vector<Atom> &atoms() const { return atoms_; }
  const std::vector<DensityPiece> &pieces() const { return pieces_; }

  /// Supremum of the support.
  double support_bound() const { return support_bound_; }
  double atomic_mass() const { return atomic_mass_; }
  double max_density() const;
  double mean() const;

  /// Inverse-CDF style mapping of u in [0, 1): the first atomic_mass() of
  /// the unit interval selects an atom, the rest inverts the density.
  ArcDraw locate(double u) const;

private:
  std::vector<Atom> atoms_;
  std::vector<DensityPiece> pieces_;
  std::vector<double> atom_cumulative_;
  std::vector<double> piece_cumulative_;
  double atomic_mass_ = 0.0;
  double support_bound_ = 0.0;
};

/// Seeded stream of uniform variates. Identical (seed, stream) pairs give
/// identical sequences on every platform.
class RandomStream {
public:
  RandomStream(std::uint64_t seed, std::uint64_t stream);
  double uniform(); ///< in [0, 1), 53 random bits

private:
  std::mt19937_64 engine_;
};

/// Seed for the index-th independent consumer of a master seed.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

struct SampleSequence {
  std::vector<double> values;
  std::uint64_t seed;
};

SampleSequence sample_sequence(const ArcLengthDistribution &dist, std::size_t count,
                               std::uint64_t seed, std::uint64_t stream = 0);

/// Exact kappa-expectation of strict_floor(omega * sqrt(E) / pi).
double expect_step_count(const ArcLengthDistribution &dist, double energy);

/// Atoms whose s_i * sqrt(E) / pi is an integer.
std::vector<Atom> atoms_with_integer_ratio(const ArcLengthDistribution &dist, double energy);

} // namespace necklace

#endif // NECKLACE_DISTRIBUTIONS_HPP

#ifndef NECKLACE_NUMERIC_HPP
#define NECKLACE_NUMERIC_HPP

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>

namespace necklace {

class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Transmission amplitude too small to form a transfer matrix.
class OpaqueLoop : public NumericalError {
public:
  using NumericalError::NumericalError;
};

/// The wave-matching system is singular (a loop eigenvalue sits on the energy).
class ResonantEnergy : public NumericalError {
public:
  using NumericalError::NumericalError;
};

class NumericalOverflow : public NumericalError {
public:
  NumericalOverflow(const std::string &what, long step)
      : NumericalError(what), step_(step) {}
  long step() const { return step_; }

private:
  long step_;
};

/// Relative tolerance for deciding that s*sqrt(E)/pi (or B*s^2/pi^2) is an integer.
inline constexpr double kIntegerRatioTolerance = 1e-9;

/// Relative energy shift applied when a caller has to step off a resonance.
inline constexpr double kResonancePerturbation = 1e-9;

template <typename Scalar>
std::optional<long long> nearest_integer_within(Scalar t, Scalar rel_tol = Scalar(kIntegerRatioTolerance)) {
  const Scalar n = std::round(t);
  const Scalar scale = std::max(Scalar(1), std::abs(t));
  if (std::abs(t - n) <= rel_tol * scale)
    return static_cast<long long>(n);
  return std::nullopt;
}

/// Largest integer strictly smaller than t, so strict_floor(2) == 1.
/// Values within the integer-ratio tolerance of an integer n >= 1 count as n.
template <typename Scalar> Scalar strict_floor(Scalar t) {
  if (auto n = nearest_integer_within(t); n && *n >= 1)
    return Scalar(*n - 1);
  return std::floor(t);
}

} // namespace necklace

#endif // NECKLACE_NUMERIC_HPP

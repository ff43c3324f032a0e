#include "necklace/magnetic.hpp"

#include <Eigen/LU>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace necklace {

namespace {

using C = std::complex<double>;
using Matrix6c = Eigen::Matrix<C, 6, 6>;
using Vector6c = Eigen::Matrix<C, 6, 1>;

constexpr double kSingularRcond = 1e-12;

// Continuous branch of arg(1/T) for the gauge-fixed magnetic loop, with
// c = |cos Phi| < 1. In closed form
//   1/T = -(z - z1)(z - z2) / (16 i c sin(theta) e^{2 i theta}),
// where z = e^{2 i theta} and z1 z2 = 9 are the roots of
// z^2 + (6 - 16 c^2) z + 9, both outside the unit circle. The sin(theta)
// factor is continued through its zeros from the upper half plane.
double magnetic_phase_branch(double theta, double c) {
  constexpr double pi = std::numbers::pi;
  const C z = std::polar(1.0, 2 * theta);
  const double q = 16 * c * c - 6;
  const C disc = std::sqrt(C(q * q - 36, 0));
  const C z1 = 0.5 * (q + disc);
  const C z2 = 0.5 * (q - disc);
  return 0.5 * pi - 2 * theta + pi * strict_floor(theta / pi) + std::arg(1.0 - z / z1) +
         std::arg(1.0 - z / z2);
}

} // namespace

double loop_flux(double omega0, double field) { return omega0 * omega0 * field / std::numbers::pi; }

bool flux_is_integral(double omega0, double field) {
  const double ratio = field * omega0 * omega0 / (std::numbers::pi * std::numbers::pi);
  const auto n = nearest_integer_within(ratio);
  return n && *n >= 0;
}

ScatteringTriple<double> loop_amplitudes_magnetic(double energy, double omega0, double field) {
  if (!(energy > 0.0))
    throw std::invalid_argument("energy must be positive");
  const double k = std::sqrt(energy);
  const double theta = k * omega0;
  const double flux = loop_flux(omega0, field);
  const C a = std::polar(1.0, flux);
  const C ac = std::conj(a);
  const C ep = std::polar(1.0, theta);
  const C em = std::conj(ep);

  // Unknowns: outgoing amplitude on the left lead, outgoing amplitude on the
  // right lead, then (e^{ikx}, e^{-ikx}) coefficients on the upper and lower
  // arc. Derivative rows are divided by ik.
  Matrix6c m = Matrix6c::Zero();
  m(0, 0) = 1.0;
  m(0, 2) = -1.0;
  m(0, 3) = -1.0;
  m(1, 2) = 1.0;
  m(1, 3) = 1.0;
  m(1, 4) = -1.0;
  m(1, 5) = -1.0;
  m(2, 0) = 1.0;
  m(2, 2) = 1.0;
  m(2, 3) = -1.0;
  m(2, 4) = 1.0;
  m(2, 5) = -1.0;
  m(3, 1) = 1.0;
  m(3, 2) = -a * ep;
  m(3, 3) = -a * em;
  m(4, 2) = a * ep;
  m(4, 3) = a * em;
  m(4, 4) = -ac * ep;
  m(4, 5) = -ac * em;
  m(5, 1) = 1.0;
  m(5, 2) = -a * ep;
  m(5, 3) = a * em;
  m(5, 4) = -ac * ep;
  m(5, 5) = ac * em;

  const Eigen::FullPivLU<Matrix6c> lu(m);
  if (lu.rcond() < kSingularRcond)
    throw ResonantEnergy("resonant energy: wave-matching system is singular");

  Vector6c from_left = Vector6c::Zero();
  from_left(0) = -1.0;
  from_left(2) = 1.0;
  Vector6c from_right = Vector6c::Zero();
  from_right(3) = -1.0;
  from_right(5) = 1.0;
  const Vector6c xl = lu.solve(from_left);
  const Vector6c xr = lu.solve(from_right);

  const double c = std::cos(flux);
  const double gauge = c < 0.0 ? -1.0 : 1.0;
  ScatteringTriple<double> out;
  out.T = gauge * xl(1);
  out.R = xl(0);
  out.L = xr(1);

  double branch;
  if (std::abs(1.0 - c * c) < 1e-14)
    branch = loop_amplitudes_at_wavenumber(k, omega0).inverse_transmission_phase;
  else
    branch = magnetic_phase_branch(theta, std::abs(c));
  if (std::abs(out.T) > 0.0)
    branch += std::arg(std::polar(1.0, -branch) / out.T);
  out.inverse_transmission_phase = branch;
  return out;
}

ScatteringTriple<double> loop_amplitudes_magnetic_offset(double energy, double omega0,
                                                         double field) {
  try {
    return loop_amplitudes_magnetic(energy, omega0, field);
  } catch (const ResonantEnergy &) {
    return loop_amplitudes_magnetic(energy * (1.0 + kResonancePerturbation), omega0, field);
  }
}

} // namespace necklace

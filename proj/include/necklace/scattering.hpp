#ifndef NECKLACE_SCATTERING_HPP
#define NECKLACE_SCATTERING_HPP

#include "necklace/numeric.hpp"

#include <Eigen/Core>
#include <Eigen/LU>

#include <cmath>
#include <complex>
#include <numbers>

namespace necklace {

template <typename Scalar> using Complex = std::complex<Scalar>;
template <typename Scalar> using Matrix2c = Eigen::Matrix<std::complex<Scalar>, 2, 2>;
template <typename Scalar> using Vector2c = Eigen::Matrix<std::complex<Scalar>, 2, 1>;

/// Transmission and reflection amplitudes of one loop between two half-lines.
///
/// `R` is the reflection amplitude for a wave incident from the left,
/// `L` for a wave incident from the right. `inverse_transmission_phase` is a
/// branch of arg(1/T) that is continuous in the energy and tends to zero as
/// E -> 0 for the field-free loop; the chain phase is built from it.
template <typename Scalar> struct ScatteringTriple {
  Complex<Scalar> T;
  Complex<Scalar> R;
  Complex<Scalar> L;
  Scalar inverse_transmission_phase;
};

/// Unit-determinant 2x2 transfer matrix of one loop plus one unit interval.
/// `diagonal_phase` is the continuous branch of arg(entries(0, 0)); the
/// (1, 1) entry is its complex conjugate.
template <typename Scalar> struct TransferMatrix {
  Matrix2c<Scalar> entries;
  Scalar diagonal_phase;

  static TransferMatrix identity() { return {Matrix2c<Scalar>::Identity(), Scalar(0)}; }
};

/// Smallest |T| for which a transfer matrix is formed.
inline constexpr double kOpaqueThreshold = 1e-14;

/// Closed-form amplitudes at wavenumber k = sqrt(E) for half-arc-length omega0.
template <typename Scalar>
ScatteringTriple<Scalar> loop_amplitudes_at_wavenumber(Scalar k, Scalar omega0) {
  using C = Complex<Scalar>;
  const Scalar theta = omega0 * k;
  const C e1 = std::polar(Scalar(1), theta);
  const C e2 = e1 * e1;
  const C denom = e2 - Scalar(9);
  // e^{2i theta} - 1 = 2i sin(theta) e^{i theta}, free of cancellation near 0
  const C e2_minus_one = C(0, 2 * std::sin(theta)) * e1;
  const C T = Scalar(-8) * e1 / denom;
  const C R = Scalar(-3) * e2_minus_one / denom;
  // arg(1/T) = -theta + arg(9 - e^{2i theta}); |e^{2i theta}| < 9 keeps the
  // principal branch of the second term continuous
  const Scalar phase = -theta + std::arg(Scalar(9) - e2);
  return {T, R, R, phase};
}

template <typename Scalar>
ScatteringTriple<Scalar> loop_amplitudes(Scalar energy, Scalar omega0) {
  return loop_amplitudes_at_wavenumber(std::sqrt(energy), omega0);
}

template <typename Scalar>
TransferMatrix<Scalar> transfer_matrix_at_wavenumber(const ScatteringTriple<Scalar> &s, Scalar k) {
  using std::abs;
  if (!(abs(s.T) >= Scalar(kOpaqueThreshold)))
    throw OpaqueLoop("opaque loop: |T| below threshold");
  const Complex<Scalar> free_left = std::polar(Scalar(1), -k);
  const Complex<Scalar> inv_t = Scalar(1) / s.T;
  TransferMatrix<Scalar> out;
  out.entries(0, 0) = free_left * inv_t;
  out.entries(0, 1) = -s.R * inv_t;
  out.entries(1, 0) = s.L * inv_t;
  out.entries(1, 1) = std::conj(out.entries(0, 0));
  out.diagonal_phase = -k + s.inverse_transmission_phase;
  return out;
}

/// Loop transfer matrix including the phases e^{-+i sqrt(E)} of the adjoining
/// unit interval. Throws OpaqueLoop when |T| < kOpaqueThreshold.
template <typename Scalar>
TransferMatrix<Scalar> transfer_matrix(const ScatteringTriple<Scalar> &s, Scalar energy) {
  return transfer_matrix_at_wavenumber(s, std::sqrt(energy));
}

/// Transfer matrix of the bare loop (no interval phases).
template <typename Scalar> Matrix2c<Scalar> bare_transfer_matrix(const ScatteringTriple<Scalar> &s) {
  if (!(std::abs(s.T) >= Scalar(kOpaqueThreshold)))
    throw OpaqueLoop("opaque loop: |T| below threshold");
  const Complex<Scalar> inv_t = Scalar(1) / s.T;
  Matrix2c<Scalar> m;
  m << inv_t, -s.R * inv_t, s.L * inv_t, Scalar(1) / std::conj(s.T);
  return m;
}

/// Amplitudes of a loop of length s1 relative to a background loop of length
/// s0, read off from the bare transfer-matrix quotient Lambda(s1) Lambda(s0)^-1.
/// The returned phase is the principal arg(1/T).
template <typename Scalar>
ScatteringTriple<Scalar> relative_amplitudes(Scalar energy, Scalar s1, Scalar s0) {
  const Scalar k = std::sqrt(energy);
  const Matrix2c<Scalar> m1 = bare_transfer_matrix(loop_amplitudes_at_wavenumber(k, s1));
  const Matrix2c<Scalar> m0 = bare_transfer_matrix(loop_amplitudes_at_wavenumber(k, s0));
  // det m0 == 1, so the adjugate is the inverse
  Matrix2c<Scalar> inv0;
  inv0 << m0(1, 1), -m0(0, 1), -m0(1, 0), m0(0, 0);
  const Matrix2c<Scalar> q = m1 * inv0;
  const Complex<Scalar> T = Scalar(1) / q(0, 0);
  return {T, -q(0, 1) * T, q(1, 0) * T, std::arg(q(0, 0))};
}

/// Arctan((5/4) tan theta) on the branch continuous in theta with value 0 at 0.
template <typename Scalar> Scalar continuous_arctan(Scalar theta) {
  const Scalar pi = std::numbers::pi_v<Scalar>;
  const Scalar n = std::round(theta / pi);
  const Scalar r = theta - n * pi; // in [-pi/2, pi/2], cos(r) >= 0
  return std::atan2(Scalar(1.25) * std::sin(r), std::cos(r)) + n * pi;
}

/// Spectral shift of a single loop against the free line.
template <typename Scalar> Scalar spectral_shift(Scalar energy, Scalar omega0) {
  const Scalar pi = std::numbers::pi_v<Scalar>;
  const Scalar theta = std::sqrt(energy) * omega0;
  return -continuous_arctan(theta) / pi - strict_floor(theta / pi);
}

/// Hill discriminant of the periodic necklace; |H| <= 2 marks the bands.
template <typename Scalar> Scalar hill_discriminant(Scalar energy, Scalar omega0) {
  const Scalar k = std::sqrt(energy);
  return Scalar(2.25) * std::cos(k * (omega0 + 1)) - Scalar(0.25) * std::cos(k * (omega0 - 1));
}

} // namespace necklace

#endif // NECKLACE_SCATTERING_HPP

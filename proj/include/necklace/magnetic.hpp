#ifndef NECKLACE_MAGNETIC_HPP
#define NECKLACE_MAGNETIC_HPP

#include "necklace/scattering.hpp"

namespace necklace {

/// Magnetic flux omega^2 B / pi through a loop of half-arc-length omega.
double loop_flux(double omega0, double field);

/// True when B omega^2 / pi^2 is a non-negative integer (within tolerance).
bool flux_is_integral(double omega0, double field);

/// Loop amplitudes in a perpendicular magnetic field, from a direct solve of
/// the six-coefficient wave-matching problem (two lead amplitudes, two plane
/// waves on each arc). The left vertex carries the standard conditions; at
/// the right vertex the arcs couple through the phases e^{+-i Phi}:
///   psi_0 = e^{i Phi} psi_+ = e^{-i Phi} psi_-,
///   psi_0' + e^{i Phi} psi_+' + e^{-i Phi} psi_-' = 0   (outward derivatives).
/// T is reported in the gauge where cos(Phi) >= 0 on the right lead, so an
/// integral flux ratio reproduces the field-free triple.
///
/// Throws ResonantEnergy when the system is singular (an embedded loop
/// eigenvalue); callers shift E by kResonancePerturbation and retry.
ScatteringTriple<double> loop_amplitudes_magnetic(double energy, double omega0, double field);

/// Same, but retries once at E (1 + kResonancePerturbation) on a resonance.
ScatteringTriple<double> loop_amplitudes_magnetic_offset(double energy, double omega0, double field);

} // namespace necklace

#endif // NECKLACE_MAGNETIC_HPP

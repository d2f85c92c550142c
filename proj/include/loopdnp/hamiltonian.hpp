#pragma once

#include <utility>

#include "loopdnp/spin_system.hpp"
#include "loopdnp/types.hpp"

namespace loopdnp {

// H = offset_e*Sz + larmor_n*Iz + A*Sz*Iz + B*Sz*Ix
//     + amplitude*(cos(phase)*Sx + sin(phase)*Sy).
// Throws std::invalid_argument on non-finite input.
Matrix4c build_hamiltonian(const SpinSystem& system, const Pulse& pulse);

// Point-dipole coupling T = (mu0/4pi) * gamma_e * gamma_H * hbar / r^3,
// r in meters, result in rad/s. Throws std::domain_error for r <= 0.
double dipolar_constant(double r);

// Secular and pseudo-secular couplings at orientation beta:
// A = T*(3*cos^2(beta) - 1), B = 3*T*sin(beta)*cos(beta).
std::pair<double, double> crystallite_couplings(double T, double beta);

}  // namespace loopdnp

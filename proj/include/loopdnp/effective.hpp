#pragma once

#include <array>
#include <utility>

#include "loopdnp/propagation.hpp"
#include "loopdnp/spin_ops.hpp"
#include "loopdnp/spin_system.hpp"
#include "loopdnp/types.hpp"

namespace loopdnp {

struct EffectiveHamiltonian {
  Matrix4c h_eff;                               // rad/s, Hermitian
  std::array<double, n_product_ops> coeffs{};   // product-operator amplitudes
  double identity_coeff = 0.0;                  // trace part, 0 away from the cut
  bool branch_warning = false;                  // eigenphase within 1e-6 of +-pi
};

// H_eff = (i/tau_m) log U, principal branch (eigenphases in (-pi, pi]).
EffectiveHamiltonian effective_hamiltonian(const Unitary4& u, double tau_m);

struct EffectiveField {
  double magnitude = 0.0;   // rad/s, signed by the z-component of the axis
  Vector3d axis{0, 0, 1};   // unit rotation axis
  bool ambiguous = false;   // rotation angle within 1e-6 of pi
};

// Rotation per period of the electron-only subsystem (A = B = larmor_n = 0),
// with all pulse amplitudes multiplied by scale.
EffectiveField electron_effective_field(const Waveform& waveform, double offset,
                                        double scale);

struct ResonanceReport {
  int k = 0;                        // harmonic index k_I
  double omega_eff_required = 0.0;  // -(omega_0I + k*omega_m)
  double mismatch = 0.0;            // omega_0I + k*omega_m + omega_eff
};

// Integer k minimizing |omega_0I + k*omega_m + omega_eff|. With
// omega_eff = 0 this yields the smallest-|omega_eff| solution of the
// resonance condition. Ties break toward smaller k.
ResonanceReport resonance_match(double omega_0I, double omega_m, double omega_eff);

// Transverse amplitudes of h_eff in the zero-quantum (flip-flop) and
// double-quantum (flip-flip) subspaces.
std::pair<double, double> zq_dq_projection(const EffectiveHamiltonian& h);

}  // namespace loopdnp

#pragma once

#include <vector>

#include "loopdnp/spin_system.hpp"
#include "loopdnp/types.hpp"

namespace loopdnp {

// A 4x4 unitary; construction verifies ||U'U - 1||_F < 1e-10.
class Unitary4 {
 public:
  explicit Unitary4(Matrix4c u);
  static Unitary4 identity();

  const Matrix4c& matrix() const { return u_; }
  Unitary4 dagger() const;

 private:
  Matrix4c u_;
};

// exp(-i*H*dt) via Hermitian eigendecomposition, exact for constant H.
// Throws std::invalid_argument if H is not Hermitian or dt <= 0.
Unitary4 pulse_propagator(const Matrix4c& hamiltonian, double dt);

// Right-to-left time-ordered product over one modulation period.
Unitary4 sequence_propagator(const Waveform& waveform, const SpinSystem& system);

// U^n by repeated squaring, n >= 0.
Unitary4 replicate(const Unitary4& u, long n);

// Tr[Iz * U Sz U'], real in exact arithmetic, in [-1, 1].
double fidelity_iz(const Unitary4& u);

struct TransferTrace {
  std::vector<double> times;   // s, strictly increasing
  std::vector<double> values;  // <Iz>, within [-1, 1]
};

// Stroboscopic <Iz> at t = k*tau_m, k = 1..n_max.
TransferTrace transfer_trace(const Waveform& waveform, const SpinSystem& system,
                             int n_max);

}  // namespace loopdnp

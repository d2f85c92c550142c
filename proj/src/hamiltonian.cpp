#include "loopdnp/hamiltonian.hpp"

#include <cmath>
#include <stdexcept>

#include "loopdnp/constants.hpp"
#include "loopdnp/spin_ops.hpp"

namespace loopdnp {

Matrix4c build_hamiltonian(const SpinSystem& system, const Pulse& pulse) {
  if (!system.finite())
    throw std::invalid_argument("build_hamiltonian: non-finite spin system");
  if (!std::isfinite(pulse.amplitude) || !std::isfinite(pulse.phase))
    throw std::invalid_argument("build_hamiltonian: non-finite pulse");
  if (pulse.amplitude < 0.0)
    throw std::invalid_argument("build_hamiltonian: negative amplitude");

  Matrix4c h = system.offset_e * op_Sz() + system.larmor_n * op_Iz() +
               system.hf_secular * (op_Sz() * op_Iz()) +
               system.hf_pseudosecular * (op_Sz() * op_Ix());
  if (pulse.amplitude != 0.0)
    h += pulse.amplitude *
         (std::cos(pulse.phase) * op_Sx() + std::sin(pulse.phase) * op_Sy());
  return h;
}

double dipolar_constant(double r) {
  if (!(r > 0.0)) throw std::domain_error("dipolar_constant: r must be > 0");
  return (mu0 / (2.0 * two_pi)) * gamma_electron * gamma_proton * hbar / (r * r * r);
}

std::pair<double, double> crystallite_couplings(double T, double beta) {
  if (!std::isfinite(T) || !std::isfinite(beta))
    throw std::invalid_argument("crystallite_couplings: non-finite input");
  const double c = std::cos(beta);
  const double s = std::sin(beta);
  return {T * (3.0 * c * c - 1.0), 3.0 * T * s * c};
}

}  // namespace loopdnp

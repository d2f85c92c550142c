#include "loopdnp/propagation.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "loopdnp/hamiltonian.hpp"
#include "loopdnp/spin_ops.hpp"

namespace loopdnp {

namespace {
constexpr double unitarity_tol = 1e-10;
}

Unitary4::Unitary4(Matrix4c u) : u_(std::move(u)) {
  const double defect = (u_.adjoint() * u_ - Matrix4c::Identity()).norm();
  if (!(defect < unitarity_tol))
    throw std::invalid_argument("Unitary4: unitarity defect " + std::to_string(defect));
}

Unitary4 Unitary4::identity() { return Unitary4(Matrix4c::Identity()); }

Unitary4 Unitary4::dagger() const { return Unitary4(u_.adjoint().eval()); }

Unitary4 pulse_propagator(const Matrix4c& hamiltonian, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("pulse_propagator: dt must be > 0");
  const double scale = hamiltonian.norm();
  if ((hamiltonian - hamiltonian.adjoint()).norm() > 1e-12 * std::max(scale, 1.0))
    throw std::invalid_argument("pulse_propagator: matrix is not Hermitian");

  Eigen::SelfAdjointEigenSolver<Matrix4c> es(hamiltonian);
  Eigen::Vector4cd phases;
  for (int k = 0; k < 4; ++k)
    phases(k) = std::polar(1.0, -es.eigenvalues()(k) * dt);
  return Unitary4(es.eigenvectors() * phases.asDiagonal() *
                  es.eigenvectors().adjoint());
}

Unitary4 sequence_propagator(const Waveform& waveform, const SpinSystem& system) {
  Matrix4c u = Matrix4c::Identity();
  for (const Pulse& p : waveform.pulses())
    u = pulse_propagator(build_hamiltonian(system, p), p.duration).matrix() * u;
  return Unitary4(std::move(u));
}

Unitary4 replicate(const Unitary4& u, long n) {
  if (n < 0) throw std::invalid_argument("replicate: n must be >= 0");
  Matrix4c result = Matrix4c::Identity();
  Matrix4c base = u.matrix();
  for (long k = n; k > 0; k >>= 1) {
    if (k & 1) result = base * result;
    if (k > 1) base = base * base;
  }
  return Unitary4(std::move(result));
}

double fidelity_iz(const Unitary4& u) {
  const complexd f =
      (op_Iz() * u.matrix() * op_Sz() * u.matrix().adjoint()).trace();
  if (std::abs(f.imag()) > 1e-12)
    throw std::runtime_error("fidelity_iz: imaginary residue " +
                             std::to_string(f.imag()));
  return f.real();
}

TransferTrace transfer_trace(const Waveform& waveform, const SpinSystem& system,
                             int n_max) {
  if (n_max < 1) throw std::invalid_argument("transfer_trace: n_max must be >= 1");
  const Unitary4 period = sequence_propagator(waveform, system);
  TransferTrace trace;
  trace.times.reserve(n_max);
  trace.values.reserve(n_max);
  Matrix4c power = Matrix4c::Identity();
  for (int k = 1; k <= n_max; ++k) {
    power = period.matrix() * power;
    const double value = fidelity_iz(Unitary4(power));
    if (std::abs(value) > 1.0 + 1e-9)
      throw std::runtime_error("transfer_trace: value out of [-1, 1]");
    trace.times.push_back(k * waveform.period());
    trace.values.push_back(value);
  }
  return trace;
}

}  // namespace loopdnp

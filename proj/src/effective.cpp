#include "loopdnp/effective.hpp"

#include <cmath>
#include <stdexcept>

#include "loopdnp/constants.hpp"

namespace loopdnp {

namespace {
constexpr double branch_tol = 1e-6;
constexpr double pi = two_pi / 2.0;
}  // namespace

EffectiveHamiltonian effective_hamiltonian(const Unitary4& u, double tau_m) {
  if (!(tau_m > 0.0))
    throw std::invalid_argument("effective_hamiltonian: tau_m must be > 0");

  // U is normal, so its Schur form is diagonal up to rounding and the Schur
  // vectors are an orthonormal eigenbasis; building H from them keeps it
  // Hermitian even through degenerate eigenphases.
  Eigen::ComplexSchur<Matrix4c> schur(u.matrix());
  if (schur.info() != Eigen::Success)
    throw std::runtime_error("effective_hamiltonian: Schur decomposition failed");

  EffectiveHamiltonian out;
  Eigen::Vector4d eigphases;
  for (int k = 0; k < 4; ++k) {
    const double theta = std::arg(schur.matrixT()(k, k));  // in (-pi, pi]
    eigphases(k) = theta;
    if (pi - std::abs(theta) < branch_tol) out.branch_warning = true;
  }
  const Matrix4c q = schur.matrixU();
  out.h_eff = q * (-eigphases / tau_m).asDiagonal() * q.adjoint();
  out.h_eff = 0.5 * (out.h_eff + out.h_eff.adjoint()).eval();

  const auto& basis = product_basis();
  for (int k = 0; k < n_product_ops; ++k)
    out.coeffs[k] = (basis[k] * out.h_eff).trace().real();
  out.identity_coeff = out.h_eff.trace().real() / 4.0;
  return out;
}

EffectiveField electron_effective_field(const Waveform& waveform, double offset,
                                        double scale) {
  if (!(scale >= 0.0) || !std::isfinite(offset))
    throw std::invalid_argument("electron_effective_field: bad offset or scale");

  // 2x2 electron block; the nuclear and hyperfine terms are absent.
  Matrix2c u = Matrix2c::Identity();
  for (const Pulse& p : waveform.pulses()) {
    const double amp = scale * p.amplitude;
    Matrix2c h = offset * half_sigma_z();
    if (amp != 0.0)
      h += amp * (std::cos(p.phase) * half_sigma_x() +
                  std::sin(p.phase) * half_sigma_y());
    Eigen::SelfAdjointEigenSolver<Matrix2c> es(h);
    Eigen::Vector2cd phases;
    for (int k = 0; k < 2; ++k)
      phases(k) = std::polar(1.0, -es.eigenvalues()(k) * p.duration);
    u = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint() * u;
  }

  // Strip the global phase: U = exp(-i alpha) (cos(t/2) 1 - i sin(t/2) n.sigma).
  const complexd det = u.determinant();
  const complexd global = std::polar(1.0, 0.5 * std::arg(det));
  const Matrix2c su = u / global;

  const double c = 0.5 * (su(0, 0) + su(1, 1)).real();
  Vector3d sn;  // sin(theta/2) * axis
  sn.x() = -0.5 * (su(0, 1) + su(1, 0)).imag();
  sn.y() = 0.5 * (su(1, 0) - su(0, 1)).real();
  sn.z() = 0.5 * (su(1, 1) - su(0, 0)).imag();
  const double s = sn.norm();

  EffectiveField field;
  if (s < 1e-15) {
    field.magnitude = 0.0;
    field.axis = Vector3d(0, 0, 1);
    return field;
  }

  double theta = 2.0 * std::atan2(s, c);
  Vector3d axis = sn / s;
  if (theta > pi) {  // fold to [0, pi], flipping the axis
    theta = two_pi - theta;
    axis = -axis;
  }
  field.ambiguous = std::abs(theta - pi) < branch_tol;
  field.axis = axis;
  field.magnitude = (axis.z() < 0.0 ? -1.0 : 1.0) * theta / waveform.period();
  return field;
}

ResonanceReport resonance_match(double omega_0I, double omega_m, double omega_eff) {
  if (!(omega_m > 0.0))
    throw std::invalid_argument("resonance_match: omega_m must be > 0");

  const double k_guess = std::round(-(omega_0I + omega_eff) / omega_m);
  ResonanceReport best;
  double best_abs = -1.0;
  for (int d = -1; d <= 1; ++d) {  // increasing k, so ties keep the smaller k
    const double k = k_guess + d;
    const double mismatch = omega_0I + k * omega_m + omega_eff;
    if (best_abs < 0.0 || std::abs(mismatch) < best_abs) {
      best.k = static_cast<int>(k);
      best.mismatch = mismatch;
      best_abs = std::abs(mismatch);
    }
  }
  best.omega_eff_required = -(omega_0I + best.k * omega_m);
  return best;
}

std::pair<double, double> zq_dq_projection(const EffectiveHamiltonian& h) {
  // coeffs order: ... 2SxIx(6) 2SxIy(7) ... 2SyIx(9) 2SyIy(10) ...
  const double a_xx = h.coeffs[6];
  const double a_xy = h.coeffs[7];
  const double a_yx = h.coeffs[9];
  const double a_yy = h.coeffs[10];
  const double zq_x = a_xx + a_yy;  // SxIx + SyIy
  const double zq_y = a_yx - a_xy;  // SyIx - SxIy
  const double dq_x = a_xx - a_yy;  // SxIx - SyIy
  const double dq_y = a_yx + a_xy;  // SxIy + SyIx
  return {std::hypot(zq_x, zq_y), std::hypot(dq_x, dq_y)};
}

}  // namespace loopdnp

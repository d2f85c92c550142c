#pragma once

#include <array>
#include <string>

#include "loopdnp/types.hpp"

namespace loopdnp {

// Two spins 1/2 on a 4-dimensional Hilbert space, electron factor first:
// basis |m_S m_I> = |aa>, |ab>, |ba>, |bb>. Operators use the eigenvalue
// +-1/2 convention, so Tr[Sz^2] = Tr[Iz^2] = 1 and the Sz -> Iz transfer
// fidelity is normalized to [-1, 1].

Matrix4c kron(const Matrix2c& a, const Matrix2c& b);

const Matrix2c& half_sigma_x();
const Matrix2c& half_sigma_y();
const Matrix2c& half_sigma_z();

const Matrix4c& op_Sx();
const Matrix4c& op_Sy();
const Matrix4c& op_Sz();
const Matrix4c& op_Ix();
const Matrix4c& op_Iy();
const Matrix4c& op_Iz();

// Orthonormal traceless product-operator basis under the trace inner
// product: Sx Sy Sz Ix Iy Iz 2SxIx 2SxIy 2SxIz 2SyIx 2SyIy 2SyIz
// 2SzIx 2SzIy 2SzIz.
inline constexpr int n_product_ops = 15;
const std::array<Matrix4c, n_product_ops>& product_basis();
const std::array<std::string, n_product_ops>& product_basis_labels();

}  // namespace loopdnp

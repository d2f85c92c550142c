#include "loopdnp/spin_ops.hpp"

namespace loopdnp {

namespace {

Matrix2c make_half_sigma_x() {
  Matrix2c m;
  m << 0.0, 0.5, 0.5, 0.0;
  return m;
}

Matrix2c make_half_sigma_y() {
  Matrix2c m;
  m << complexd(0, 0), complexd(0, -0.5), complexd(0, 0.5), complexd(0, 0);
  return m;
}

Matrix2c make_half_sigma_z() {
  Matrix2c m;
  m << 0.5, 0.0, 0.0, -0.5;
  return m;
}

}  // namespace

Matrix4c kron(const Matrix2c& a, const Matrix2c& b) {
  Matrix4c out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

const Matrix2c& half_sigma_x() {
  static const Matrix2c m = make_half_sigma_x();
  return m;
}

const Matrix2c& half_sigma_y() {
  static const Matrix2c m = make_half_sigma_y();
  return m;
}

const Matrix2c& half_sigma_z() {
  static const Matrix2c m = make_half_sigma_z();
  return m;
}

const Matrix4c& op_Sx() {
  static const Matrix4c m = kron(half_sigma_x(), Matrix2c::Identity());
  return m;
}

const Matrix4c& op_Sy() {
  static const Matrix4c m = kron(half_sigma_y(), Matrix2c::Identity());
  return m;
}

const Matrix4c& op_Sz() {
  static const Matrix4c m = kron(half_sigma_z(), Matrix2c::Identity());
  return m;
}

const Matrix4c& op_Ix() {
  static const Matrix4c m = kron(Matrix2c::Identity(), half_sigma_x());
  return m;
}

const Matrix4c& op_Iy() {
  static const Matrix4c m = kron(Matrix2c::Identity(), half_sigma_y());
  return m;
}

const Matrix4c& op_Iz() {
  static const Matrix4c m = kron(Matrix2c::Identity(), half_sigma_z());
  return m;
}

const std::array<Matrix4c, n_product_ops>& product_basis() {
  static const std::array<Matrix4c, n_product_ops> basis = [] {
    std::array<Matrix4c, n_product_ops> b;
    const std::array<Matrix4c, 3> s{op_Sx(), op_Sy(), op_Sz()};
    const std::array<Matrix4c, 3> i{op_Ix(), op_Iy(), op_Iz()};
    for (int a = 0; a < 3; ++a) b[a] = s[a];
    for (int a = 0; a < 3; ++a) b[3 + a] = i[a];
    for (int a = 0; a < 3; ++a)
      for (int c = 0; c < 3; ++c) b[6 + 3 * a + c] = 2.0 * s[a] * i[c];
    return b;
  }();
  return basis;
}

const std::array<std::string, n_product_ops>& product_basis_labels() {
  static const std::array<std::string, n_product_ops> labels = {
      "Sx",    "Sy",    "Sz",    "Ix",    "Iy",    "Iz",    "2SxIx", "2SxIy",
      "2SxIz", "2SyIx", "2SyIy", "2SyIz", "2SzIx", "2SzIy", "2SzIz"};
  return labels;
}

}  // namespace loopdnp

#pragma once

#include <complex>

#include <Eigen/Dense>

namespace loopdnp {

using complexd = std::complex<double>;
using Matrix2c = Eigen::Matrix2cd;
using Matrix4c = Eigen::Matrix4cd;
using Vector3d = Eigen::Vector3d;

}  // namespace loopdnp

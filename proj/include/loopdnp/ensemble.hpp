#pragma once

#include <array>
#include <string>
#include <vector>

#include "loopdnp/constants.hpp"
#include "loopdnp/spin_system.hpp"

namespace loopdnp {

// Weighted MW amplitude scaling factors. Weights are normalized to sum to
// exactly 1 at construction.
class InhomogeneityEnsemble {
 public:
  InhomogeneityEnsemble(std::vector<double> scales, std::vector<double> weights);

  static InhomogeneityEnsemble single(double scale = 1.0);

  const std::vector<double>& scales() const { return scales_; }
  const std::vector<double>& weights() const { return weights_; }
  std::size_t size() const { return scales_.size(); }

 private:
  std::vector<double> scales_;
  std::vector<double> weights_;
};

// The published nine-member power-model ensemble. The raw weights sum to
// 1.001; the returned ensemble is renormalized.
InhomogeneityEnsemble published_ensemble();
const std::array<double, 9>& published_ensemble_raw_weights();
const std::array<double, 9>& published_ensemble_scales();

// Orientation grid over beta with normalized weights.
class PowderGrid {
 public:
  PowderGrid(std::vector<double> betas, std::vector<double> weights);

  static PowderGrid single(double beta);

  const std::vector<double>& betas() const { return betas_; }
  const std::vector<double>& weights() const { return weights_; }
  std::size_t size() const { return betas_.size(); }

 private:
  std::vector<double> betas_;
  std::vector<double> weights_;
};

// Gauss-Legendre quadrature in cos(beta) on [0, 1]; the sin(beta) measure is
// absorbed by the substitution, and beta in [0, pi/2] suffices because the
// transfer is invariant under B -> -B.
PowderGrid make_powder_grid(int n);

inline constexpr double default_larmor_mhz = -14.8;

// Powder- and ensemble-averaged <Iz> after n_rep repetitions of the
// waveform, at electron offset `offset` and dipolar anisotropy T.
// Deterministic fixed-order reduction regardless of thread count.
double averaged_fidelity(const Waveform& waveform, double offset, double T,
                         const PowderGrid& grid, const InhomogeneityEnsemble& ensemble,
                         int n_rep, double larmor_n = mhz_to_rad(default_larmor_mhz));

std::string to_json(const InhomogeneityEnsemble& ensemble);
std::string to_json(const PowderGrid& grid);

}  // namespace loopdnp

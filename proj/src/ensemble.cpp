#include "loopdnp/ensemble.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "json.hpp"

#include "loopdnp/constants.hpp"
#include "loopdnp/hamiltonian.hpp"
#include "loopdnp/parallel.hpp"
#include "loopdnp/propagation.hpp"

namespace loopdnp {

namespace {

void check_weighted(const std::vector<double>& values,
                    const std::vector<double>& weights, const char* what) {
  if (values.empty()) throw std::invalid_argument(std::string(what) + ": empty");
  if (values.size() != weights.size())
    throw std::invalid_argument(std::string(what) + ": length mismatch");
  for (double w : weights)
    if (!(w > 0.0))
      throw std::invalid_argument(std::string(what) + ": weights must be > 0");
}

void normalize(std::vector<double>& weights) {
  double sum = 0.0;
  for (double w : weights) sum += w;
  for (double& w : weights) w /= sum;
}

}  // namespace

InhomogeneityEnsemble::InhomogeneityEnsemble(std::vector<double> scales,
                                             std::vector<double> weights)
    : scales_(std::move(scales)), weights_(std::move(weights)) {
  check_weighted(scales_, weights_, "ensemble");
  for (double s : scales_)
    if (!(s >= 0.0)) throw std::invalid_argument("ensemble: scales must be >= 0");
  normalize(weights_);
}

InhomogeneityEnsemble InhomogeneityEnsemble::single(double scale) {
  return InhomogeneityEnsemble({scale}, {1.0});
}

const std::array<double, 9>& published_ensemble_scales() {
  static const std::array<double, 9> scales = {0.65, 0.70, 0.75, 0.80, 0.85,
                                               0.90, 0.95, 1.00, 1.05};
  return scales;
}

const std::array<double, 9>& published_ensemble_raw_weights() {
  // As published; the sum is 1.001, kept verbatim for provenance.
  static const std::array<double, 9> weights = {0.079, 0.083, 0.088, 0.094, 0.103,
                                                0.115, 0.135, 0.209, 0.095};
  return weights;
}

InhomogeneityEnsemble published_ensemble() {
  const auto& s = published_ensemble_scales();
  const auto& w = published_ensemble_raw_weights();
  return InhomogeneityEnsemble(std::vector<double>(s.begin(), s.end()),
                               std::vector<double>(w.begin(), w.end()));
}

PowderGrid::PowderGrid(std::vector<double> betas, std::vector<double> weights)
    : betas_(std::move(betas)), weights_(std::move(weights)) {
  check_weighted(betas_, weights_, "powder grid");
  normalize(weights_);
}

PowderGrid PowderGrid::single(double beta) { return PowderGrid({beta}, {1.0}); }

PowderGrid make_powder_grid(int n) {
  if (n < 1) throw std::invalid_argument("make_powder_grid: n must be >= 1");

  // Gauss-Legendre nodes on [-1, 1] by Newton iteration on P_n.
  std::vector<double> betas(n), weights(n);
  const double pi = two_pi / 2.0;
  for (int k = 0; k < n; ++k) {
    double x = std::cos(pi * (k + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double step = p1 / dp;
      x -= step;
      if (std::abs(step) < 1e-15) break;
    }
    // Map x in [-1, 1] to u = cos(beta) in [0, 1].
    const double u = 0.5 * (x + 1.0);
    betas[n - 1 - k] = std::acos(u);
    weights[n - 1 - k] = 1.0 / ((1.0 - x * x) * dp * dp);  // GL weight / 2
  }
  return PowderGrid(std::move(betas), std::move(weights));
}

double averaged_fidelity(const Waveform& waveform, double offset, double T,
                         const PowderGrid& grid, const InhomogeneityEnsemble& ensemble,
                         int n_rep, double larmor_n) {
  if (n_rep < 1) throw std::invalid_argument("averaged_fidelity: n_rep must be >= 1");

  const std::size_t n_beta = grid.size();
  const std::size_t n_scale = ensemble.size();
  std::vector<double> point(n_beta * n_scale);
  parallel_for(n_beta * n_scale, [&](std::size_t idx) {
    const std::size_t i = idx / n_scale;
    const std::size_t j = idx % n_scale;
    const auto [a, b] = crystallite_couplings(T, grid.betas()[i]);
    const SpinSystem sys{offset, larmor_n, a, b};
    const Waveform scaled = waveform.scaled(ensemble.scales()[j]);
    point[idx] = fidelity_iz(replicate(sequence_propagator(scaled, sys), n_rep));
  });

  // Fixed-order weighted fold, independent of the parallel schedule.
  double sum = 0.0;
  for (std::size_t i = 0; i < n_beta; ++i)
    for (std::size_t j = 0; j < n_scale; ++j)
      sum += grid.weights()[i] * ensemble.weights()[j] * point[i * n_scale + j];
  return sum;
}

std::string to_json(const InhomogeneityEnsemble& ensemble) {
  nlohmann::json j;
  j["scales"] = ensemble.scales();
  j["weights"] = ensemble.weights();
  return j.dump();
}

std::string to_json(const PowderGrid& grid) {
  nlohmann::json j;
  j["betas"] = grid.betas();
  j["weights"] = grid.weights();
  return j.dump();
}

}  // namespace loopdnp

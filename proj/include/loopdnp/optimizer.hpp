#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "loopdnp/constants.hpp"
#include "loopdnp/ensemble.hpp"
#include "loopdnp/spin_system.hpp"

namespace loopdnp {

struct OptimizationConfig {
  int n_pulses = 24;
  double dt = 5e-9;                        // s
  double max_amp = mhz_to_rad(32.0);       // rad/s, amplitude box [0, max_amp]
  std::vector<double> offsets;             // rad/s, target band
  double hf_secular = mhz_to_rad(-0.40);   // A
  double hf_pseudosecular = mhz_to_rad(1.00);  // B
  double larmor_n = mhz_to_rad(-14.8);
  InhomogeneityEnsemble ensemble = InhomogeneityEnsemble::single();
  int n_rep = 7;
  int max_iters = 1000;
  double grad_tol = 1e-8;
  std::uint64_t seed = 1;

  void validate() const;  // throws std::invalid_argument
};

// Per-pulse (amplitude, phase) controls; amplitudes in rad/s.
struct ControlVector {
  std::vector<double> amplitudes;
  std::vector<double> phases;
};

// Ensemble- and offset-averaged <Iz> after n_rep repetitions of the period
// built from the controls.
double objective(const ControlVector& c, const OptimizationConfig& cfg);

// Exact analytic gradient with respect to every amplitude and phase,
// matching objective() to machine precision.
ControlVector gradient(const ControlVector& c, const OptimizationConfig& cfg);

// Packed form used by the optimizer and the finite-difference checks:
// x = [amplitudes/max_amp ; phases], so all variables are O(1).
std::vector<double> pack_controls(const ControlVector& c, const OptimizationConfig& cfg);
ControlVector unpack_controls(const std::vector<double>& x, const OptimizationConfig& cfg);
double objective_packed(const std::vector<double>& x, const OptimizationConfig& cfg);
std::vector<double> gradient_packed(const std::vector<double>& x,
                                    const OptimizationConfig& cfg);

struct OptimizeResult {
  Waveform waveform;                  // phases wrapped to [-pi, pi)
  ControlVector controls;             // unwrapped controls
  double objective = 0.0;
  int iterations = 0;
  bool converged = false;
  std::string reason;
  std::vector<double> history;        // objective after each accepted step
};

// Projected L-BFGS ascent from a seeded random start: amplitudes uniform in
// [0.5, 1.0]*max_amp, phases uniform in [-pi, pi). Deterministic per seed.
OptimizeResult optimize(const OptimizationConfig& cfg);

}  // namespace loopdnp

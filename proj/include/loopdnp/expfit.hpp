#pragma once

#include <string>
#include <vector>

namespace loopdnp {

struct ExpFit {
  double amplitude = 0.0;
  double time_constant = 0.0;  // s, > 0
  double residual_rms = 0.0;
};

// Damped least squares with analytic Jacobians and log-linearized initial
// guesses. All three models carry a free amplitude, so fits are
// scale-equivariant. Throw std::runtime_error on degenerate data.

// a * (1 - exp(-t/tau))
ExpFit fit_buildup(const std::vector<double>& times, const std::vector<double>& values);

// a * (1 - 2*exp(-t/tau))
ExpFit fit_inversion_recovery(const std::vector<double>& times,
                              const std::vector<double>& values);

// a * exp(-t/tau)
ExpFit fit_decay(const std::vector<double>& times, const std::vector<double>& values);

// Two-column CSV "t_s,value"; '#' lines and an optional header row are
// skipped.
void read_xy_csv(const std::string& text, std::vector<double>& times,
                 std::vector<double>& values);

}  // namespace loopdnp

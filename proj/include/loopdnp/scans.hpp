#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "loopdnp/ensemble.hpp"
#include "loopdnp/spin_system.hpp"

namespace loopdnp {

struct TransferProfile {
  std::vector<double> offset_axis;            // rad/s
  std::vector<double> scale_axis;             // dimensionless
  std::vector<std::vector<double>> values;    // [offset][scale]
  std::map<std::string, std::string> metadata;
};

// values[i][j] = powder-averaged fidelity at (offset_i, scale_j). When an
// ensemble is supplied each grid point additionally averages over the
// ensemble members multiplied onto the scale axis.
TransferProfile scan_2d(const Waveform& waveform, const std::vector<double>& offsets,
                        const std::vector<double>& scales, double T,
                        const PowderGrid& grid,
                        const std::optional<InhomogeneityEnsemble>& ensemble,
                        int n_rep, double larmor_n = mhz_to_rad(default_larmor_mhz));

// scan_2d with singleton scale axis {1.0}.
TransferProfile trace_1d(const Waveform& waveform, const std::vector<double>& offsets,
                         double T, const PowderGrid& grid, int n_rep,
                         double larmor_n = mhz_to_rad(default_larmor_mhz));

struct ContactChoice {
  int n_rep = 1;
  double t_contact = 0.0;  // n_rep * tau_m, s
};

// n_rep in [1, n_max] maximizing the band-integrated (trapezoid rule,
// 1 MHz offset steps) powder-averaged fidelity; ties break toward smaller
// n_rep.
ContactChoice optimal_contact(const Waveform& waveform, double T, const PowderGrid& grid,
                              double band_min, double band_max, int n_max,
                              double larmor_n = mhz_to_rad(default_larmor_mhz));

// Contiguous width around the trace maximum at 50% of the maximum, linearly
// interpolated between grid points; rad/s.
double bandwidth_at_half_max(const std::vector<double>& offsets,
                             const std::vector<double>& values);

std::string profile_to_csv(const TransferProfile& profile);

}  // namespace loopdnp

#pragma once

namespace loopdnp {

inline constexpr double two_pi = 6.283185307179586476925287;

// CODATA 2018 recommended values. Gyromagnetic ratios are magnitudes;
// the point-dipole coupling uses |gamma_e * gamma_H|.
inline constexpr double gamma_electron = 1.76085963023e11;  // rad s^-1 T^-1
inline constexpr double gamma_proton = 2.6752218744e8;      // rad s^-1 T^-1
inline constexpr double hbar = 1.054571817e-34;             // J s
inline constexpr double mu0 = 1.25663706212e-6;             // N A^-2

// Internal unit is angular frequency in rad/s; MHz appears only at I/O.
inline constexpr double mhz_to_rad(double f_mhz) { return two_pi * 1e6 * f_mhz; }
inline constexpr double rad_to_mhz(double omega) { return omega / (two_pi * 1e6); }

inline constexpr double ns_to_s(double t_ns) { return t_ns * 1e-9; }
inline constexpr double s_to_ns(double t_s) { return t_s * 1e9; }

}  // namespace loopdnp

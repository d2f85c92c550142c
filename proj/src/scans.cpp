#include "loopdnp/scans.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "loopdnp/constants.hpp"
#include "loopdnp/hamiltonian.hpp"
#include "loopdnp/parallel.hpp"
#include "loopdnp/propagation.hpp"

namespace loopdnp {

namespace {

void check_axis(const std::vector<double>& axis, const char* what) {
  if (axis.empty()) throw std::invalid_argument(std::string(what) + ": empty axis");
  for (std::size_t i = 1; i < axis.size(); ++i)
    if (!(axis[i] > axis[i - 1]))
      throw std::invalid_argument(std::string(what) + ": axis must be increasing");
}

std::string format_double(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

}  // namespace

TransferProfile scan_2d(const Waveform& waveform, const std::vector<double>& offsets,
                        const std::vector<double>& scales, double T,
                        const PowderGrid& grid,
                        const std::optional<InhomogeneityEnsemble>& ensemble,
                        int n_rep, double larmor_n) {
  check_axis(offsets, "scan_2d offsets");
  check_axis(scales, "scan_2d scales");
  if (n_rep < 1) throw std::invalid_argument("scan_2d: n_rep must be >= 1");

  const std::size_t n_off = offsets.size();
  const std::size_t n_scale = scales.size();
  const std::size_t n_beta = grid.size();
  const std::size_t n_ens = ensemble ? ensemble->size() : 1;

  // One flat parallel map over every (offset, scale, beta, member) point,
  // then a fixed-order weighted fold per output cell.
  const std::size_t total = n_off * n_scale * n_beta * n_ens;
  std::vector<double> point(total);
  parallel_for(total, [&](std::size_t idx) {
    std::size_t rest = idx;
    const std::size_t m = rest % n_ens;
    rest /= n_ens;
    const std::size_t k = rest % n_beta;
    rest /= n_beta;
    const std::size_t j = rest % n_scale;
    const std::size_t i = rest / n_scale;

    const auto [a, b] = crystallite_couplings(T, grid.betas()[k]);
    const SpinSystem sys{offsets[i], larmor_n, a, b};
    const double scale =
        scales[j] * (ensemble ? ensemble->scales()[m] : 1.0);
    point[idx] = fidelity_iz(
        replicate(sequence_propagator(waveform.scaled(scale), sys), n_rep));
  });

  TransferProfile profile;
  profile.offset_axis = offsets;
  profile.scale_axis = scales;
  profile.values.assign(n_off, std::vector<double>(n_scale, 0.0));
  for (std::size_t i = 0; i < n_off; ++i)
    for (std::size_t j = 0; j < n_scale; ++j) {
      double sum = 0.0;
      for (std::size_t k = 0; k < n_beta; ++k)
        for (std::size_t m = 0; m < n_ens; ++m) {
          const double w = grid.weights()[k] *
                           (ensemble ? ensemble->weights()[m] : 1.0);
          sum += w * point[((i * n_scale + j) * n_beta + k) * n_ens + m];
        }
      if (std::abs(sum) > 1.0 + 1e-9)
        throw std::runtime_error("scan_2d: averaged value out of [-1, 1]");
      profile.values[i][j] = sum;
    }

  profile.metadata["waveform"] = waveform.name();
  profile.metadata["T_MHz"] = format_double("%.6g", rad_to_mhz(T));
  profile.metadata["grid_n"] = std::to_string(n_beta);
  profile.metadata["ensemble"] = ensemble ? to_json(*ensemble) : "none";
  profile.metadata["n_rep"] = std::to_string(n_rep);
  profile.metadata["t_contact_ns"] =
      format_double("%.3f", s_to_ns(n_rep * waveform.period()));
  return profile;
}

TransferProfile trace_1d(const Waveform& waveform, const std::vector<double>& offsets,
                         double T, const PowderGrid& grid, int n_rep,
                         double larmor_n) {
  return scan_2d(waveform, offsets, {1.0}, T, grid, std::nullopt, n_rep, larmor_n);
}

ContactChoice optimal_contact(const Waveform& waveform, double T,
                              const PowderGrid& grid, double band_min, double band_max,
                              int n_max, double larmor_n) {
  if (n_max < 1) throw std::invalid_argument("optimal_contact: n_max must be >= 1");
  if (!(band_max >= band_min))
    throw std::invalid_argument("optimal_contact: empty band");

  // 1 MHz offset steps across the band, inclusive of both edges.
  std::vector<double> offsets;
  const double step = mhz_to_rad(1.0);
  for (double w = band_min; w <= band_max + 0.5 * step; w += step)
    offsets.push_back(w);

  const std::size_t n_off = offsets.size();
  const std::size_t n_beta = grid.size();

  // Reuse the period propagator across repetition counts.
  std::vector<double> fid(n_off * n_beta * n_max);
  parallel_for(n_off * n_beta, [&](std::size_t idx) {
    const std::size_t i = idx / n_beta;
    const std::size_t k = idx % n_beta;
    const auto [a, b] = crystallite_couplings(T, grid.betas()[k]);
    const SpinSystem sys{offsets[i], larmor_n, a, b};
    const Matrix4c period = sequence_propagator(waveform, sys).matrix();
    Matrix4c power = Matrix4c::Identity();
    for (int r = 0; r < n_max; ++r) {
      power = period * power;
      fid[idx * n_max + r] = fidelity_iz(Unitary4(power));
    }
  });

  ContactChoice best;
  double best_integral = 0.0;
  for (int r = 0; r < n_max; ++r) {
    // Powder average per offset, then trapezoid over the band.
    double integral = 0.0;
    for (std::size_t i = 0; i < n_off; ++i) {
      double avg = 0.0;
      for (std::size_t k = 0; k < n_beta; ++k)
        avg += grid.weights()[k] * fid[(i * n_beta + k) * n_max + r];
      const double edge = (i == 0 || i + 1 == n_off) ? 0.5 : 1.0;
      integral += edge * avg;
    }
    if (r == 0 || integral > best_integral) {
      best_integral = integral;
      best.n_rep = r + 1;
    }
  }
  best.t_contact = best.n_rep * waveform.period();
  return best;
}

double bandwidth_at_half_max(const std::vector<double>& offsets,
                             const std::vector<double>& values) {
  if (offsets.size() != values.size() || offsets.empty())
    throw std::invalid_argument("bandwidth_at_half_max: bad input");
  const std::size_t peak =
      std::max_element(values.begin(), values.end()) - values.begin();
  const double vmax = values[peak];
  if (!(vmax > 0.0)) return 0.0;
  const double level = 0.5 * vmax;

  double left = offsets.front();
  for (std::size_t i = peak; i-- > 0;) {
    if (values[i] < level) {
      const double t = (level - values[i]) / (values[i + 1] - values[i]);
      left = offsets[i] + t * (offsets[i + 1] - offsets[i]);
      break;
    }
    left = offsets[i];
  }
  double right = offsets.back();
  for (std::size_t i = peak + 1; i < values.size(); ++i) {
    if (values[i] < level) {
      const double t = (values[i - 1] - level) / (values[i - 1] - values[i]);
      right = offsets[i - 1] + t * (offsets[i] - offsets[i - 1]);
      break;
    }
    right = offsets[i];
  }
  return right - left;
}

std::string profile_to_csv(const TransferProfile& profile) {
  std::string out;
  for (const auto& [key, value] : profile.metadata)
    out += "# " + key + "=" + value + "\n";
  out += "offset_MHz,scale,iz\n";
  for (std::size_t i = 0; i < profile.offset_axis.size(); ++i)
    for (std::size_t j = 0; j < profile.scale_axis.size(); ++j) {
      out += format_double("%.3f", rad_to_mhz(profile.offset_axis[i]));
      out += ",";
      out += format_double("%.4f", profile.scale_axis[j]);
      out += ",";
      out += format_double("%.9f", profile.values[i][j]);
      out += "\n";
    }
  return out;
}

}  // namespace loopdnp

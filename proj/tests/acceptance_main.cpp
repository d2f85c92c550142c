// Acceptance suite: one check per shipped guarantee, each printed as a
// single [PASS]/[FAIL] line with the measured numbers. Exit status is the
// number of failed checks.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "loopdnp/constants.hpp"
#include "loopdnp/effective.hpp"
#include "loopdnp/ensemble.hpp"
#include "loopdnp/expfit.hpp"
#include "loopdnp/hamiltonian.hpp"
#include "loopdnp/optimizer.hpp"
#include "loopdnp/propagation.hpp"
#include "loopdnp/scans.hpp"
#include "loopdnp/waveform_io.hpp"

#include "oracles.hpp"

using namespace loopdnp;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int number, const char* name, bool ok, const std::string& detail) {
  std::printf("[%s] criterion %d: %s — %s\n", ok ? "PASS" : "FAIL", number, name,
              detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

const std::vector<std::string> loop_names = {"LOOP-1", "LOOP-2", "LOOP-3", "LOOP-4",
                                             "LOOP-5"};

// 1. Required effective fields from the resonance condition, 3 decimals.
void criterion_resonance() {
  const double w0i = mhz_to_rad(-14.8);
  const double fm[3] = {25.0 / 3.0, 8.0, 20.0 / 3.0};
  const double expected[3] = {1.867, 1.200, 1.467};
  bool ok = true;
  std::string detail;
  for (int i = 0; i < 3; ++i) {
    const ResonanceReport r = resonance_match(w0i, mhz_to_rad(fm[i]), 0.0);
    const double got =
        std::round(std::abs(rad_to_mhz(r.omega_eff_required)) * 1000.0) / 1000.0;
    ok = ok && (got == expected[i]);
    detail += fmt("%.3f", got) + "/" + fmt("%.3f", expected[i]) + " MHz (k=" +
              std::to_string(r.k) + ") ";
  }
  report(1, "resonance arithmetic", ok, detail);
}

// 2. Point-dipole constant at 4.5 A.
void criterion_dipolar() {
  const double t_mhz = rad_to_mhz(dipolar_constant(4.5e-10));
  const bool ok = std::abs(t_mhz - 0.8676) <= 0.001 * 0.8676;
  report(2, "point-dipole constant", ok,
         "T = " + fmt("%.5f", t_mhz) + " MHz vs 0.8676 MHz +-0.1%");
}

// 3. Electron-only effective z rotation of every bundled waveform.
void criterion_z_rotation() {
  bool ok = true;
  std::string detail;
  for (const std::string& name : loop_names) {
    const Waveform w = corpus_waveform(name);
    const EffectiveField f = electron_effective_field(w, 0.0, 1.0);
    const ResonanceReport r =
        resonance_match(mhz_to_rad(-14.8), w.modulation_freq(), f.magnitude);
    const double got = std::abs(rad_to_mhz(f.magnitude));
    const double req = std::abs(rad_to_mhz(r.omega_eff_required));
    const bool axis_ok = std::abs(f.axis.z()) > 0.99;
    const bool mag_ok = std::abs(got - req) <= 0.10 * req;
    ok = ok && axis_ok && mag_ok;
    detail += name + " |z|=" + fmt("%.3f", std::abs(f.axis.z())) + " |w_eff|=" +
              fmt("%.3f", got) + "/" + fmt("%.3f", req) + " MHz(k=" +
              std::to_string(r.k) + ") ";
  }
  report(3, "effective z-rotation (|z| > 0.99, |w_eff| within 10%)", ok, detail);
}

// 4. 50%-of-max bandwidth of the powder-averaged nominal-field traces.
void criterion_bandwidth() {
  const double T = mhz_to_rad(0.8676);
  const PowderGrid grid = make_powder_grid(64);
  std::vector<double> offsets;
  for (int o = -60; o <= 60; ++o) offsets.push_back(mhz_to_rad(o));
  bool ok = true;
  std::string detail;
  for (const std::string& name : loop_names) {
    const Waveform w = corpus_waveform(name);
    const ContactChoice contact =
        optimal_contact(w, T, grid, mhz_to_rad(-30), mhz_to_rad(30), 40);
    const TransferProfile trace = trace_1d(w, offsets, T, grid, contact.n_rep);
    std::vector<double> values(offsets.size());
    for (std::size_t i = 0; i < offsets.size(); ++i) values[i] = trace.values[i][0];
    const double width = rad_to_mhz(bandwidth_at_half_max(offsets, values));
    ok = ok && (width >= 100.0);
    detail += name + " " + fmt("%.1f", width) + " MHz(n=" +
              std::to_string(contact.n_rep) + ") ";
  }
  report(4, "trace bandwidth >= 100 MHz", ok, detail);
}

// 5. Sequence propagator vs an independent RK4 integration.
void criterion_rk4() {
  testing::Rng rng(77);
  double worst = 0.0;
  for (const std::string& name : loop_names) {
    const Waveform w = corpus_waveform(name);
    for (int t = 0; t < 10; ++t) {
      const double offset = mhz_to_rad(rng.uniform(-60, 60));
      const double scale = rng.uniform(0.5, 1.2);
      const double beta = rng.uniform(0.0, two_pi / 4.0);
      const auto [a, b] = crystallite_couplings(mhz_to_rad(0.8676), beta);
      const SpinSystem sys{offset, mhz_to_rad(-14.8), a, b};
      const Waveform scaled = w.scaled(scale);
      const Matrix4c u = sequence_propagator(scaled, sys).matrix();
      const Matrix4c ode = testing::rk4_sequence_propagator(scaled, sys, 2000);
      worst = std::max(worst, (u - ode).norm());
    }
  }
  report(5, "propagator vs RK4 oracle", worst < 1e-8,
         "worst Frobenius deviation " + fmt("%.2e", worst) +
             " over 5 waveforms x 10 settings (< 1e-8)");
}

// 6. Analytic gradient vs central finite differences, 24-pulse problem.
void criterion_gradient() {
  OptimizationConfig cfg;
  cfg.n_pulses = 24;
  cfg.offsets = {mhz_to_rad(-10.0), 0.0, mhz_to_rad(10.0)};
  cfg.n_rep = 7;
  testing::Rng rng(99);
  double worst = 0.0;
  for (int point = 0; point < 20; ++point) {
    std::vector<double> x(2 * cfg.n_pulses);
    for (int k = 0; k < cfg.n_pulses; ++k) x[k] = rng.uniform(0.1, 1.0);
    for (int k = 0; k < cfg.n_pulses; ++k)
      x[cfg.n_pulses + k] = rng.uniform(-3.14, 3.14);
    const std::vector<double> g = gradient_packed(x, cfg);
    const double h = 1e-6;
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      std::vector<double> xp = x, xm = x;
      xp[i] += h;
      xm[i] -= h;
      const double fd =
          (objective_packed(xp, cfg) - objective_packed(xm, cfg)) / (2.0 * h);
      num += (g[i] - fd) * (g[i] - fd);
      den += fd * fd;
    }
    worst = std::max(worst, std::sqrt(num / den));
  }
  report(6, "gradient vs finite differences", worst < 1e-6,
         "worst vector-relative deviation " + fmt("%.2e", worst) +
             " over 20 random points (< 1e-6)");
}

// 7. Synthesis on the published optimization scenario, best of 8 seeds.
void criterion_synthesis() {
  OptimizationConfig cfg;
  cfg.n_pulses = 24;
  cfg.dt = 5e-9;
  cfg.max_amp = mhz_to_rad(32.0);
  for (int o = -50; o <= 50; o += 5) cfg.offsets.push_back(mhz_to_rad(o));
  cfg.hf_secular = mhz_to_rad(-0.40);
  cfg.hf_pseudosecular = mhz_to_rad(1.00);
  cfg.larmor_n = mhz_to_rad(-14.8);
  cfg.ensemble = published_ensemble();
  cfg.n_rep = 7;
  cfg.max_iters = 500;
  cfg.grad_tol = 1e-7;

  double best = -2.0;
  std::uint64_t best_seed = 0;
  Waveform best_waveform = corpus_waveform("LOOP-1");
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    cfg.seed = seed;
    const OptimizeResult r = optimize(cfg);
    std::printf("    seed %llu: objective %.4f (%d iterations, %s)\n",
                static_cast<unsigned long long>(seed), r.objective, r.iterations,
                r.reason.c_str());
    std::fflush(stdout);
    if (r.objective > best) {
      best = r.objective;
      best_seed = seed;
      best_waveform = r.waveform;
    }
  }
  const EffectiveField f = electron_effective_field(best_waveform, 0.0, 1.0);
  const bool ok = best > 0.6 && std::abs(f.axis.z()) > 0.99;
  report(7, "synthesis capability", ok,
         "best objective " + fmt("%.4f", best) + " (seed " +
             std::to_string(best_seed) + ", need > 0.6), axis |z| = " +
             fmt("%.3f", std::abs(f.axis.z())) + " (need > 0.99)");
}

// 8. Exponential fit recovery, noiseless and with 1% noise.
void criterion_fits() {
  bool ok = true;
  std::string detail;

  auto linspace = [](double lo, double hi, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
    return v;
  };

  {
    const std::vector<double> t = linspace(0.5, 40.0, 24);
    std::vector<double> v(t.size());
    for (std::size_t i = 0; i < t.size(); ++i)
      v[i] = 328.0 * (1.0 - std::exp(-t[i] / 8.4));
    const ExpFit fit = fit_buildup(t, v);
    const bool good = std::abs(fit.amplitude - 328.0) < 1e-6 * 328.0 &&
                      std::abs(fit.time_constant - 8.4) < 1e-6 * 8.4;
    ok = ok && good;
    detail += "buildup " + fmt("%.3f", fit.amplitude) + "/" +
              fmt("%.4f", fit.time_constant) + "s ";
  }
  {
    const std::vector<double> t = linspace(0.0, 8.5e-3, 24);
    std::vector<double> v(t.size());
    for (std::size_t i = 0; i < t.size(); ++i)
      v[i] = 1.0 - 2.0 * std::exp(-t[i] / 1.7e-3);
    const ExpFit fit = fit_inversion_recovery(t, v);
    ok = ok && std::abs(fit.time_constant - 1.7e-3) < 1e-6 * 1.7e-3;
    detail += "invrec T1e " + fmt("%.5f", fit.time_constant * 1e3) + "ms ";
  }
  {
    const std::vector<double> t = linspace(0.0, 110.0, 24);
    std::vector<double> v(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) v[i] = 200.0 * std::exp(-t[i] / 22.4);
    const ExpFit fit = fit_decay(t, v);
    ok = ok && std::abs(fit.time_constant - 22.4) < 1e-6 * 22.4;
    detail += "decay T1n " + fmt("%.4f", fit.time_constant) + "s ";
  }
  {
    // 1% noise, 5% recovery over 100 trials of each model
    testing::Rng rng(512);
    const std::vector<double> t = linspace(2.0, 40.0, 20);
    int bad = 0;
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<double> vb(t.size()), vi(t.size()), vd(t.size());
      for (std::size_t i = 0; i < t.size(); ++i) {
        vb[i] = 328.0 * (1.0 - std::exp(-t[i] / 8.4)) * (1.0 + rng.gaussian(0.01));
        vi[i] = (1.0 - 2.0 * std::exp(-t[i] / 10.0)) * (1.0 + rng.gaussian(0.01));
        vd[i] = 50.0 * std::exp(-t[i] / 22.4) * (1.0 + rng.gaussian(0.01));
      }
      if (std::abs(fit_buildup(t, vb).time_constant - 8.4) > 0.05 * 8.4) ++bad;
      if (std::abs(fit_inversion_recovery(t, vi).time_constant - 10.0) > 0.05 * 10.0)
        ++bad;
      if (std::abs(fit_decay(t, vd).time_constant - 22.4) > 0.05 * 22.4) ++bad;
    }
    ok = ok && (bad == 0);
    detail += "noisy trials outside 5%: " + std::to_string(bad) + "/300";
  }
  report(8, "fit recovery", ok, detail);
}

// 9. Byte-identical CLI output across runs and thread counts.
void criterion_determinism() {
#ifndef LOOPDNP_CLI_PATH
  report(9, "CLI determinism", false, "CLI path not configured");
#else
  const std::string cli = LOOPDNP_CLI_PATH;
  const fs::path dir = fs::temp_directory_path() / "loopdnp-acceptance";
  fs::create_directories(dir);

  // Synthetic fit input used by the fit invocation below.
  const fs::path fit_csv = dir / "buildup.csv";
  {
    std::ofstream out(fit_csv);
    out << "t_s,value\n";
    for (int i = 1; i <= 20; ++i) {
      const double t = 2.0 * i;
      out << t << "," << 328.0 * (1.0 - std::exp(-t / 8.4)) << "\n";
    }
  }

  const std::vector<std::string> commands = {
      "corpus",
      "corpus --export LOOP-1",
      "validate --waveform corpus:LOOP-1",
      "effective --waveform corpus:LOOP-2",
      "contact --waveform corpus:LOOP-4 --grid 16 --nmax 20",
      "simulate --waveform corpus:LOOP-1 --nmax 12",
      "trace --waveform corpus:LOOP-3 --offsets -20:20:2 --grid 16 --nrep 7",
      "fit --model buildup --in " + fit_csv.string(),
  };

  bool ok = true;
  std::string detail;
  int index = 0;
  for (const std::string& command : commands) {
    std::string first;
    for (int run = 0; run < 2; ++run) {
      const fs::path out = dir / ("out-" + std::to_string(index) + ".txt");
      const std::string env = run == 0 ? "LOOPDNP_THREADS=1" : "LOOPDNP_THREADS=3";
      const std::string full =
          env + " " + cli + " " + command + " > " + out.string() + " 2>/dev/null";
      if (std::system(full.c_str()) != 0) {
        ok = false;
        detail += "command failed: " + command + " ";
        break;
      }
      std::ifstream in(out, std::ios::binary);
      std::ostringstream buf;
      buf << in.rdbuf();
      if (run == 0)
        first = buf.str();
      else if (buf.str() != first) {
        ok = false;
        detail += "mismatch: " + command + " ";
      }
    }
    ++index;
  }
  if (ok) detail = std::to_string(commands.size()) + " documented invocations identical";
  report(9, "CLI determinism", ok, detail);
#endif
}

}  // namespace

int main() {
  std::printf("acceptance suite\n");
  criterion_resonance();
  criterion_dipolar();
  criterion_z_rotation();
  criterion_bandwidth();
  criterion_rk4();
  criterion_gradient();
  criterion_synthesis();
  criterion_fits();
  criterion_determinism();
  std::printf("%d of 9 criteria failed\n", failures);
  return failures;
}

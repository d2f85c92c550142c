#include "loopdnp/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <random>
#include <stdexcept>

#include "loopdnp/hamiltonian.hpp"
#include "loopdnp/parallel.hpp"
#include "loopdnp/spin_ops.hpp"
#include "loopdnp/types.hpp"

namespace loopdnp {

namespace {

constexpr double pi = two_pi / 2.0;

double sinc(double x) {
  if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

struct PulseEig {
  Matrix4c vectors;
  Eigen::Vector4d values;
  Matrix4c u;  // exp(-i H dt)
};

PulseEig decompose(const Matrix4c& h, double dt) {
  PulseEig out;
  Eigen::SelfAdjointEigenSolver<Matrix4c> es(h);
  out.vectors = es.eigenvectors();
  out.values = es.eigenvalues();
  Eigen::Vector4cd phases;
  for (int k = 0; k < 4; ++k) phases(k) = std::polar(1.0, -out.values(k) * dt);
  out.u = out.vectors * phases.asDiagonal() * out.vectors.adjoint();
  return out;
}

// d exp(-i H dt) for a Hermitian direction dH, through the spectral
// divided-difference formula; exact, no truncation.
Matrix4c exp_derivative(const PulseEig& eig, double dt, const Matrix4c& dh) {
  const Matrix4c m = eig.vectors.adjoint() * dh * eig.vectors;
  Matrix4c phi;
  for (int k = 0; k < 4; ++k)
    for (int l = 0; l < 4; ++l) {
      const double mean = 0.5 * (eig.values(k) + eig.values(l)) * dt;
      const double diff = 0.5 * (eig.values(k) - eig.values(l)) * dt;
      phi(k, l) = complexd(0.0, -dt) * std::polar(1.0, -mean) * sinc(diff) * m(k, l);
    }
  return eig.vectors * phi * eig.vectors.adjoint();
}

struct SettingResult {
  double fidelity = 0.0;
  std::vector<double> grad_amp;
  std::vector<double> grad_phase;
};

SettingResult evaluate_setting(const ControlVector& c, const OptimizationConfig& cfg,
                               double offset, double scale, bool want_gradient) {
  const int n = cfg.n_pulses;
  const SpinSystem sys{offset, cfg.larmor_n, cfg.hf_secular, cfg.hf_pseudosecular};

  std::vector<PulseEig> eig(n);
  std::vector<double> cosp(n), sinp(n);
  for (int j = 0; j < n; ++j) {
    cosp[j] = std::cos(c.phases[j]);
    sinp[j] = std::sin(c.phases[j]);
    const Pulse pulse{scale * c.amplitudes[j], c.phases[j], cfg.dt};
    eig[j] = decompose(build_hamiltonian(sys, pulse), cfg.dt);
  }

  // Period propagator and its n_rep-th power.
  Matrix4c u = Matrix4c::Identity();
  for (int j = 0; j < n; ++j) u = eig[j].u * u;
  std::vector<Matrix4c> powers(cfg.n_rep);  // U^k, k = 0..n_rep-1
  powers[0] = Matrix4c::Identity();
  for (int k = 1; k < cfg.n_rep; ++k) powers[k] = u * powers[k - 1];
  const Matrix4c w = u * powers[cfg.n_rep - 1];

  SettingResult result;
  result.fidelity = (op_Iz() * w * op_Sz() * w.adjoint()).trace().real();
  if (!want_gradient) return result;

  // dJ = 2 Re Tr[dU * C] with C = sum_k U^(n-1-k) Sz W' Iz U^k.
  const Matrix4c q = op_Sz() * w.adjoint() * op_Iz();
  Matrix4c chain = Matrix4c::Zero();
  for (int k = 0; k < cfg.n_rep; ++k)
    chain += powers[cfg.n_rep - 1 - k] * q * powers[k];

  std::vector<Matrix4c> prefix(n), suffix(n);
  prefix[0] = Matrix4c::Identity();
  for (int j = 1; j < n; ++j) prefix[j] = eig[j - 1].u * prefix[j - 1];
  suffix[n - 1] = Matrix4c::Identity();
  for (int j = n - 2; j >= 0; --j) suffix[j] = suffix[j + 1] * eig[j + 1].u;

  result.grad_amp.resize(n);
  result.grad_phase.resize(n);
  for (int j = 0; j < n; ++j) {
    const Matrix4c m = prefix[j] * chain * suffix[j];
    const Matrix4c dh_amp = scale * (cosp[j] * op_Sx() + sinp[j] * op_Sy());
    result.grad_amp[j] =
        2.0 * (exp_derivative(eig[j], cfg.dt, dh_amp) * m).trace().real();
    if (c.amplitudes[j] == 0.0) {
      result.grad_phase[j] = 0.0;  // phase of a zero pulse is inert
    } else {
      const Matrix4c dh_phase =
          scale * c.amplitudes[j] * (-sinp[j] * op_Sx() + cosp[j] * op_Sy());
      result.grad_phase[j] =
          2.0 * (exp_derivative(eig[j], cfg.dt, dh_phase) * m).trace().real();
    }
  }
  return result;
}

void check_controls(const ControlVector& c, const OptimizationConfig& cfg) {
  if (static_cast<int>(c.amplitudes.size()) != cfg.n_pulses ||
      static_cast<int>(c.phases.size()) != cfg.n_pulses)
    throw std::invalid_argument("controls do not match n_pulses");
}

// Weighted mean over offsets (uniform) x ensemble members, fixed fold order.
template <typename F>
double averaged_over_settings(const OptimizationConfig& cfg, const F& point_value) {
  const std::size_t n_off = cfg.offsets.size();
  const std::size_t n_ens = cfg.ensemble.size();
  double sum = 0.0;
  for (std::size_t i = 0; i < n_off; ++i)
    for (std::size_t j = 0; j < n_ens; ++j)
      sum += cfg.ensemble.weights()[j] / static_cast<double>(n_off) *
             point_value(i * n_ens + j);
  return sum;
}

}  // namespace

void OptimizationConfig::validate() const {
  if (n_pulses < 1) throw std::invalid_argument("config: n_pulses must be >= 1");
  if (!(dt > 0.0)) throw std::invalid_argument("config: dt must be > 0");
  if (!(max_amp > 0.0)) throw std::invalid_argument("config: max_amp must be > 0");
  if (offsets.empty()) throw std::invalid_argument("config: offsets must be non-empty");
  if (n_rep < 1) throw std::invalid_argument("config: n_rep must be >= 1");
  if (max_iters < 0) throw std::invalid_argument("config: max_iters must be >= 0");
  if (!(grad_tol > 0.0)) throw std::invalid_argument("config: grad_tol must be > 0");
  if (!std::isfinite(larmor_n) || !std::isfinite(hf_secular) ||
      !std::isfinite(hf_pseudosecular))
    throw std::invalid_argument("config: non-finite spin parameters");
}

double objective(const ControlVector& c, const OptimizationConfig& cfg) {
  cfg.validate();
  check_controls(c, cfg);
  const std::size_t n_settings = cfg.offsets.size() * cfg.ensemble.size();
  std::vector<double> values(n_settings);
  parallel_for(n_settings, [&](std::size_t idx) {
    const std::size_t i = idx / cfg.ensemble.size();
    const std::size_t j = idx % cfg.ensemble.size();
    values[idx] = evaluate_setting(c, cfg, cfg.offsets[i], cfg.ensemble.scales()[j],
                                   false)
                      .fidelity;
  });
  return averaged_over_settings(cfg, [&](std::size_t s) { return values[s]; });
}

ControlVector gradient(const ControlVector& c, const OptimizationConfig& cfg) {
  cfg.validate();
  check_controls(c, cfg);
  const std::size_t n_settings = cfg.offsets.size() * cfg.ensemble.size();
  std::vector<SettingResult> results(n_settings);
  parallel_for(n_settings, [&](std::size_t idx) {
    const std::size_t i = idx / cfg.ensemble.size();
    const std::size_t j = idx % cfg.ensemble.size();
    results[idx] =
        evaluate_setting(c, cfg, cfg.offsets[i], cfg.ensemble.scales()[j], true);
  });

  ControlVector g;
  g.amplitudes.assign(cfg.n_pulses, 0.0);
  g.phases.assign(cfg.n_pulses, 0.0);
  for (int k = 0; k < cfg.n_pulses; ++k) {
    g.amplitudes[k] = averaged_over_settings(
        cfg, [&](std::size_t s) { return results[s].grad_amp[k]; });
    g.phases[k] = averaged_over_settings(
        cfg, [&](std::size_t s) { return results[s].grad_phase[k]; });
  }
  return g;
}

std::vector<double> pack_controls(const ControlVector& c,
                                  const OptimizationConfig& cfg) {
  check_controls(c, cfg);
  std::vector<double> x(2 * cfg.n_pulses);
  for (int k = 0; k < cfg.n_pulses; ++k) {
    x[k] = c.amplitudes[k] / cfg.max_amp;
    x[cfg.n_pulses + k] = c.phases[k];
  }
  return x;
}

ControlVector unpack_controls(const std::vector<double>& x,
                              const OptimizationConfig& cfg) {
  if (static_cast<int>(x.size()) != 2 * cfg.n_pulses)
    throw std::invalid_argument("packed vector does not match n_pulses");
  ControlVector c;
  c.amplitudes.resize(cfg.n_pulses);
  c.phases.resize(cfg.n_pulses);
  for (int k = 0; k < cfg.n_pulses; ++k) {
    c.amplitudes[k] = x[k] * cfg.max_amp;
    c.phases[k] = x[cfg.n_pulses + k];
  }
  return c;
}

double objective_packed(const std::vector<double>& x, const OptimizationConfig& cfg) {
  return objective(unpack_controls(x, cfg), cfg);
}

std::vector<double> gradient_packed(const std::vector<double>& x,
                                    const OptimizationConfig& cfg) {
  const ControlVector g = gradient(unpack_controls(x, cfg), cfg);
  std::vector<double> out(2 * cfg.n_pulses);
  for (int k = 0; k < cfg.n_pulses; ++k) {
    out[k] = g.amplitudes[k] * cfg.max_amp;
    out[cfg.n_pulses + k] = g.phases[k];
  }
  return out;
}

namespace {

double uniform01(std::mt19937_64& rng) {
  // Explicit 53-bit mapping; reproducible independent of the standard
  // library's distribution implementation.
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

using Vec = std::vector<double>;

void project_amplitudes(Vec& x, int n_pulses) {
  for (int k = 0; k < n_pulses; ++k) x[k] = std::clamp(x[k], 0.0, 1.0);
}

double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double wrap_phase(double phi) {
  return phi - two_pi * std::floor((phi + pi) / two_pi);
}

}  // namespace

OptimizeResult optimize(const OptimizationConfig& cfg) {
  cfg.validate();
  const int n = cfg.n_pulses;
  const int dim = 2 * n;

  std::mt19937_64 rng(cfg.seed);
  ControlVector start;
  start.amplitudes.resize(n);
  start.phases.resize(n);
  for (int k = 0; k < n; ++k)
    start.amplitudes[k] = (0.5 + 0.5 * uniform01(rng)) * cfg.max_amp;
  for (int k = 0; k < n; ++k) start.phases[k] = -pi + two_pi * uniform01(rng);

  Vec x = pack_controls(start, cfg);
  project_amplitudes(x, n);

  // Minimize f = -objective with an L-BFGS direction, projecting the
  // amplitude box after each trial step.
  auto f_value = [&](const Vec& v) { return -objective_packed(v, cfg); };
  auto f_gradient = [&](const Vec& v) {
    Vec g = gradient_packed(v, cfg);
    for (double& gi : g) gi = -gi;
    return g;
  };

  double f = f_value(x);
  Vec g = f_gradient(x);

  const int memory = 10;
  std::deque<Vec> s_hist, y_hist;
  std::deque<double> rho_hist;

  OptimizeResult result{Waveform::uniform("pending", {0.0}, {0.0}, cfg.dt)};
  result.history.reserve(cfg.max_iters);
  result.reason = "max iterations reached";

  auto projected_gradient = [&](const Vec& v, const Vec& grad) {
    Vec pg = grad;
    for (int k = 0; k < n; ++k) {
      if (v[k] <= 0.0 && grad[k] > 0.0) pg[k] = 0.0;
      if (v[k] >= 1.0 && grad[k] < 0.0) pg[k] = 0.0;
    }
    return pg;
  };

  int iter = 0;
  for (; iter < cfg.max_iters; ++iter) {
    Vec pg = projected_gradient(x, g);
    double pg_norm = 0.0;
    for (double v : pg) pg_norm = std::max(pg_norm, std::abs(v));
    if (pg_norm < cfg.grad_tol) {
      result.converged = true;
      result.reason = "gradient tolerance reached";
      break;
    }

    // Two-loop recursion for the descent direction.
    Vec d = g;
    std::vector<double> alpha(s_hist.size());
    for (int i = static_cast<int>(s_hist.size()) - 1; i >= 0; --i) {
      alpha[i] = rho_hist[i] * dot(s_hist[i], d);
      for (int k = 0; k < dim; ++k) d[k] -= alpha[i] * y_hist[i][k];
    }
    if (!s_hist.empty()) {
      const double gamma =
          dot(s_hist.back(), y_hist.back()) / dot(y_hist.back(), y_hist.back());
      for (double& v : d) v *= gamma;
    }
    for (std::size_t i = 0; i < s_hist.size(); ++i) {
      const double beta = rho_hist[i] * dot(y_hist[i], d);
      for (int k = 0; k < dim; ++k) d[k] += (alpha[i] - beta) * s_hist[i][k];
    }
    for (double& v : d) v = -v;

    // Backtracking Armijo search on the projected trial point; fall back to
    // the projected steepest-descent direction if the quasi-Newton one fails.
    bool accepted = false;
    Vec x_new;
    double f_new = 0.0;
    for (int attempt = 0; attempt < 2 && !accepted; ++attempt) {
      if (attempt == 1) {
        d = pg;
        for (double& v : d) v = -v;
        s_hist.clear();
        y_hist.clear();
        rho_hist.clear();
      }
      double step = 1.0;
      for (int ls = 0; ls < 60; ++ls) {
        Vec trial = x;
        for (int k = 0; k < dim; ++k) trial[k] += step * d[k];
        project_amplitudes(trial, n);
        Vec delta(dim);
        for (int k = 0; k < dim; ++k) delta[k] = trial[k] - x[k];
        const double predicted = dot(g, delta);
        if (predicted < 0.0) {
          const double f_trial = f_value(trial);
          if (f_trial <= f + 1e-4 * predicted) {
            x_new = std::move(trial);
            f_new = f_trial;
            accepted = true;
            break;
          }
        }
        step *= 0.5;
        if (step < 1e-14) break;
      }
    }
    if (!accepted) {
      result.reason = "line search stalled";
      break;
    }

    Vec g_new = f_gradient(x_new);
    Vec s(dim), y(dim);
    for (int k = 0; k < dim; ++k) {
      s[k] = x_new[k] - x[k];
      y[k] = g_new[k] - g[k];
    }
    const double sy = dot(s, y);
    if (sy > 1e-12 * std::sqrt(dot(s, s)) * std::sqrt(dot(y, y))) {
      s_hist.push_back(std::move(s));
      y_hist.push_back(std::move(y));
      rho_hist.push_back(1.0 / sy);
      if (static_cast<int>(s_hist.size()) > memory) {
        s_hist.pop_front();
        y_hist.pop_front();
        rho_hist.pop_front();
      }
    }
    x = std::move(x_new);
    f = f_new;
    g = std::move(g_new);
    result.history.push_back(-f);
  }

  result.iterations = iter;
  result.objective = -f;
  result.controls = unpack_controls(x, cfg);

  std::vector<double> wrapped(n);
  for (int k = 0; k < n; ++k) wrapped[k] = wrap_phase(result.controls.phases[k]);
  result.waveform = Waveform::uniform("optimized-seed" + std::to_string(cfg.seed),
                                      result.controls.amplitudes, wrapped, cfg.dt);
  return result;
}

}  // namespace loopdnp

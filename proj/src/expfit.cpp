#include "loopdnp/expfit.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace loopdnp {

namespace {

enum class Model { buildup, inversion_recovery, decay };

// f(t) = a * g(t/tau) with g chosen per model; fits run in (a, log tau) so
// the time constant stays positive.
double model_value(Model m, double a, double tau, double t) {
  const double e = std::exp(-t / tau);
  switch (m) {
    case Model::buildup:
      return a * (1.0 - e);
    case Model::inversion_recovery:
      return a * (1.0 - 2.0 * e);
    case Model::decay:
      return a * e;
  }
  return 0.0;
}

void model_jacobian(Model m, double a, double tau, double t, double& df_da,
                    double& df_dlogtau) {
  const double e = std::exp(-t / tau);
  const double de_dlogtau = e * (t / tau);  // d exp(-t/tau) / d log(tau)
  switch (m) {
    case Model::buildup:
      df_da = 1.0 - e;
      df_dlogtau = -a * de_dlogtau;
      break;
    case Model::inversion_recovery:
      df_da = 1.0 - 2.0 * e;
      df_dlogtau = -2.0 * a * de_dlogtau;
      break;
    case Model::decay:
      df_da = e;
      df_dlogtau = a * de_dlogtau;
      break;
  }
}

void check_data(const std::vector<double>& times, const std::vector<double>& values) {
  if (times.size() != values.size())
    throw std::invalid_argument("fit: times/values length mismatch");
  if (times.size() < 2) throw std::invalid_argument("fit: need at least 2 points");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (!(times[i] > times[i - 1]))
      throw std::invalid_argument("fit: times must be strictly increasing");
  for (double v : values)
    if (!std::isfinite(v)) throw std::invalid_argument("fit: non-finite value");
}

// Log-linearized slope of y = exp(-t/tau): least squares of log(y) vs t over
// points with usable ratios. Returns 0 on failure.
double loglinear_tau(const std::vector<double>& t, const std::vector<double>& y) {
  double st = 0, sl = 0, stt = 0, stl = 0;
  int n = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!(y[i] > 1e-12)) continue;
    const double l = std::log(y[i]);
    st += t[i];
    sl += l;
    stt += t[i] * t[i];
    stl += t[i] * l;
    ++n;
  }
  if (n < 2) return 0.0;
  const double denom = n * stt - st * st;
  if (denom == 0.0) return 0.0;
  const double slope = (n * stl - st * sl) / denom;
  if (!(slope < 0.0)) return 0.0;
  return -1.0 / slope;
}

ExpFit fit_model(Model m, const std::vector<double>& times,
                 const std::vector<double>& values) {
  check_data(times, values);
  const std::size_t n = times.size();
  const double t_span = times.back() - times.front();

  const auto [vmin, vmax] = std::minmax_element(values.begin(), values.end());
  if (*vmin == *vmax)
    throw std::runtime_error("fit: degenerate data (constant values)");

  // Initial guesses by log-linearization.
  double a = 0.0, tau = 0.0;
  std::vector<double> ratio(n);
  switch (m) {
    case Model::buildup:
    case Model::inversion_recovery: {
      a = values.back();
      if (a == 0.0) {
        for (double v : values)
          if (std::abs(v) > std::abs(a)) a = v;
      }
      if (a == 0.0) throw std::runtime_error("fit: degenerate data (all zero)");
      const double factor = (m == Model::buildup) ? 1.0 : 2.0;
      for (std::size_t i = 0; i < n; ++i) ratio[i] = (1.0 - values[i] / a) / factor;
      tau = loglinear_tau(times, ratio);
      break;
    }
    case Model::decay: {
      a = values.front();
      if (a == 0.0) {
        for (double v : values)
          if (std::abs(v) > std::abs(a)) a = v;
      }
      if (a == 0.0) throw std::runtime_error("fit: degenerate data (all zero)");
      for (std::size_t i = 0; i < n; ++i) ratio[i] = values[i] / a;
      tau = loglinear_tau(times, ratio);
      break;
    }
  }
  if (!(tau > 0.0)) tau = (t_span > 0.0) ? t_span / 3.0 : 1.0;

  double cur_a = a, log_tau = std::log(tau);
  auto sse_of = [&](double pa, double plog) {
    const double ptau = std::exp(plog);
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = values[i] - model_value(m, pa, ptau, times[i]);
      s += r * r;
    }
    return s;
  };
  double sse = sse_of(cur_a, log_tau);

  // Damped Gauss-Newton (Marquardt diagonal scaling), 2x2 normal equations.
  double lambda = 1e-3;
  for (int iter = 0; iter < 300; ++iter) {
    const double cur_tau = std::exp(log_tau);
    double h00 = 0, h01 = 0, h11 = 0, g0 = 0, g1 = 0;
    for (std::size_t i = 0; i < n; ++i) {
      double ja, jl;
      model_jacobian(m, cur_a, cur_tau, times[i], ja, jl);
      const double r = values[i] - model_value(m, cur_a, cur_tau, times[i]);
      h00 += ja * ja;
      h01 += ja * jl;
      h11 += jl * jl;
      g0 += ja * r;
      g1 += jl * r;
    }
    if (h11 == 0.0)
      throw std::runtime_error("fit: degenerate data (time constant unresolved)");

    bool stepped = false;
    for (int inner = 0; inner < 50; ++inner) {
      const double d00 = h00 * (1.0 + lambda);
      const double d11 = h11 * (1.0 + lambda);
      const double det = d00 * d11 - h01 * h01;
      if (det == 0.0) break;
      const double da = (g0 * d11 - g1 * h01) / det;
      const double dl = (g1 * d00 - g0 * h01) / det;
      const double trial_sse = sse_of(cur_a + da, log_tau + dl);
      if (trial_sse <= sse) {
        cur_a += da;
        log_tau += dl;
        const bool tiny = std::abs(da) < 1e-14 * std::max(1.0, std::abs(cur_a)) &&
                          std::abs(dl) < 1e-14;
        sse = trial_sse;
        lambda = std::max(lambda / 3.0, 1e-12);
        stepped = true;
        if (tiny) iter = 300;  // converged
        break;
      }
      lambda *= 5.0;
    }
    if (!stepped) break;
  }

  ExpFit fit;
  fit.amplitude = cur_a;
  fit.time_constant = std::exp(log_tau);
  fit.residual_rms = std::sqrt(sse / static_cast<double>(n));
  if (!std::isfinite(fit.amplitude) || !std::isfinite(fit.time_constant))
    throw std::runtime_error("fit: did not converge");
  return fit;
}

}  // namespace

ExpFit fit_buildup(const std::vector<double>& times, const std::vector<double>& values) {
  return fit_model(Model::buildup, times, values);
}

ExpFit fit_inversion_recovery(const std::vector<double>& times,
                              const std::vector<double>& values) {
  return fit_model(Model::inversion_recovery, times, values);
}

ExpFit fit_decay(const std::vector<double>& times, const std::vector<double>& values) {
  return fit_model(Model::decay, times, values);
}

void read_xy_csv(const std::string& text, std::vector<double>& times,
                 std::vector<double>& values) {
  times.clear();
  values.clear();
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos) continue;
    if (line[start] == '#') continue;
    for (char& ch : line)
      if (ch == ',') ch = ' ';
    std::istringstream fields(line);
    double t, v;
    if (fields >> t >> v) {
      times.push_back(t);
      values.push_back(v);
    } else if (times.empty()) {
      continue;  // header row
    } else {
      throw std::runtime_error("csv: malformed line " + std::to_string(lineno));
    }
  }
  if (times.empty()) throw std::runtime_error("csv: no data rows");
}

}  // namespace loopdnp

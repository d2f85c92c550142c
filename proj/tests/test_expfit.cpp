#include <cmath>

#include "doctest.h"
#include "loopdnp/expfit.hpp"
#include "oracles.hpp"

using namespace loopdnp;
using loopdnp::testing::Rng;

namespace {

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
  return v;
}

}  // namespace

TEST_SUITE("expfit") {

TEST_CASE("buildup recovers exact synthetic parameters") {
  // epsilon_max = 328, T_B = 8.4 s
  const std::vector<double> t = linspace(0.5, 40.0, 25);
  std::vector<double> v(t.size());
  for (std::size_t i = 0; i < t.size(); ++i)
    v[i] = 328.0 * (1.0 - std::exp(-t[i] / 8.4));
  const ExpFit fit = fit_buildup(t, v);
  CHECK(fit.amplitude == doctest::Approx(328.0).epsilon(1e-6));
  CHECK(fit.time_constant == doctest::Approx(8.4).epsilon(1e-6));
  CHECK(fit.residual_rms < 1e-6);
}

TEST_CASE("inversion recovery recovers exact synthetic parameters") {
  // T_1e = 1.7 ms, model value -1 at t = 0
  const std::vector<double> t = linspace(0.0, 8.5e-3, 30);
  std::vector<double> v(t.size());
  for (std::size_t i = 0; i < t.size(); ++i)
    v[i] = 1.0 - 2.0 * std::exp(-t[i] / 1.7e-3);
  CHECK(v[0] == doctest::Approx(-1.0).epsilon(1e-14));
  const ExpFit fit = fit_inversion_recovery(t, v);
  CHECK(fit.amplitude == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(fit.time_constant == doctest::Approx(1.7e-3).epsilon(1e-6));
}

TEST_CASE("decay recovers exact synthetic parameters") {
  // T_1n = 22.4 s
  const std::vector<double> t = linspace(0.0, 110.0, 28);
  std::vector<double> v(t.size());
  for (std::size_t i = 0; i < t.size(); ++i)
    v[i] = 251.0 * std::exp(-t[i] / 22.4);
  const ExpFit fit = fit_decay(t, v);
  CHECK(fit.amplitude == doctest::Approx(251.0).epsilon(1e-6));
  CHECK(fit.time_constant == doctest::Approx(22.4).epsilon(1e-6));
}

TEST_CASE("fits are scale-equivariant") {
  const std::vector<double> t = linspace(0.2, 30.0, 18);
  using Fit = ExpFit (*)(const std::vector<double>&, const std::vector<double>&);
  const Fit fits[] = {&fit_buildup, &fit_inversion_recovery, &fit_decay};
  for (const Fit fit_fn : fits) {
    std::vector<double> v(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
      const double e = std::exp(-t[i] / 6.0);
      const double clean = (fit_fn == &fit_decay) ? 5.0 * e
                           : (fit_fn == &fit_buildup) ? 5.0 * (1.0 - e)
                                                      : 5.0 * (1.0 - 2.0 * e);
      v[i] = clean + 0.01 * std::sin(3.0 * t[i]);
    }
    const ExpFit base = fit_fn(t, v);
    for (double c : {2.0, -3.5, 100.0}) {
      std::vector<double> scaled(v.size());
      for (std::size_t i = 0; i < v.size(); ++i) scaled[i] = c * v[i];
      const ExpFit fit = fit_fn(t, scaled);
      CHECK(fit.amplitude == doctest::Approx(c * base.amplitude).epsilon(1e-9));
      CHECK(fit.time_constant == doctest::Approx(base.time_constant).epsilon(1e-9));
    }
  }
}

TEST_CASE("two-point exact data interpolates exactly") {
  const std::vector<double> t = {1.0, 3.0};
  std::vector<double> v(2);
  for (int i = 0; i < 2; ++i) v[i] = 7.0 * (1.0 - std::exp(-t[i] / 2.5));
  const ExpFit fit = fit_buildup(t, v);
  CHECK(fit.residual_rms < 1e-10);
  CHECK(fit.amplitude == doctest::Approx(7.0).epsilon(1e-6));
  CHECK(fit.time_constant == doctest::Approx(2.5).epsilon(1e-6));
}

TEST_CASE("noisy recovery within tolerance over 100 trials") {
  // 1% multiplicative Gaussian noise, 20 points over [0, 40] s
  Rng rng(2024);
  const std::vector<double> t = linspace(2.0, 40.0, 20);
  int buildup_ok = 0, invrec_ok = 0, decay_ok = 0;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> vb(t.size()), vi(t.size()), vd(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
      vb[i] = 328.0 * (1.0 - std::exp(-t[i] / 8.4)) * (1.0 + rng.gaussian(0.01));
      vi[i] = (1.0 - 2.0 * std::exp(-t[i] / 10.0)) * (1.0 + rng.gaussian(0.01));
      vd[i] = 100.0 * std::exp(-t[i] / 22.4) * (1.0 + rng.gaussian(0.01));
    }
    if (std::abs(fit_buildup(t, vb).time_constant - 8.4) < 0.05 * 8.4) ++buildup_ok;
    if (std::abs(fit_inversion_recovery(t, vi).time_constant - 10.0) < 0.05 * 10.0)
      ++invrec_ok;
    if (std::abs(fit_decay(t, vd).time_constant - 22.4) < 0.05 * 22.4) ++decay_ok;
  }
  CHECK(buildup_ok == 100);
  CHECK(invrec_ok == 100);
  CHECK(decay_ok == 100);
}

TEST_CASE("degenerate data is rejected") {
  const std::vector<double> t = {0.0, 1.0, 2.0, 3.0};
  CHECK_THROWS_AS(fit_decay(t, {0.0, 0.0, 0.0, 0.0}), std::runtime_error);
  CHECK_THROWS_AS(fit_buildup(t, {5.0, 5.0, 5.0, 5.0}), std::runtime_error);
  CHECK_THROWS_AS(fit_buildup({1.0}, {2.0}), std::invalid_argument);
  CHECK_THROWS_AS(fit_buildup({1.0, 0.5, 2.0}, {1.0, 2.0, 3.0}),
                  std::invalid_argument);
}

TEST_CASE("read_xy_csv parses comments, headers, and separators") {
  std::vector<double> t, v;
  read_xy_csv("# comment\nt_s,value\n0.5,1.25\n1.0, 2.5\n\n2.0,3.75\n", t, v);
  REQUIRE(t.size() == 3);
  CHECK(t[1] == 1.0);
  CHECK(v[2] == 3.75);

  CHECK_THROWS_AS(read_xy_csv("# only comments\n", t, v), std::runtime_error);
  CHECK_THROWS_AS(read_xy_csv("t,v\n1.0,2.0\nbroken,row\n", t, v),
                  std::runtime_error);
}

}  // TEST_SUITE

#pragma once

#include <string>
#include <vector>

namespace loopdnp {

// Rotating-frame parameters, all angular frequencies in rad/s. larmor_n is
// signed (negative for 1H in the convention used throughout).
struct SpinSystem {
  double offset_e = 0.0;         // electron MW offset
  double larmor_n = 0.0;         // nuclear Larmor frequency
  double hf_secular = 0.0;       // A, coefficient of Sz*Iz
  double hf_pseudosecular = 0.0; // B, coefficient of Sz*Ix

  bool finite() const;
};

struct Pulse {
  double amplitude = 0.0;  // rad/s, >= 0
  double phase = 0.0;      // rad, stored as given (never silently wrapped)
  double duration = 0.0;   // s, > 0
};

// One modulation period of a piecewise-constant microwave waveform.
class Waveform {
 public:
  Waveform(std::string name, std::vector<Pulse> pulses);

  static Waveform uniform(std::string name, const std::vector<double>& amplitudes,
                          const std::vector<double>& phases, double dt);

  const std::string& name() const { return name_; }
  const std::vector<Pulse>& pulses() const { return pulses_; }
  std::size_t size() const { return pulses_.size(); }

  double period() const { return period_; }            // tau_m
  double modulation_freq() const;                      // omega_m = 2*pi/tau_m
  double dt_uniform() const { return dt_uniform_; }    // 0 if durations differ
  double max_amplitude() const;

  Waveform scaled(double scale) const;                 // amplitudes times scale
  Waveform reversed_negated() const;                   // time reverse, MW field negated

 private:
  std::string name_;
  std::vector<Pulse> pulses_;
  double period_ = 0.0;
  double dt_uniform_ = 0.0;
};

}  // namespace loopdnp

#include "loopdnp/spin_system.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "loopdnp/constants.hpp"

namespace loopdnp {

bool SpinSystem::finite() const {
  return std::isfinite(offset_e) && std::isfinite(larmor_n) &&
         std::isfinite(hf_secular) && std::isfinite(hf_pseudosecular);
}

Waveform::Waveform(std::string name, std::vector<Pulse> pulses)
    : name_(std::move(name)), pulses_(std::move(pulses)) {
  if (pulses_.empty()) throw std::invalid_argument("waveform: no pulses");
  for (std::size_t i = 0; i < pulses_.size(); ++i) {
    const Pulse& p = pulses_[i];
    if (!std::isfinite(p.amplitude) || !std::isfinite(p.phase) ||
        !std::isfinite(p.duration))
      throw std::invalid_argument("waveform: non-finite pulse " + std::to_string(i + 1));
    if (p.amplitude < 0.0)
      throw std::invalid_argument("waveform: negative amplitude at pulse " +
                                  std::to_string(i + 1));
    if (p.duration <= 0.0)
      throw std::invalid_argument("waveform: non-positive duration at pulse " +
                                  std::to_string(i + 1));
    period_ += p.duration;
  }
  dt_uniform_ = pulses_.front().duration;
  for (const Pulse& p : pulses_)
    if (p.duration != dt_uniform_) {
      dt_uniform_ = 0.0;
      break;
    }
}

Waveform Waveform::uniform(std::string name, const std::vector<double>& amplitudes,
                           const std::vector<double>& phases, double dt) {
  if (amplitudes.size() != phases.size())
    throw std::invalid_argument("waveform: amplitude/phase length mismatch");
  std::vector<Pulse> pulses(amplitudes.size());
  for (std::size_t i = 0; i < amplitudes.size(); ++i)
    pulses[i] = Pulse{amplitudes[i], phases[i], dt};
  return Waveform(std::move(name), std::move(pulses));
}

double Waveform::modulation_freq() const { return two_pi / period_; }

double Waveform::max_amplitude() const {
  double m = 0.0;
  for (const Pulse& p : pulses_) m = std::max(m, p.amplitude);
  return m;
}

Waveform Waveform::scaled(double scale) const {
  if (!(scale >= 0.0))
    throw std::invalid_argument("waveform: scale must be non-negative");
  std::vector<Pulse> pulses = pulses_;
  for (Pulse& p : pulses) p.amplitude *= scale;
  return Waveform(name_, std::move(pulses));
}

Waveform Waveform::reversed_negated() const {
  std::vector<Pulse> pulses(pulses_.rbegin(), pulses_.rend());
  for (Pulse& p : pulses) p.phase += two_pi / 2.0;
  return Waveform(name_ + "-reversed", std::move(pulses));
}

}  // namespace loopdnp

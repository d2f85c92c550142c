#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "loopdnp/spin_system.hpp"

namespace loopdnp {

// Textual waveform file. Numeric fields are kept as decimal text so that
// parse -> write -> parse is the identity on every field.
struct WaveformFile {
  int format_version = 1;
  std::string name;
  std::string dt_ns;                                        // decimal text
  std::vector<std::pair<std::string, std::string>> metadata; // ordered key=value
  struct Row {
    int index = 0;
    std::string amp_mhz;    // decimal text, >= 0
    std::string phase_rad;  // decimal text
  };
  std::vector<Row> rows;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, int line);
  int line() const { return line_; }

 private:
  int line_;
};

WaveformFile parse_waveform_file(const std::string& text);
std::string write_waveform_file(const WaveformFile& file);

// MHz -> rad/s conversion; uniform dt from the header.
Waveform to_waveform(const WaveformFile& file);
Waveform parse_waveform(const std::string& text);

// Canonical 3-decimal formatting, phases wrapped to [-pi, pi).
WaveformFile to_waveform_file(const Waveform& waveform,
                              const std::vector<std::pair<std::string, std::string>>&
                                  metadata = {});

struct ValidationReport {
  std::string name;
  int n_pulses = 0;
  double tau_m = 0.0;          // s
  double modulation_freq = 0.0;  // rad/s
  double max_amplitude = 0.0;  // rad/s
  double amp_cap = 0.0;        // rad/s
  bool cap_ok = true;
  bool phases_wrapped = true;  // all phases already in [-pi, pi)
  std::vector<std::string> violations;

  std::string to_text() const;
};

ValidationReport validate_waveform(const Waveform& waveform, double max_amp);

// Bundled LOOP corpus, embedded as the canonical file text.
struct CorpusEntry {
  std::string name;
  std::string text;
};
const std::vector<CorpusEntry>& corpus();
const CorpusEntry* corpus_find(const std::string& name);
Waveform corpus_waveform(const std::string& name);  // throws on unknown name

// "corpus:NAME" or a filesystem path.
Waveform load_waveform(const std::string& source);

}  // namespace loopdnp

#include "loopdnp/waveform_io.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "loopdnp/constants.hpp"

namespace loopdnp {

namespace {

constexpr double pi = two_pi / 2.0;

std::string fmt3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

double parse_number(const std::string& text, int line, const char* what) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ParseError(std::string("bad ") + what + " '" + text + "'", line);
  }
  if (used != text.size() || !std::isfinite(value))
    throw ParseError(std::string("bad ") + what + " '" + text + "'", line);
  return value;
}

std::string trim(const std::string& s) {
  const std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

ParseError::ParseError(const std::string& message, int line)
    : std::runtime_error("line " + std::to_string(line) + ": " + message),
      line_(line) {}

WaveformFile parse_waveform_file(const std::string& text) {
  WaveformFile file;
  bool saw_version = false, saw_name = false, saw_dt = false, saw_header = false;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  int expected_index = 1;

  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty()) continue;

    if (t[0] == '#') {
      const std::string body = trim(t.substr(1));
      const std::size_t eq = body.find('=');
      if (eq == std::string::npos)
        throw ParseError("expected '# key=value' comment", lineno);
      const std::string key = trim(body.substr(0, eq));
      const std::string value = trim(body.substr(eq + 1));
      if (key == "format_version") {
        file.format_version =
            static_cast<int>(parse_number(value, lineno, "format_version"));
        saw_version = true;
      } else if (key == "name") {
        if (value.empty()) throw ParseError("empty name", lineno);
        file.name = value;
        saw_name = true;
      } else if (key == "dt_ns") {
        if (parse_number(value, lineno, "dt_ns") <= 0.0)
          throw ParseError("dt_ns must be > 0", lineno);
        file.dt_ns = value;
        saw_dt = true;
      } else {
        file.metadata.emplace_back(key, value);
      }
      continue;
    }

    if (!saw_header) {
      if (t != "index,amp_MHz,phase_rad")
        throw ParseError("expected column header 'index,amp_MHz,phase_rad'", lineno);
      saw_header = true;
      continue;
    }

    std::string fields[3];
    std::size_t pos = 0;
    for (int f = 0; f < 3; ++f) {
      const std::size_t comma = t.find(',', pos);
      if (f < 2 && comma == std::string::npos)
        throw ParseError("expected 3 comma-separated columns", lineno);
      fields[f] = trim(f < 2 ? t.substr(pos, comma - pos) : t.substr(pos));
      pos = comma + 1;
    }
    if (fields[2].find(',') != std::string::npos)
      throw ParseError("expected 3 comma-separated columns", lineno);

    WaveformFile::Row row;
    const double index_value = parse_number(fields[0], lineno, "index");
    if (index_value != std::floor(index_value))
      throw ParseError("bad index '" + fields[0] + "'", lineno);
    row.index = static_cast<int>(index_value);
    if (row.index != expected_index)
      throw ParseError("non-contiguous index " + fields[0] + " (expected " +
                           std::to_string(expected_index) + ")",
                       lineno);
    if (parse_number(fields[1], lineno, "amp_MHz") < 0.0)
      throw ParseError("negative amplitude", lineno);
    parse_number(fields[2], lineno, "phase_rad");
    row.amp_mhz = fields[1];
    row.phase_rad = fields[2];
    file.rows.push_back(std::move(row));
    ++expected_index;
  }

  if (!saw_version) throw ParseError("missing '# format_version=' header", lineno);
  if (!saw_name) throw ParseError("missing '# name=' header", lineno);
  if (!saw_dt) throw ParseError("missing '# dt_ns=' header", lineno);
  if (!saw_header)
    throw ParseError("missing column header 'index,amp_MHz,phase_rad'", lineno);
  if (file.rows.empty()) throw ParseError("empty pulse list", lineno);
  return file;
}

std::string write_waveform_file(const WaveformFile& file) {
  std::string out;
  out += "# format_version=" + std::to_string(file.format_version) + "\n";
  out += "# name=" + file.name + "\n";
  out += "# dt_ns=" + file.dt_ns + "\n";
  for (const auto& [key, value] : file.metadata)
    out += "# " + key + "=" + value + "\n";
  out += "index,amp_MHz,phase_rad\n";
  for (const WaveformFile::Row& row : file.rows)
    out += std::to_string(row.index) + "," + row.amp_mhz + "," + row.phase_rad + "\n";
  return out;
}

Waveform to_waveform(const WaveformFile& file) {
  const double dt = ns_to_s(std::stod(file.dt_ns));
  std::vector<double> amps(file.rows.size()), phases(file.rows.size());
  for (std::size_t i = 0; i < file.rows.size(); ++i) {
    amps[i] = mhz_to_rad(std::stod(file.rows[i].amp_mhz));
    phases[i] = std::stod(file.rows[i].phase_rad);
  }
  return Waveform::uniform(file.name, amps, phases, dt);
}

Waveform parse_waveform(const std::string& text) {
  return to_waveform(parse_waveform_file(text));
}

WaveformFile to_waveform_file(
    const Waveform& waveform,
    const std::vector<std::pair<std::string, std::string>>& metadata) {
  if (waveform.dt_uniform() <= 0.0)
    throw std::invalid_argument("waveform file format requires uniform durations");
  WaveformFile file;
  file.name = waveform.name();
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", s_to_ns(waveform.dt_uniform()));
  file.dt_ns = buf;
  file.metadata = metadata;
  file.rows.reserve(waveform.size());
  int index = 1;
  for (const Pulse& p : waveform.pulses()) {
    WaveformFile::Row row;
    row.index = index++;
    row.amp_mhz = fmt3(rad_to_mhz(p.amplitude));
    double phase = p.phase - two_pi * std::floor((p.phase + pi) / two_pi);
    if (phase == pi) phase = -pi;  // keep [-pi, pi)
    row.phase_rad = fmt3(phase);
    file.rows.push_back(std::move(row));
  }
  return file;
}

ValidationReport validate_waveform(const Waveform& waveform, double max_amp) {
  ValidationReport report;
  report.name = waveform.name();
  report.n_pulses = static_cast<int>(waveform.size());
  report.tau_m = waveform.period();
  report.modulation_freq = waveform.modulation_freq();
  report.max_amplitude = waveform.max_amplitude();
  report.amp_cap = max_amp;

  int index = 1;
  for (const Pulse& p : waveform.pulses()) {
    if (p.amplitude > max_amp) {
      report.cap_ok = false;
      report.violations.push_back("pulse " + std::to_string(index) + ": amplitude " +
                                  fmt3(rad_to_mhz(p.amplitude)) + " MHz exceeds cap " +
                                  fmt3(rad_to_mhz(max_amp)) + " MHz");
    }
    if (!(p.phase >= -pi && p.phase < pi)) {
      report.phases_wrapped = false;
      report.violations.push_back("pulse " + std::to_string(index) + ": phase " +
                                  fmt3(p.phase) + " rad outside [-pi, pi)");
    }
    ++index;
  }
  return report;
}

std::string ValidationReport::to_text() const {
  std::string out;
  out += "waveform:        " + name + "\n";
  out += "pulses:          " + std::to_string(n_pulses) + "\n";
  out += "tau_m_ns:        " + fmt3(s_to_ns(tau_m)) + "\n";
  out += "f_m_MHz:         " + fmt3(rad_to_mhz(modulation_freq)) + "\n";
  out += "max_amp_MHz:     " + fmt3(rad_to_mhz(max_amplitude)) + "\n";
  out += "amp_cap_MHz:     " + fmt3(rad_to_mhz(amp_cap)) + "\n";
  out += std::string("cap_ok:          ") + (cap_ok ? "yes" : "no") + "\n";
  out += std::string("phases_wrapped:  ") + (phases_wrapped ? "yes" : "no") + "\n";
  if (violations.empty()) {
    out += "violations:      none\n";
  } else {
    out += "violations:\n";
    for (const std::string& v : violations) out += "  - " + v + "\n";
  }
  return out;
}

namespace {

struct RawSequence {
  const char* name;
  std::vector<std::array<double, 2>> rows;  // {amp_MHz, phase_rad}
};

const std::vector<RawSequence>& raw_corpus() {
  static const std::vector<RawSequence> data = {
      {"LOOP-1",
       {{30.594, -2.026}, {23.002, 0.263},  {32.000, 0.484},  {32.000, -0.661},
        {28.827, -0.947}, {24.079, 0.759},  {27.672, 1.304},  {23.291, 1.330},
        {25.573, 0.515},  {32.000, -0.906}, {31.336, -0.633}, {26.973, 0.656},
        {14.547, 1.040},  {30.535, -2.507}, {32.000, -2.480}, {22.776, -2.935},
        {23.008, 3.008},  {22.514, -2.089}, {32.000, -0.899}, {32.000, -0.884},
        {31.505, -2.497}, {26.951, 2.878},  {26.704, -2.424}, {28.793, -2.604}}},
      {"LOOP-2",
       {{32.000, 0.334},  {32.000, -0.227}, {32.000, -0.708}, {31.999, -2.443},
        {32.000, -2.794}, {31.502, 0.161},  {29.055, -0.885}, {32.000, -0.037},
        {32.000, 0.654},  {25.720, -0.359}, {32.000, -1.698}, {32.000, -2.084},
        {20.204, 1.313},  {28.519, 1.720},  {32.000, 2.589},  {32.000, 3.083},
        {26.982, 2.529},  {32.000, 2.119},  {32.000, 1.242},  {31.919, -0.841},
        {27.472, 0.362},  {32.000, 2.053},  {32.000, 2.469},  {32.000, 2.646},
        {29.841, 2.509},  {29.205, 0.988},  {32.000, 0.386},  {30.076, -2.418},
        {32.000, -2.003}, {31.994, -0.872}}},
      {"LOOP-3",
       {{32.000, 2.346},  {28.366, 1.646},  {15.323, 1.019},  {32.000, 2.503},
        {31.856, 2.562},  {32.000, -0.099}, {32.000, -1.023}, {29.388, -1.554},
        {26.190, -1.891}, {32.000, -1.088}, {28.778, -0.114}, {32.000, 0.511},
        {23.773, 0.064},  {20.765, -1.964}, {32.000, -1.919}, {31.959, -0.963},
        {32.000, -1.079}, {32.000, -1.890}, {23.824, 2.897},  {16.521, 1.218},
        {29.365, 1.297},  {32.000, 2.182},  {32.000, -2.615}, {32.000, -2.309}}},
      {"LOOP-4",
       {{32.000, -1.635}, {31.853, -0.505}, {32.000, 1.526},  {32.000, 1.999},
        {32.000, 2.477},  {32.000, 1.959},  {25.728, 0.546},  {20.017, -0.491},
        {23.847, -0.885}, {32.000, 0.254},  {32.000, 1.078},  {32.000, 0.682},
        {29.382, -0.324}, {23.126, -0.627}, {24.934, 1.337},  {31.959, 2.406},
        {31.984, 2.568},  {31.975, -2.833}, {29.889, 1.568},  {31.977, 1.030},
        {29.457, -0.499}, {31.994, 0.389},  {31.532, 1.464},  {29.007, 1.449},
        {31.997, 0.818}}},
      {"LOOP-5",
       {{32.000, -0.042}, {32.000, -0.190}, {31.997, -0.786}, {32.000, -2.792},
        {32.000, -2.289}, {31.909, 1.215},  {31.957, -1.042}, {32.000, -0.368},
        {32.000, 0.212},  {29.161, 0.626},  {32.000, -1.666}, {32.000, -2.077},
        {22.890, 2.537},  {32.000, 1.223},  {32.000, 2.421},  {32.000, 2.568},
        {30.264, 2.980},  {31.988, 1.556},  {31.993, 1.562},  {31.964, -0.556},
        {31.171, -0.284}, {32.000, 2.153},  {32.000, 2.303},  {32.000, 2.528},
        {32.000, 2.723},  {32.000, 0.654},  {32.000, 0.169},  {31.956, -2.316},
        {31.996, -2.415}, {31.998, -0.863}}}};
  return data;
}

std::vector<CorpusEntry> build_corpus() {
  std::vector<CorpusEntry> entries;
  for (const RawSequence& seq : raw_corpus()) {
    std::vector<double> amps, phases;
    for (const auto& row : seq.rows) {
      amps.push_back(mhz_to_rad(row[0]));
      phases.push_back(row[1]);
    }
    const Waveform w = Waveform::uniform(seq.name, amps, phases, 5e-9);
    const std::vector<std::pair<std::string, std::string>> metadata = {
        {"modulation_MHz", fmt3(rad_to_mhz(w.modulation_freq()))},
        {"max_amp_MHz", fmt3(rad_to_mhz(w.max_amplitude()))}};
    entries.push_back({seq.name, write_waveform_file(to_waveform_file(w, metadata))});
  }
  return entries;
}

}  // namespace

const std::vector<CorpusEntry>& corpus() {
  static const std::vector<CorpusEntry> entries = build_corpus();
  return entries;
}

const CorpusEntry* corpus_find(const std::string& name) {
  for (const CorpusEntry& entry : corpus())
    if (entry.name == name) return &entry;
  return nullptr;
}

Waveform corpus_waveform(const std::string& name) {
  const CorpusEntry* entry = corpus_find(name);
  if (!entry) throw std::runtime_error("unknown corpus waveform '" + name + "'");
  return parse_waveform(entry->text);
}

Waveform load_waveform(const std::string& source) {
  constexpr const char* scheme = "corpus:";
  if (source.rfind(scheme, 0) == 0)
    return corpus_waveform(source.substr(std::string(scheme).size()));
  std::ifstream in(source, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open waveform file '" + source + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_waveform(buffer.str());
}

}  // namespace loopdnp

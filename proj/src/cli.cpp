#include "loopdnp/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"

#include "loopdnp/constants.hpp"
#include "loopdnp/effective.hpp"
#include "loopdnp/ensemble.hpp"
#include "loopdnp/expfit.hpp"
#include "loopdnp/hamiltonian.hpp"
#include "loopdnp/optimizer.hpp"
#include "loopdnp/propagation.hpp"
#include "loopdnp/scans.hpp"
#include "loopdnp/waveform_io.hpp"

namespace loopdnp {

namespace {

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// "start:stop:step" in MHz, inclusive of both ends.
std::vector<double> parse_range_mhz(const std::string& text) {
  double lo, hi, step;
  char extra;
  std::istringstream in(text);
  char c1, c2;
  if (!(in >> lo >> c1 >> hi >> c2 >> step) || c1 != ':' || c2 != ':' || (in >> extra))
    throw std::runtime_error("bad range '" + text + "' (expected start:stop:step)");
  if (!(step > 0.0) || hi < lo)
    throw std::runtime_error("bad range '" + text + "' (need stop >= start, step > 0)");
  std::vector<double> values;
  for (int i = 0;; ++i) {
    const double v = lo + i * step;
    if (v > hi + 1e-9 * step) break;
    values.push_back(mhz_to_rad(v));
  }
  return values;
}

std::pair<double, double> parse_band_mhz(const std::string& text) {
  double lo, hi;
  char colon, extra;
  std::istringstream in(text);
  if (!(in >> lo >> colon >> hi) || colon != ':' || (in >> extra) || hi < lo)
    throw std::runtime_error("bad band '" + text + "' (expected min:max)");
  return {mhz_to_rad(lo), mhz_to_rad(hi)};
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write to '" + path + "'");
  out << content;
}

std::string read_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

struct Options {
  std::string waveform;
  std::string offsets = "-60:60:1";
  std::string scales = "0.5:1.2:0.01";
  std::string band = "-30:30";
  std::string nrep = "auto";
  std::string out;
  std::string report;
  std::string json;
  std::string model;
  std::string input;
  std::string exp_name;
  std::string exp_dir = ".";
  double offset_mhz = 0.0;
  double scale = 1.0;
  double larmor_mhz = default_larmor_mhz;
  double a_mhz = -0.40;
  double b_mhz = 1.00;
  double t_mhz = 0.8676;
  double max_amp_mhz = 32.0;
  double dt_ns = 5.0;
  double grad_tol = 1e-7;
  int nmax = 20;
  int grid_n = 64;
  int pulses = 24;
  int n_rep = 7;
  int max_iters = 500;
  int seeds = 1;
  std::uint64_t seed = 1;
  bool use_ensemble = false;
  bool no_ensemble = false;
  bool per_pulse = false;
  bool export_all = false;
};

int resolve_nrep(const Options& opt, const Waveform& w) {
  if (opt.nrep == "auto") {
    const auto [lo, hi] = parse_band_mhz(opt.band);
    const PowderGrid grid = make_powder_grid(opt.grid_n);
    return optimal_contact(w, mhz_to_rad(opt.t_mhz), grid, lo, hi, opt.nmax,
                           mhz_to_rad(opt.larmor_mhz))
        .n_rep;
  }
  const int n = std::atoi(opt.nrep.c_str());
  if (n < 1) throw std::runtime_error("bad --nrep '" + opt.nrep + "'");
  return n;
}

int run_simulate(const Options& opt) {
  const Waveform w = load_waveform(opt.waveform);
  const SpinSystem sys{mhz_to_rad(opt.offset_mhz), mhz_to_rad(opt.larmor_mhz),
                       mhz_to_rad(opt.a_mhz), mhz_to_rad(opt.b_mhz)};
  const Waveform scaled = w.scaled(opt.scale);

  std::string csv;
  csv += "# waveform=" + w.name() + "\n";
  csv += "# offset_MHz=" + fmt("%.6g", opt.offset_mhz) + "\n";
  csv += "# scale=" + fmt("%.6g", opt.scale) + "\n";
  csv += "# larmor_MHz=" + fmt("%.6g", opt.larmor_mhz) + "\n";
  csv += "# A_MHz=" + fmt("%.6g", opt.a_mhz) + "\n";
  csv += "# B_MHz=" + fmt("%.6g", opt.b_mhz) + "\n";
  csv += "t_s,iz\n";
  if (opt.per_pulse) {
    // Sub-period readout after every pulse.
    Matrix4c u = Matrix4c::Identity();
    double t = 0.0;
    for (int k = 0; k < opt.nmax; ++k)
      for (const Pulse& p : scaled.pulses()) {
        u = pulse_propagator(build_hamiltonian(sys, p), p.duration).matrix() * u;
        t += p.duration;
        csv += fmt("%.9e", t) + "," + fmt("%.9f", fidelity_iz(Unitary4(u))) + "\n";
      }
  } else {
    const TransferTrace trace = transfer_trace(scaled, sys, opt.nmax);
    for (std::size_t i = 0; i < trace.times.size(); ++i)
      csv += fmt("%.9e", trace.times[i]) + "," + fmt("%.9f", trace.values[i]) + "\n";
  }
  write_output(opt.out, csv);
  return 0;
}

int run_trace(const Options& opt) {
  const Waveform w = load_waveform(opt.waveform);
  const std::vector<double> offsets = parse_range_mhz(opt.offsets);
  const PowderGrid grid = make_powder_grid(opt.grid_n);
  const int n_rep = resolve_nrep(opt, w);
  std::optional<InhomogeneityEnsemble> ens;
  if (opt.use_ensemble) ens = published_ensemble();
  TransferProfile profile = scan_2d(w, offsets, {1.0}, mhz_to_rad(opt.t_mhz), grid,
                                    ens, n_rep, mhz_to_rad(opt.larmor_mhz));
  write_output(opt.out, profile_to_csv(profile));
  return 0;
}

int run_scan(const Options& opt) {
  const Waveform w = load_waveform(opt.waveform);
  const std::vector<double> offsets = parse_range_mhz(opt.offsets);

  std::vector<double> scales;
  {
    double lo, hi, step;
    char c1, c2, extra;
    std::istringstream in(opt.scales);
    if (!(in >> lo >> c1 >> hi >> c2 >> step) || c1 != ':' || c2 != ':' ||
        (in >> extra) || !(step > 0.0) || hi < lo)
      throw std::runtime_error("bad --scales '" + opt.scales + "'");
    for (int i = 0;; ++i) {
      const double v = lo + i * step;
      if (v > hi + 1e-9 * step) break;
      scales.push_back(v);
    }
  }

  const PowderGrid grid = make_powder_grid(opt.grid_n);
  const int n_rep = resolve_nrep(opt, w);
  std::optional<InhomogeneityEnsemble> ens;
  if (opt.use_ensemble) ens = published_ensemble();
  TransferProfile profile = scan_2d(w, offsets, scales, mhz_to_rad(opt.t_mhz), grid,
                                    ens, n_rep, mhz_to_rad(opt.larmor_mhz));
  write_output(opt.out, profile_to_csv(profile));
  return 0;
}

int run_contact(const Options& opt) {
  const Waveform w = load_waveform(opt.waveform);
  const auto [lo, hi] = parse_band_mhz(opt.band);
  const PowderGrid grid = make_powder_grid(opt.grid_n);
  const ContactChoice choice =
      optimal_contact(w, mhz_to_rad(opt.t_mhz), grid, lo, hi, opt.nmax,
                      mhz_to_rad(opt.larmor_mhz));
  std::string out;
  out += "waveform:      " + w.name() + "\n";
  out += "n_rep:         " + std::to_string(choice.n_rep) + "\n";
  out += "t_contact_ns:  " + fmt("%.3f", s_to_ns(choice.t_contact)) + "\n";
  write_output(opt.out, out);
  return 0;
}

int run_effective(const Options& opt) {
  const Waveform w = load_waveform(opt.waveform);
  const double omega_0I = mhz_to_rad(opt.larmor_mhz);
  const double omega_m = w.modulation_freq();

  const EffectiveField field =
      electron_effective_field(w, mhz_to_rad(opt.offset_mhz), opt.scale);
  const ResonanceReport res = resonance_match(omega_0I, omega_m, field.magnitude);

  const SpinSystem sys{mhz_to_rad(opt.offset_mhz), omega_0I, mhz_to_rad(opt.a_mhz),
                       mhz_to_rad(opt.b_mhz)};
  const Unitary4 period = sequence_propagator(w.scaled(opt.scale), sys);
  const EffectiveHamiltonian h = effective_hamiltonian(period, w.period());
  const auto [zq, dq] = zq_dq_projection(h);

  std::string out;
  out += "waveform:           " + w.name() + "\n";
  out += "pulses:             " + std::to_string(w.size()) + "\n";
  out += "tau_m_ns:           " + fmt("%.3f", s_to_ns(w.period())) + "\n";
  out += "f_m_MHz:            " + fmt("%.3f", rad_to_mhz(omega_m)) + "\n";
  out += "offset_MHz:         " + fmt("%.3f", opt.offset_mhz) + "\n";
  out += "scale:              " + fmt("%.4f", opt.scale) + "\n";
  out += "electron effective field:\n";
  out += "  w_eff_MHz:        " + fmt("%.6f", rad_to_mhz(field.magnitude)) + "\n";
  out += "  axis:             (" + fmt("%.6f", field.axis.x()) + ", " +
         fmt("%.6f", field.axis.y()) + ", " + fmt("%.6f", field.axis.z()) + ")\n";
  out += std::string("  ambiguous:        ") + (field.ambiguous ? "yes" : "no") + "\n";
  out += "resonance (larmor_MHz=" + fmt("%.3f", opt.larmor_mhz) + "):\n";
  out += "  k_I:              " + std::to_string(res.k) + "\n";
  out += "  required_MHz:     " + fmt("%.6f", rad_to_mhz(res.omega_eff_required)) + "\n";
  out += "  mismatch_MHz:     " + fmt("%.6f", rad_to_mhz(res.mismatch)) + "\n";
  out += "two-spin effective Hamiltonian (A_MHz=" + fmt("%.3f", opt.a_mhz) +
         ", B_MHz=" + fmt("%.3f", opt.b_mhz) + "), coefficients in MHz:\n";
  const auto& labels = product_basis_labels();
  for (int k = 0; k < n_product_ops; ++k)
    out += "  " + labels[k] + std::string(8 - labels[k].size(), ' ') +
           fmt("%+.6f", rad_to_mhz(h.coeffs[k])) + "\n";
  out += "zq_amp_MHz:         " + fmt("%.6f", rad_to_mhz(zq)) + "\n";
  out += "dq_amp_MHz:         " + fmt("%.6f", rad_to_mhz(dq)) + "\n";
  out += std::string("branch_warning:     ") + (h.branch_warning ? "yes" : "no") + "\n";
  write_output(opt.out, out);

  if (!opt.json.empty()) {
    nlohmann::json j;
    j["waveform"] = w.name();
    j["pulses"] = w.size();
    j["tau_m_ns"] = s_to_ns(w.period());
    j["f_m_MHz"] = rad_to_mhz(omega_m);
    j["offset_MHz"] = opt.offset_mhz;
    j["scale"] = opt.scale;
    j["w_eff_MHz"] = rad_to_mhz(field.magnitude);
    j["axis"] = {field.axis.x(), field.axis.y(), field.axis.z()};
    j["ambiguous"] = field.ambiguous;
    j["k_I"] = res.k;
    j["required_MHz"] = rad_to_mhz(res.omega_eff_required);
    j["mismatch_MHz"] = rad_to_mhz(res.mismatch);
    nlohmann::json coeffs;
    for (int k = 0; k < n_product_ops; ++k)
      coeffs[labels[k]] = rad_to_mhz(h.coeffs[k]);
    j["coefficients_MHz"] = coeffs;
    j["zq_amp_MHz"] = rad_to_mhz(zq);
    j["dq_amp_MHz"] = rad_to_mhz(dq);
    j["branch_warning"] = h.branch_warning;
    write_output(opt.json, j.dump(2) + "\n");
  }
  return 0;
}

int run_optimize(const Options& opt) {
  OptimizationConfig cfg;
  cfg.n_pulses = opt.pulses;
  cfg.dt = ns_to_s(opt.dt_ns);
  cfg.max_amp = mhz_to_rad(opt.max_amp_mhz);
  cfg.offsets = parse_range_mhz(opt.offsets);
  cfg.hf_secular = mhz_to_rad(opt.a_mhz);
  cfg.hf_pseudosecular = mhz_to_rad(opt.b_mhz);
  cfg.larmor_n = mhz_to_rad(opt.larmor_mhz);
  cfg.ensemble = opt.no_ensemble ? InhomogeneityEnsemble::single() : published_ensemble();
  cfg.n_rep = opt.n_rep;
  cfg.max_iters = opt.max_iters;
  cfg.grad_tol = opt.grad_tol;

  if (opt.seeds < 1) throw std::runtime_error("--seeds must be >= 1");

  std::optional<OptimizeResult> best;
  std::uint64_t best_seed = 0;
  nlohmann::json runs = nlohmann::json::array();
  std::string summary;
  for (int s = 0; s < opt.seeds; ++s) {
    cfg.seed = opt.seed + static_cast<std::uint64_t>(s);
    OptimizeResult result = optimize(cfg);
    summary += "seed " + std::to_string(cfg.seed) + ": objective " +
               fmt("%.6f", result.objective) + " after " +
               std::to_string(result.iterations) + " iterations (" + result.reason +
               ")\n";
    runs.push_back({{"seed", cfg.seed},
                    {"objective", result.objective},
                    {"iterations", result.iterations},
                    {"converged", result.converged},
                    {"reason", result.reason}});
    if (!best || result.objective > best->objective) {
      best = std::move(result);
      best_seed = cfg.seed;
    }
  }
  summary += "best: seed " + std::to_string(best_seed) + " objective " +
             fmt("%.6f", best->objective) + "\n";
  std::cout << summary;

  if (!opt.out.empty()) {
    const std::vector<std::pair<std::string, std::string>> metadata = {
        {"objective", fmt("%.6f", best->objective)},
        {"seed", std::to_string(best_seed)},
        {"max_amp_MHz", fmt("%.3f", opt.max_amp_mhz)}};
    write_output(opt.out,
                 write_waveform_file(to_waveform_file(best->waveform, metadata)));
  }
  if (!opt.report.empty()) {
    nlohmann::json j;
    j["runs"] = runs;
    j["best_seed"] = best_seed;
    j["best_objective"] = best->objective;
    j["n_pulses"] = cfg.n_pulses;
    j["n_rep"] = cfg.n_rep;
    j["dt_ns"] = opt.dt_ns;
    j["max_amp_MHz"] = opt.max_amp_mhz;
    write_output(opt.report, j.dump(2) + "\n");
  }
  return 0;
}

int run_fit(const Options& opt) {
  std::vector<double> times, values;
  read_xy_csv(read_input(opt.input), times, values);
  ExpFit fit;
  if (opt.model == "buildup")
    fit = fit_buildup(times, values);
  else if (opt.model == "invrec")
    fit = fit_inversion_recovery(times, values);
  else if (opt.model == "decay")
    fit = fit_decay(times, values);
  else
    throw std::runtime_error("unknown model '" + opt.model +
                             "' (expected buildup|invrec|decay)");

  std::string out;
  out += "model:            " + opt.model + "\n";
  out += "points:           " + std::to_string(times.size()) + "\n";
  out += "amplitude:        " + fmt("%.6f", fit.amplitude) + "\n";
  out += "time_constant_s:  " + fmt("%.6f", fit.time_constant) + "\n";
  out += "residual_rms:     " + fmt("%.6e", fit.residual_rms) + "\n";
  write_output(opt.out, out);

  if (!opt.json.empty()) {
    nlohmann::json j;
    j["model"] = opt.model;
    j["amplitude"] = fit.amplitude;
    j["time_constant_s"] = fit.time_constant;
    j["residual_rms"] = fit.residual_rms;
    write_output(opt.json, j.dump(2) + "\n");
  }
  return 0;
}

int run_validate(const Options& opt) {
  const Waveform w = load_waveform(opt.waveform);
  const ValidationReport report = validate_waveform(w, mhz_to_rad(opt.max_amp_mhz));
  write_output(opt.out, report.to_text());
  return 0;
}

int run_corpus(const Options& opt) {
  if (opt.export_all) {
    for (const CorpusEntry& entry : corpus()) {
      const std::string path = opt.exp_dir + "/" + entry.name + ".csv";
      write_output(path, entry.text);
      std::cout << "wrote " << path << "\n";
    }
    return 0;
  }
  if (!opt.exp_name.empty()) {
    const CorpusEntry* entry = corpus_find(opt.exp_name);
    if (!entry) throw std::runtime_error("unknown corpus waveform '" + opt.exp_name + "'");
    write_output(opt.out, entry->text);
    return 0;
  }
  std::string out = "name    pulses  tau_m_ns  f_m_MHz  max_amp_MHz\n";
  for (const CorpusEntry& entry : corpus()) {
    const Waveform w = parse_waveform(entry.text);
    out += w.name() + "  " + std::to_string(w.size()) + "      " +
           fmt("%.3f", s_to_ns(w.period())) + "   " +
           fmt("%.3f", rad_to_mhz(w.modulation_freq())) + "    " +
           fmt("%.3f", rad_to_mhz(w.max_amplitude())) + "\n";
  }
  write_output(opt.out, out);
  return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"Simulation, analysis, and optimal-control synthesis of periodic "
               "longitudinal DNP pulse sequences"};
  app.require_subcommand(1);
  Options opt;

  auto add_waveform = [&](CLI::App* sub) {
    sub->add_option("--waveform", opt.waveform,
                    "waveform source: corpus:NAME or a file path")
        ->required();
  };
  auto add_system = [&](CLI::App* sub) {
    sub->add_option("--larmor", opt.larmor_mhz, "nuclear Larmor frequency / MHz");
    sub->add_option("--A", opt.a_mhz, "secular hyperfine coupling / MHz");
    sub->add_option("--B", opt.b_mhz, "pseudo-secular hyperfine coupling / MHz");
  };

  CLI::App* simulate = app.add_subcommand(
      "simulate", "single-crystallite stroboscopic transfer trace");
  add_waveform(simulate);
  add_system(simulate);
  simulate->add_option("--offset", opt.offset_mhz, "electron offset / MHz");
  simulate->add_option("--scale", opt.scale, "MW amplitude scale factor");
  simulate->add_option("--nmax", opt.nmax, "number of periods");
  simulate->add_flag("--per-pulse", opt.per_pulse, "emit a value after every pulse");
  simulate->add_option("--out", opt.out, "output CSV path (default stdout)");

  CLI::App* trace = app.add_subcommand("trace", "powder-averaged 1D offset profile");
  add_waveform(trace);
  trace->add_option("--offsets", opt.offsets, "offset axis start:stop:step / MHz");
  trace->add_option("--T", opt.t_mhz, "dipolar anisotropy T / MHz");
  trace->add_option("--grid", opt.grid_n, "powder grid size");
  trace->add_option("--nrep", opt.nrep, "repetitions, integer or 'auto'");
  trace->add_option("--nmax", opt.nmax, "search bound for --nrep auto");
  trace->add_option("--band", opt.band, "band min:max / MHz for --nrep auto");
  trace->add_option("--larmor", opt.larmor_mhz, "nuclear Larmor frequency / MHz");
  trace->add_flag("--ensemble", opt.use_ensemble, "include the MW inhomogeneity ensemble");
  trace->add_option("--out", opt.out, "output CSV path (default stdout)");

  CLI::App* scan = app.add_subcommand("scan", "powder-averaged offset x amplitude map");
  add_waveform(scan);
  scan->add_option("--offsets", opt.offsets, "offset axis start:stop:step / MHz");
  scan->add_option("--scales", opt.scales, "scale axis start:stop:step");
  scan->add_option("--T", opt.t_mhz, "dipolar anisotropy T / MHz");
  scan->add_option("--grid", opt.grid_n, "powder grid size");
  scan->add_option("--nrep", opt.nrep, "repetitions, integer or 'auto'");
  scan->add_option("--nmax", opt.nmax, "search bound for --nrep auto");
  scan->add_option("--band", opt.band, "band min:max / MHz for --nrep auto");
  scan->add_option("--larmor", opt.larmor_mhz, "nuclear Larmor frequency / MHz");
  scan->add_flag("--ensemble", opt.use_ensemble, "include the MW inhomogeneity ensemble");
  scan->add_option("--out", opt.out, "output CSV path (default stdout)");

  CLI::App* contact = app.add_subcommand("contact", "band-optimal contact time");
  add_waveform(contact);
  contact->add_option("--T", opt.t_mhz, "dipolar anisotropy T / MHz");
  contact->add_option("--grid", opt.grid_n, "powder grid size");
  contact->add_option("--band", opt.band, "band min:max / MHz");
  contact->add_option("--nmax", opt.nmax, "largest repetition count considered");
  contact->add_option("--larmor", opt.larmor_mhz, "nuclear Larmor frequency / MHz");
  contact->add_option("--out", opt.out, "output path (default stdout)");

  CLI::App* effective = app.add_subcommand(
      "effective", "effective Hamiltonian, electron effective field, resonance");
  add_waveform(effective);
  add_system(effective);
  effective->add_option("--offset", opt.offset_mhz, "electron offset / MHz");
  effective->add_option("--scale", opt.scale, "MW amplitude scale factor");
  effective->add_option("--out", opt.out, "text output path (default stdout)");
  effective->add_option("--json", opt.json, "also write a JSON report here");

  CLI::App* optimize = app.add_subcommand(
      "optimize", "synthesize a waveform by replicated state-to-state optimal control");
  add_system(optimize);
  optimize->add_option("--pulses", opt.pulses, "number of pulses per period");
  optimize->add_option("--dt-ns", opt.dt_ns, "pulse duration / ns");
  optimize->add_option("--max-amp", opt.max_amp_mhz, "amplitude cap / MHz");
  optimize->add_option("--offsets", opt.offsets, "target offsets start:stop:step / MHz")
      ->default_str("-50:50:5");
  optimize->add_option("--nrep", opt.n_rep, "repetitions of the period");
  optimize->add_option("--max-iters", opt.max_iters, "iteration cap per seed");
  optimize->add_option("--grad-tol", opt.grad_tol, "projected-gradient tolerance");
  optimize->add_option("--seed", opt.seed, "first random seed");
  optimize->add_option("--seeds", opt.seeds, "number of seeds (multi-start)");
  optimize->add_flag("--no-ensemble", opt.no_ensemble,
                     "optimize without the MW inhomogeneity ensemble");
  optimize->add_option("--out", opt.out, "write the best waveform here");
  optimize->add_option("--report", opt.report, "write a JSON report here");

  CLI::App* fit = app.add_subcommand("fit", "exponential fits of buildup/relaxation data");
  fit->add_option("--model", opt.model, "buildup | invrec | decay")->required();
  fit->add_option("--in", opt.input, "input CSV path (t_s,value)")->required();
  fit->add_option("--out", opt.out, "text output path (default stdout)");
  fit->add_option("--json", opt.json, "also write a JSON report here");

  CLI::App* validate = app.add_subcommand("validate", "waveform constraint report");
  add_waveform(validate);
  validate->add_option("--max-amp", opt.max_amp_mhz, "amplitude cap / MHz");
  validate->add_option("--out", opt.out, "output path (default stdout)");

  CLI::App* corpus_cmd = app.add_subcommand("corpus", "list or export bundled waveforms");
  corpus_cmd->add_option("--export", opt.exp_name, "export one waveform by name");
  corpus_cmd->add_flag("--export-all", opt.export_all, "export every waveform");
  corpus_cmd->add_option("--dir", opt.exp_dir, "directory for --export-all");
  corpus_cmd->add_option("--out", opt.out, "output path for --export (default stdout)");

  // Default for optimize --offsets differs from the scan default.
  bool optimize_selected = false;
  optimize->parse_complete_callback([&] { optimize_selected = true; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (optimize_selected && optimize->get_option("--offsets")->count() == 0)
    opt.offsets = "-50:50:5";

  try {
    if (simulate->parsed()) return run_simulate(opt);
    if (trace->parsed()) return run_trace(opt);
    if (scan->parsed()) return run_scan(opt);
    if (contact->parsed()) return run_contact(opt);
    if (effective->parsed()) return run_effective(opt);
    if (optimize->parsed()) return run_optimize(opt);
    if (fit->parsed()) return run_fit(opt);
    if (validate->parsed()) return run_validate(opt);
    if (corpus_cmd->parsed()) return run_corpus(opt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

int cli_main(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.push_back("loopdnp");
  for (const std::string& a : args) argv.push_back(a.c_str());
  return cli_main(static_cast<int>(argv.size()), argv.data());
}

}  // namespace loopdnp

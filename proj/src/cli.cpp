#include "spdc/cli.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "spdc/amplitudes.hpp"
#include "spdc/errors.hpp"
#include "spdc/oracle.hpp"
#include "spdc/pumps.hpp"
#include "spdc/spectra.hpp"

namespace spdc {

namespace {

// ---------- small parsers for flag payloads ----------

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

double parse_double(const std::string& s, const std::string& what) {
  try {
    size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("");
    return v;
  } catch (...) {
    throw std::invalid_argument("cannot parse number '" + s + "' in " + what);
  }
}

int parse_int(const std::string& s, const std::string& what) {
  try {
    size_t pos = 0;
    int v = std::stoi(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("");
    return v;
  } catch (...) {
    throw std::invalid_argument("cannot parse integer '" + s + "' in " + what);
  }
}

ModeIndex parse_mode(const std::string& s, const std::string& what) {
  auto parts = split(s, ',');
  if (parts.size() != 2)
    throw std::invalid_argument(what + ": expected 'ell,p', got '" + s + "'");
  ModeIndex m{parse_int(parts[0], what), parse_int(parts[1], what)};
  if (m.p < 0) throw std::invalid_argument(what + ": p must be >= 0");
  return m;
}

std::pair<double, double> parse_interval(const std::string& s,
                                         const std::string& what) {
  auto parts = split(s, ':');
  if (parts.size() != 2)
    throw std::invalid_argument(what + ": expected 'lo:hi', got '" + s + "'");
  return {parse_double(parts[0], what), parse_double(parts[1], what)};
}

std::pair<int, int> parse_window(const std::string& s) {
  auto parts = split(s, ':');
  if (parts.size() != 2)
    throw std::invalid_argument("--ell-window: expected 'lo:hi', got '" + s + "'");
  int lo = parse_int(parts[0], "--ell-window");
  int hi = parse_int(parts[1], "--ell-window");
  if (lo > hi) throw std::invalid_argument("--ell-window: lo > hi");
  return {lo, hi};
}

PFamily parse_p_family(const std::string& s) {
  PFamily fam;
  for (const auto& item : split(s, ';')) {
    auto parts = split(item, ',');
    if (parts.size() != 2)
      throw std::invalid_argument("--p-family: expected 'ps,pi;...', got '" + s + "'");
    fam.push_back({parse_int(parts[0], "--p-family"),
                   parse_int(parts[1], "--p-family")});
  }
  return fam;
}

// "ls,li" pairs with p = 0, or full "ls,ps,li,pi" quadruples.
std::vector<std::pair<ModeIndex, ModeIndex>> parse_states(const std::string& s) {
  std::vector<std::pair<ModeIndex, ModeIndex>> states;
  for (const auto& item : split(s, ';')) {
    auto parts = split(item, ',');
    if (parts.size() == 2) {
      states.push_back({{parse_int(parts[0], "--states"), 0},
                        {parse_int(parts[1], "--states"), 0}});
    } else if (parts.size() == 4) {
      states.push_back({{parse_int(parts[0], "--states"),
                         parse_int(parts[1], "--states")},
                        {parse_int(parts[2], "--states"),
                         parse_int(parts[3], "--states")}});
    } else {
      throw std::invalid_argument(
          "--states: expected 'ls,li' or 'ls,ps,li,pi' items, got '" + item + "'");
    }
  }
  return states;
}

std::vector<Singularity> parse_singularities(const std::string& s) {
  std::vector<Singularity> sings;
  for (const auto& item : split(s, ';')) {
    auto parts = split(item, ',');
    if (parts.size() != 2)
      throw std::invalid_argument(
          "--singularities: expected 'rho,phi_degrees;...', got '" + s + "'");
    sings.push_back({parse_double(parts[0], "--singularities"),
                     parse_double(parts[1], "--singularities") *
                         std::numbers::pi / 180.0});
  }
  return sings;
}

// ---------- output assembly ----------

struct Row {
  double gamma_s = 1.0, gamma_i = 1.0;
  int ell_s = 0, p_s = 0, p_i = 0;
  std::complex<double> amplitude{0.0, 0.0};
  bool amplitude_defined = true;
  double probability = 0.0;
};

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

struct Output {
  std::vector<Row> rows;
  std::optional<double> out_of_window_mass;

  std::string render_csv() const {
    std::string s =
        "gamma_s,gamma_i,ell_s,p_s,p_i,amplitude_re,amplitude_im,probability\n";
    for (const auto& r : rows) {
      s += fmt(r.gamma_s) + "," + fmt(r.gamma_i) + "," +
           std::to_string(r.ell_s) + "," + std::to_string(r.p_s) + "," +
           std::to_string(r.p_i) + ",";
      if (r.amplitude_defined)
        s += fmt(r.amplitude.real()) + "," + fmt(r.amplitude.imag());
      else
        s += "nan,nan";
      s += "," + fmt(r.probability) + "\n";
    }
    if (out_of_window_mass)
      s += "# out_of_window_mass: " + fmt(*out_of_window_mass) + "\n";
    return s;
  }

  std::string render_json() const {
    nlohmann::ordered_json doc;
    doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
      nlohmann::ordered_json j;
      j["gamma_s"] = r.gamma_s;
      j["gamma_i"] = r.gamma_i;
      j["ell_s"] = r.ell_s;
      j["p_s"] = r.p_s;
      j["p_i"] = r.p_i;
      if (r.amplitude_defined) {
        j["amplitude_re"] = r.amplitude.real();
        j["amplitude_im"] = r.amplitude.imag();
      } else {
        j["amplitude_re"] = nullptr;
        j["amplitude_im"] = nullptr;
      }
      j["probability"] = r.probability;
      doc["rows"].push_back(std::move(j));
    }
    if (out_of_window_mass) doc["out_of_window_mass"] = *out_of_window_mass;
    return doc.dump(1) + "\n";
  }
};

// ---------- shared option state ----------

struct CommonOpts {
  std::string pump;
  std::string pump_file;
  std::string singularities;
  double gamma = 1.0;
  double gamma_s = 0.0;  // 0 = not set, fall back to --gamma
  double gamma_i = 0.0;
  double w_p = 1.0;
  std::string format = "csv";
  std::string out_path;

  void add_pump_flags(CLI::App* cmd) {
    cmd->add_option("--pump", pump, "pump mode 'ell,p'");
    cmd->add_option("--pump-file", pump_file, "pump description file");
    cmd->add_option("--singularities", singularities,
                    "inline singularity list 'rho,phi_degrees;...'");
  }
  void add_width_flags(CLI::App* cmd) {
    cmd->add_option("--gamma", gamma, "w_p/w_s = w_p/w_i (default 1)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--gamma-s", gamma_s, "w_p/w_s (overrides --gamma)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--gamma-i", gamma_i, "w_p/w_i (overrides --gamma)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--wp", w_p, "pump waist, the length unit (default 1)")
        ->check(CLI::PositiveNumber);
  }
  void add_output_flags(CLI::App* cmd) {
    cmd->add_option("--format", format, "csv|json (default csv)")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", out_path, "output path (default stdout)");
  }

  BeamWidths widths() const {
    BeamWidths w{w_p, gamma_s > 0.0 ? gamma_s : gamma,
                 gamma_i > 0.0 ? gamma_i : gamma};
    w.validate();
    return w;
  }

  PumpSpec build_pump() const {
    int sources = !pump.empty() + !pump_file.empty() + !singularities.empty();
    if (sources != 1)
      throw std::invalid_argument(
          "specify exactly one of --pump, --pump-file, --singularities");
    if (!pump.empty())
      return PumpSpec::single(parse_mode(pump, "--pump"));
    if (!pump_file.empty()) return load_pump_file(pump_file, w_p);
    auto sings = parse_singularities(singularities);
    return singularities_to_lg(sings, w_p);
  }
};

void emit(const Output& o, const CommonOpts& c, std::ostream& fallback) {
  std::string text = c.format == "json" ? o.render_json() : o.render_csv();
  if (c.out_path.empty()) {
    fallback << text;
  } else {
    std::ofstream f(c.out_path, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot open output file '" + c.out_path + "'");
    f << text;
  }
}

// Amplitude columns are only meaningful when a single idler OAM contributes
// per signal OAM, i.e. when all pump components share one ell.
bool unique_idler_branch(const PumpSpec& p) {
  return p.component_ells().size() == 1;
}

std::vector<Row> spectrum_rows(const PumpSpec& pump, const BeamWidths& w,
                               const SpiralSpectrum& spec) {
  std::vector<Row> rows;
  bool with_amp = unique_idler_branch(pump);
  auto pump_ells = pump.component_ells();
  for (int l = spec.window.first; l <= spec.window.second; ++l) {
    for (auto [ps, pi] : spec.p_family) {
      Row r;
      r.gamma_s = w.gamma_s;
      r.gamma_i = w.gamma_i;
      r.ell_s = l;
      r.p_s = ps;
      r.p_i = pi;
      double mass = 0.0;
      for (int ell_n : pump_ells) {
        auto c = coincidence_superposition(pump, {l, ps}, {ell_n - l, pi}, w);
        mass += std::norm(c.value);
        if (with_amp) r.amplitude = c.value;
      }
      r.amplitude_defined = with_amp;
      r.probability = mass / spec.norm;
      rows.push_back(r);
    }
  }
  return rows;
}

// ---------- commands ----------

int cmd_amplitude(const CommonOpts& c, const std::string& signal,
                  const std::string& idler, std::ostream& out) {
  BeamWidths w = c.widths();
  PumpSpec pump = c.build_pump();
  ModeIndex s = parse_mode(signal, "--signal");
  ModeIndex i = parse_mode(idler, "--idler");
  CoincidenceAmplitude a = coincidence_superposition(pump, s, i, w);

  Output o;
  Row r;
  r.gamma_s = w.gamma_s;
  r.gamma_i = w.gamma_i;
  r.ell_s = s.ell;
  r.p_s = s.p;
  r.p_i = i.p;
  r.amplitude = a.value;
  r.probability = std::norm(a.value);
  o.rows.push_back(r);
  emit(o, c, out);
  return 0;
}

int cmd_spectrum(const CommonOpts& c, const std::string& family_str,
                 const std::string& window_str, std::ostream& out) {
  BeamWidths w = c.widths();
  PumpSpec pump = c.build_pump();
  PFamily family = parse_p_family(family_str);
  auto window = parse_window(window_str);
  SpiralSpectrum spec = spiral_spectrum(pump, w, family, window);

  Output o;
  o.rows = spectrum_rows(pump, w, spec);
  double in_window = 0.0;
  for (const auto& r : o.rows) in_window += r.probability;
  o.out_of_window_mass = 1.0 - in_window;
  emit(o, c, out);
  return 0;
}

int cmd_scan(const CommonOpts& c, const std::string& grid_str,
             double gamma_ratio, const std::string& family_str,
             const std::string& window_str, std::ostream& out) {
  auto parts = split(grid_str, ':');
  if (parts.size() != 3)
    throw std::invalid_argument("--gamma-grid: expected 'lo:hi:step'");
  double lo = parse_double(parts[0], "--gamma-grid");
  double hi = parse_double(parts[1], "--gamma-grid");
  double step = parse_double(parts[2], "--gamma-grid");
  if (!(lo > 0.0) || !(step > 0.0) || hi < lo)
    throw std::invalid_argument("--gamma-grid: need 0 < lo <= hi, step > 0");
  if (!(gamma_ratio > 0.0))
    throw std::invalid_argument("--gamma-ratio: must be > 0");

  PumpSpec pump = c.build_pump();
  PFamily family = parse_p_family(family_str);
  auto window = parse_window(window_str);

  std::vector<std::pair<double, double>> grid;
  for (double g = lo; g < hi + 0.5 * step; g += step) {
    double gs = std::min(g, hi);
    grid.push_back({gs, gamma_ratio * gs});
  }
  GammaScan scan = gamma_scan(pump, grid, family, window, c.w_p);

  Output o;
  for (size_t k = 0; k < scan.gammas.size(); ++k) {
    BeamWidths w{c.w_p, scan.gammas[k].first, scan.gammas[k].second};
    auto rows = spectrum_rows(pump, w, scan.spectra[k]);
    o.rows.insert(o.rows.end(), rows.begin(), rows.end());
  }
  emit(o, c, out);
  return 0;
}

int cmd_decompose(const CommonOpts& c, std::ostream& out) {
  PumpSpec pump = c.build_pump();
  if (pump.kind != PumpSpec::Kind::singularities)
    throw std::invalid_argument(
        "decompose: pump must be a singularity description "
        "(--singularities or a 'type: singularities' file)");
  Output o;
  for (const auto& comp : pump.components) {
    Row r;
    r.ell_s = comp.mode.ell;
    r.p_s = comp.mode.p;
    r.p_i = 0;
    r.amplitude = comp.amplitude;
    r.probability = std::norm(comp.amplitude);
    o.rows.push_back(r);
  }
  emit(o, c, out);
  return 0;
}

int cmd_equalize(const CommonOpts& c, const std::string& states_str,
                 const std::string& interval_str, const std::string& mode_str,
                 double step, double tolerance, bool trace, std::ostream& out,
                 std::ostream& err) {
  PumpSpec pump = c.build_pump();
  auto states = parse_states(states_str);
  auto interval = parse_interval(interval_str, "--interval");
  EqualizeMode mode =
      mode_str == "paper" ? EqualizeMode::paper : EqualizeMode::strict;

  Output o;
  if (trace) {
    for (double g = interval.first; g < interval.second + 0.5 * step; g += step) {
      double gamma = std::min(g, interval.second);
      BeamWidths w{c.w_p, gamma, gamma};
      auto probs = subspace_probabilities(pump, w, states);
      for (size_t k = 0; k < states.size(); ++k) {
        Row r;
        r.gamma_s = r.gamma_i = gamma;
        r.ell_s = states[k].first.ell;
        r.p_s = states[k].first.p;
        r.p_i = states[k].second.p;
        r.amplitude = coincidence_superposition(pump, states[k].first,
                                                states[k].second, w)
                          .value;
        r.probability = probs[k];
        o.rows.push_back(r);
      }
    }
    emit(o, c, out);
    return 0;
  }

  EqualizationResult res = find_equal_probability_gammas(
      pump, states, interval, c.w_p, mode, step, tolerance);
  for (size_t n = 0; n < res.roots.size(); ++n) {
    double gamma = res.roots[n];
    BeamWidths w{c.w_p, gamma, gamma};
    auto probs = subspace_probabilities(pump, w, states);
    for (size_t k = 0; k < states.size(); ++k) {
      Row r;
      r.gamma_s = r.gamma_i = gamma;
      r.ell_s = states[k].first.ell;
      r.p_s = states[k].first.p;
      r.p_i = states[k].second.p;
      r.amplitude = coincidence_superposition(pump, states[k].first,
                                              states[k].second, w)
                        .value;
      r.probability = probs[k];
      o.rows.push_back(r);
    }
    err << "root " << n + 1 << ": gamma = " << fmt(gamma)
        << " (coefficient of variation " << fmt(res.residuals[n]) << ")\n";
  }
  if (res.roots.empty()) err << "no equalization roots in interval\n";
  emit(o, c, out);
  return 0;
}

int cmd_oracle_check(const CommonOpts& c, const std::string& signal,
                     const std::string& idler, const std::string& method,
                     double tolerance, std::ostream& out, std::ostream& err) {
  BeamWidths w = c.widths();
  PumpSpec pump = c.build_pump();
  if (!pump.is_single_mode())
    throw std::invalid_argument("oracle-check: pump must be a single LG mode");
  ModeIndex pm = pump.components[0].mode;
  ModeIndex s = parse_mode(signal, "--signal");
  ModeIndex i = parse_mode(idler, "--idler");

  CoincidenceAmplitude closed = coincidence_closed(pm, s, i, w);
  CoincidenceAmplitude quad = method == "2d"
                                  ? coincidence_quadrature_2d(pm, s, i, w)
                                  : coincidence_quadrature_radial(pm, s, i, w);

  Output o;
  for (const CoincidenceAmplitude* a : {&closed, &quad}) {
    Row r;
    r.gamma_s = w.gamma_s;
    r.gamma_i = w.gamma_i;
    r.ell_s = s.ell;
    r.p_s = s.p;
    r.p_i = i.p;
    r.amplitude = a->value;
    r.probability = std::norm(a->value);
    o.rows.push_back(r);
  }
  emit(o, c, out);

  double diff = std::abs(closed.value - quad.value);
  double bound = std::max(tolerance * std::abs(quad.value), 1e-12);
  if (diff > bound) {
    err << "oracle-check: closed form and quadrature disagree: |diff| = "
        << fmt(diff) << " exceeds " << fmt(bound) << "\n";
    return 2;
  }
  err << "oracle-check: agreement within " << fmt(bound) << " (|diff| = "
      << fmt(diff) << ")\n";
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Laguerre-Gauss decomposition of SPDC biphotons"};
  app.require_subcommand(1);

  CommonOpts c;

  auto* amp = app.add_subcommand("amplitude", "one coincidence amplitude");
  std::string amp_signal, amp_idler;
  c.add_pump_flags(amp);
  c.add_width_flags(amp);
  c.add_output_flags(amp);
  amp->add_option("--signal", amp_signal, "signal mode 'ell,p'")->required();
  amp->add_option("--idler", amp_idler, "idler mode 'ell,p'")->required();

  auto* spec = app.add_subcommand("spectrum", "spiral bandwidth spectrum");
  std::string spec_family = "0,0", spec_window = "-15:15";
  c.add_pump_flags(spec);
  c.add_width_flags(spec);
  c.add_output_flags(spec);
  spec->add_option("--p-family", spec_family, "radial pairs 'ps,pi;...' (default 0,0)");
  spec->add_option("--ell-window", spec_window, "reported ell range (default -15:15)");

  auto* scan = app.add_subcommand("scan", "spectra over a gamma grid");
  std::string scan_grid, scan_family = "0,0", scan_window = "-15:15";
  double scan_ratio = 1.0;
  c.add_pump_flags(scan);
  c.add_output_flags(scan);
  scan->add_option("--wp", c.w_p, "pump waist (default 1)");
  scan->add_option("--gamma-grid", scan_grid, "'lo:hi:step' for gamma_s")->required();
  scan->add_option("--gamma-ratio", scan_ratio, "gamma_i / gamma_s (default 1)");
  scan->add_option("--p-family", scan_family, "radial pairs 'ps,pi;...'");
  scan->add_option("--ell-window", scan_window, "reported ell range");

  auto* dec = app.add_subcommand("decompose", "LG coefficients of a singularity pump");
  c.add_pump_flags(dec);
  dec->add_option("--wp", c.w_p, "pump waist (default 1)");
  c.add_output_flags(dec);

  auto* eq = app.add_subcommand("equalize", "width ratios equalizing state probabilities");
  std::string eq_states, eq_interval, eq_mode = "strict";
  double eq_step = 0.01, eq_tolerance = 0.0;
  bool eq_trace = false;
  c.add_pump_flags(eq);
  eq->add_option("--wp", c.w_p, "pump waist (default 1)");
  c.add_output_flags(eq);
  eq->add_option("--states", eq_states, "'ls,li;...' or 'ls,ps,li,pi;...'")->required();
  eq->add_option("--interval", eq_interval, "'lo:hi' gamma range")->required();
  eq->add_option("--mode", eq_mode, "strict|paper (default strict)")
      ->check(CLI::IsMember({"strict", "paper"}));
  eq->add_option("--step", eq_step, "scan step (default 0.01)");
  eq->add_option("--tolerance", eq_tolerance, "override acceptance tolerance");
  eq->add_flag("--trace", eq_trace, "emit the full scan instead of roots");

  auto* orc = app.add_subcommand("oracle-check", "closed form vs quadrature");
  std::string orc_signal, orc_idler, orc_method = "radial";
  double orc_tolerance = 1e-8;
  c.add_pump_flags(orc);
  c.add_width_flags(orc);
  c.add_output_flags(orc);
  orc->add_option("--signal", orc_signal, "signal mode 'ell,p'")->required();
  orc->add_option("--idler", orc_idler, "idler mode 'ell,p'")->required();
  orc->add_option("--method", orc_method, "radial|2d (default radial)")
      ->check(CLI::IsMember({"radial", "2d"}));
  orc->add_option("--tolerance", orc_tolerance, "relative tolerance (default 1e-8)");

  std::vector<const char*> argv;
  argv.push_back("spdc");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
    if (app.got_subcommand(amp)) return cmd_amplitude(c, amp_signal, amp_idler, out);
    if (app.got_subcommand(spec)) return cmd_spectrum(c, spec_family, spec_window, out);
    if (app.got_subcommand(scan))
      return cmd_scan(c, scan_grid, scan_ratio, scan_family, scan_window, out);
    if (app.got_subcommand(dec)) return cmd_decompose(c, out);
    if (app.got_subcommand(eq))
      return cmd_equalize(c, eq_states, eq_interval, eq_mode, eq_step,
                          eq_tolerance, eq_trace, out, err);
    if (app.got_subcommand(orc))
      return cmd_oracle_check(c, orc_signal, orc_idler, orc_method,
                              orc_tolerance, out, err);
    return 1;
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 1;
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace spdc

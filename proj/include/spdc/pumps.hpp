#pragma once

#include <complex>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "spdc/modes.hpp"

namespace spdc {

// One phase singularity: radial position in units of w_p, azimuth in radians.
// All singularities carry unit topological charge; a multiple charge is a
// repeated coordinate.
struct Singularity {
  double rho = 0.0;
  double phi = 0.0;
};

struct PumpComponent {
  std::complex<double> amplitude;
  ModeIndex mode;
};

// A pump beam: a single LG mode, a normalized finite LG superposition, or a
// phase-singularity field (stored together with its exact LG_0^l
// decomposition). All component modes share the pump waist w_p.
struct PumpSpec {
  enum class Kind { single, superposition, singularities };

  Kind kind = Kind::single;
  std::vector<PumpComponent> components;   // always the usable decomposition
  std::vector<Singularity> singularities;  // populated for Kind::singularities

  static PumpSpec single(ModeIndex mode);

  bool is_single_mode() const {
    return components.size() == 1 && components[0].mode.p >= 0;
  }
  // Distinct component OAM values, ascending.
  std::vector<int> component_ells() const;
  // Mean component OAM weighted by |a|^2.
  double mean_ell() const;
};

// Coefficients [e_0 ... e_N] of prod_i (1 + z_i x), e_0 = 1, by incremental
// polynomial multiplication.
std::vector<std::complex<double>> elementary_symmetric(
    std::span<const std::complex<double>> zs);

// Rescale amplitudes to sum |a|^2 = 1, merging duplicate mode labels first.
// Throws std::domain_error when everything cancels to zero.
PumpSpec normalize_pump(std::vector<PumpComponent> raw);

// Exact LG_0^{0..N} decomposition of a field with N phase singularities,
// renormalized to unit power. The result does not depend on w_p because the
// positions are given in pump-waist units.
PumpSpec singularities_to_lg(std::span<const Singularity> sings, double w_p);

// Pointwise pump field value at the waist, sum of a_n LG_n(rho, phi).
std::complex<double> pump_field_value(const PumpSpec& pump, double rho,
                                      double phi, double w_p = 1.0);

// --- serialization (line-oriented text, '#' comments) ---
// type: single          | one "ell p" row
// type: superposition   | rows "ell p re im"
// type: singularities   | rows "rho phi_degrees"
PumpSpec parse_pump_text(std::istream& in, double w_p = 1.0);
PumpSpec load_pump_file(const std::string& path, double w_p = 1.0);
std::string format_pump_text(const PumpSpec& pump);

}  // namespace spdc

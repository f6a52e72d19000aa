#pragma once

#include <complex>

namespace spdc {

// One Laguerre-Gauss mode label: azimuthal (OAM) index ell, radial index p.
struct ModeIndex {
  int ell = 0;
  int p = 0;
  friend bool operator==(const ModeIndex&, const ModeIndex&) = default;
};

// Pump waist plus the two pump-to-signal/idler width ratios. w_p is the
// global length unit; everything downstream reports amplitudes in 1/w_p.
struct BeamWidths {
  double w_p = 1.0;
  double gamma_s = 1.0;  // w_p / w_s
  double gamma_i = 1.0;  // w_p / w_i

  double signal_width() const { return w_p / gamma_s; }
  double idler_width() const { return w_p / gamma_i; }
  void validate() const;  // throws std::domain_error unless all > 0 and finite
};

// Real radial profile of LG_p^ell at the waist (the full mode without the
// exp(i ell phi) factor). Units 1/width.
double lg_radial(ModeIndex mode, double width, double rho);

// Full complex mode value LG_p^ell(rho, phi) at the waist.
// Throws std::domain_error on non-finite input or width <= 0, rho < 0.
std::complex<double> lg_amplitude(ModeIndex mode, double width, double rho,
                                  double phi);

// Quadrature of integral |LG|^2 rho drho dphi; equals 1 to 1e-10 for any
// valid mode. Exists to pin the normalization of lg_amplitude.
double mode_norm(ModeIndex mode, double width);

}  // namespace spdc

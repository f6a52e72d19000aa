#pragma once

#include "spdc/amplitudes.hpp"
#include "spdc/modes.hpp"

namespace spdc {

// Numerical quadrature of the defining overlap integral. Deliberately
// self-contained: radial profiles are rebuilt here from a private Laguerre
// recurrence normalized through std::lgamma, sharing nothing with the
// closed-form path above the arithmetic level.

struct OracleOptions {
  double rel_tol = 1e-10;
  double cutoff_scale = 1.0;  // multiplies the automatic radial cutoff
};

// Radial form, valid only on OAM-conserving triples (the azimuthal integral
// has been done analytically and contributes 2 pi):
//   2 pi * integral_0^inf rho R_p R_s R_i drho
// Throws std::domain_error when l_p != l_s + l_i.
CoincidenceAmplitude coincidence_quadrature_radial(
    ModeIndex pump, ModeIndex signal, ModeIndex idler,
    const BeamWidths& widths, const OracleOptions& opt = {});

// Full two-dimensional integral for arbitrary triples: periodic trapezoid
// in phi (spectrally exact for the trigonometric degree involved), adaptive
// quadrature in rho.
CoincidenceAmplitude coincidence_quadrature_2d(ModeIndex pump,
                                               ModeIndex signal,
                                               ModeIndex idler,
                                               const BeamWidths& widths,
                                               const OracleOptions& opt = {});

}  // namespace spdc

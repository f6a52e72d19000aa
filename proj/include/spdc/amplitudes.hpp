#pragma once

#include <complex>

#include "spdc/modes.hpp"
#include "spdc/pumps.hpp"

namespace spdc {

enum class AmplitudePath { general, gaussian_pump, p_zero, quadrature };

// One coincidence amplitude in units of 1/w_p. For a single LG pump the
// value is real (imaginary part exactly zero); superposition pumps give
// complex values. condition is the worst cancellation condition number
// encountered while assembling it (1 when no alternating sum was involved).
struct CoincidenceAmplitude {
  std::complex<double> value{0.0, 0.0};
  double condition = 1.0;
  AmplitudePath path = AmplitudePath::general;
};

// Closed form for arbitrary mode triples: the full triple sum over
// (k, i, j), evaluated in signed-log space with extended-precision
// re-evaluation when the alternating sum cancels badly.
// Returns exact zero when OAM is not conserved. Throws CancellationError if
// even extended precision cannot certify the sum.
CoincidenceAmplitude coincidence_general(ModeIndex pump, ModeIndex signal,
                                         ModeIndex idler,
                                         const BeamWidths& widths);

// Gaussian pump (0,0), p_s = p_i = 0, equal ratios gamma_s = gamma_i:
//   sqrt(2/(pi w_p^2)) (2 g^2 / (1 + 2 g^2))^(|l|+1)
// for the (l, -l) signal/idler pair. Throws std::domain_error when the
// ratios differ.
CoincidenceAmplitude coincidence_gaussian_pump(int ell,
                                               const BeamWidths& widths);

// All radial indices zero: the single-term form. OAM violation gives zero.
CoincidenceAmplitude coincidence_p_zero(int ell_p, int ell_s, int ell_i,
                                        const BeamWidths& widths);

// Dispatcher: picks the cheapest applicable formula (gaussian_pump, then
// p_zero, then general) and records the choice in the result.
CoincidenceAmplitude coincidence_closed(ModeIndex pump, ModeIndex signal,
                                        ModeIndex idler,
                                        const BeamWidths& widths);

// Linearity over pump components: sum_n a_n C_n. Complex in general.
CoincidenceAmplitude coincidence_superposition(const PumpSpec& pump,
                                               ModeIndex signal,
                                               ModeIndex idler,
                                               const BeamWidths& widths);

}  // namespace spdc

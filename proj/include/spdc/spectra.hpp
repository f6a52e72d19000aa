#pragma once

#include <map>
#include <span>
#include <utility>
#include <vector>

#include "spdc/amplitudes.hpp"
#include "spdc/modes.hpp"
#include "spdc/pumps.hpp"

namespace spdc {

// Set of (p_s, p_i) pairs a spectrum sums over.
using PFamily = std::vector<std::pair<int, int>>;

// Distribution of coincidence probability over signal OAM. entries covers
// the full internally-extended support used for normalization; window
// records the range the caller asked to see. tail_mass is the unnormalized
// geometric estimate of the weight beyond the support, and norm the
// unnormalized total (support + tail) used as denominator.
struct SpiralSpectrum {
  std::map<int, double> entries;
  PFamily p_family;
  std::pair<int, int> ell_support{0, 0};
  std::pair<int, int> window{0, 0};
  double tail_mass = 0.0;
  double norm = 0.0;

  double probability(int ell_s) const {
    auto it = entries.find(ell_s);
    return it == entries.end() ? 0.0 : it->second;
  }
};

struct GammaScan {
  std::vector<std::pair<double, double>> gammas;  // (gamma_s, gamma_i)
  std::vector<SpiralSpectrum> spectra;
};

enum class EqualizeMode { strict, paper };

struct EqualizationResult {
  std::vector<double> roots;      // gamma values with equalized probabilities
  std::vector<double> residuals;  // coefficient of variation at each root
  std::pair<double, double> bracket;  // the scanned interval
};

// Signal-OAM spectrum for any pump. The support grows symmetrically about
// the pump's OAM center until the outermost five values on each side carry
// less than 1e-9 of the running total (capped at |l| <= 200); probabilities
// are normalized over support-plus-tail. Throws SpectrumError if more than
// 1e-6 of the mass remains outside the capped support.
SpiralSpectrum spiral_spectrum(const PumpSpec& pump, const BeamWidths& widths,
                               const PFamily& p_family,
                               std::pair<int, int> ell_window);

// One spectrum per grid point; the grid must be strictly ordered by
// (gamma_s, gamma_i).
GammaScan gamma_scan(const PumpSpec& pump,
                     std::span<const std::pair<double, double>> gamma_grid,
                     const PFamily& p_family, std::pair<int, int> ell_window,
                     double w_p = 1.0);

// |C|^2 for each (signal, idler) state, normalized over the full spectrum
// support (not just the listed states) so values are globally comparable.
std::vector<double> subspace_probabilities(
    const PumpSpec& pump, const BeamWidths& widths,
    std::span<const std::pair<ModeIndex, ModeIndex>> states);

// Scan gamma_s = gamma_i = gamma over [lo, hi], bracket local minima of the
// coefficient of variation of the state probabilities, refine each bracket
// by golden section to 1e-6, and keep roots below the mode's tolerance
// (1e-6 strict, 1e-2 paper; tolerance_override > 0 wins).
EqualizationResult find_equal_probability_gammas(
    const PumpSpec& pump,
    std::span<const std::pair<ModeIndex, ModeIndex>> states,
    std::pair<double, double> gamma_interval, double w_p,
    EqualizeMode mode = EqualizeMode::strict, double grid_step = 0.01,
    double tolerance_override = 0.0);

// Inverse participation ratio 1 / sum P^2 over the spectrum entries.
double effective_dimension(const SpiralSpectrum& spectrum);

}  // namespace spdc

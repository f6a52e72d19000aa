#include "spdc/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

#include "spdc/errors.hpp"

namespace spdc {

namespace {

// Vortex pumps with radial structure spread far at gamma = 3: pump (2,3)
// needs the support out to |l| ~ 394 before the tail rule is met.
constexpr int kEllCap = 512;
constexpr double kTailStopFraction = 1e-9;
constexpr double kTailMassLimit = 1e-6;
constexpr int kExtendChunk = 5;

// Unnormalized weight at one signal OAM: sum over the p family and over the
// idler OAM values the pump components admit.
double signal_weight(const PumpSpec& pump, const BeamWidths& widths,
                     const PFamily& family, std::span<const int> pump_ells,
                     int ell_s) {
  double mass = 0.0;
  for (auto [ps, pi] : family) {
    for (int ell_n : pump_ells) {
      int ell_i = ell_n - ell_s;
      CoincidenceAmplitude c = coincidence_superposition(
          pump, {ell_s, ps}, {ell_i, pi}, widths);
      mass += std::norm(c.value);
    }
  }
  return mass;
}

// Geometric bound on the mass beyond one edge of the support, from the
// observed decay ratio of the outermost values.
double edge_tail(const std::map<int, double>& u, int edge, int inward_step) {
  double v0 = u.at(edge);
  if (v0 <= 0.0) return 0.0;
  double r = 0.0;
  for (int k = 1; k <= 3; ++k) {
    double inner = u.at(edge - k * inward_step);
    if (inner > 0.0) r = std::max(r, u.at(edge - (k - 1) * inward_step) / inner);
  }
  if (r <= 0.0 || r >= 1.0) return -1.0;  // not decaying: unbounded estimate
  return v0 * r / (1.0 - r);
}

struct SupportScan {
  std::map<int, double> weights;
  int lo, hi;
  double total;
  double tail;  // combined two-sided estimate; < 0 if unbounded
};

SupportScan scan_support(const PumpSpec& pump, const BeamWidths& widths,
                         const PFamily& family) {
  auto pump_ells = pump.component_ells();
  int center = static_cast<int>(std::lround(pump.mean_ell() / 2.0));
  int spread = pump_ells.back() - pump_ells.front();

  SupportScan s;
  s.lo = std::max(center - 8 - spread, -kEllCap);
  s.hi = std::min(center + 8 + spread, kEllCap);
  if (s.lo > s.hi)
    throw SpectrumError(
        "spiral spectrum: pump OAM center lies outside the support cap", 1.0);
  s.total = 0.0;
  for (int l = s.lo; l <= s.hi; ++l) {
    s.weights[l] = signal_weight(pump, widths, family, pump_ells, l);
    s.total += s.weights[l];
  }

  auto side_sum = [&](int from, int step) {
    double t = 0.0;
    for (int k = 0; k < kExtendChunk; ++k) t += s.weights.at(from - k * step);
    return t;
  };

  for (;;) {
    bool lo_done = s.lo <= -kEllCap ||
                   side_sum(s.lo, -1) < kTailStopFraction * s.total;
    bool hi_done = s.hi >= kEllCap ||
                   side_sum(s.hi, +1) < kTailStopFraction * s.total;
    if (lo_done && hi_done) break;
    // Grow both sides to keep the window symmetric about the center.
    int new_lo = std::max(s.lo - kExtendChunk, -kEllCap);
    int new_hi = std::min(s.hi + kExtendChunk, kEllCap);
    for (int l = new_lo; l < s.lo; ++l) {
      s.weights[l] = signal_weight(pump, widths, family, pump_ells, l);
      s.total += s.weights[l];
    }
    for (int l = s.hi + 1; l <= new_hi; ++l) {
      s.weights[l] = signal_weight(pump, widths, family, pump_ells, l);
      s.total += s.weights[l];
    }
    s.lo = new_lo;
    s.hi = new_hi;
  }

  if (s.total <= 0.0)
    throw SpectrumError("spiral spectrum: pump couples to no state in range", 0.0);

  double t_lo = edge_tail(s.weights, s.lo, -1);
  double t_hi = edge_tail(s.weights, s.hi, +1);
  s.tail = (t_lo < 0.0 || t_hi < 0.0) ? -1.0 : t_lo + t_hi;

  double rel_tail = s.tail < 0.0 ? 1.0 : s.tail / (s.total + s.tail);
  if (rel_tail > kTailMassLimit) {
    std::ostringstream msg;
    msg << "spiral spectrum: " << rel_tail
        << " of the probability mass lies outside |l| <= " << kEllCap;
    throw SpectrumError(msg.str(), rel_tail);
  }
  return s;
}

}  // namespace

SpiralSpectrum spiral_spectrum(const PumpSpec& pump, const BeamWidths& widths,
                               const PFamily& p_family,
                               std::pair<int, int> ell_window) {
  widths.validate();
  if (p_family.empty())
    throw std::domain_error("spiral_spectrum: empty p family");
  if (ell_window.first > ell_window.second)
    throw std::domain_error("spiral_spectrum: empty ell window");
  for (auto [ps, pi] : p_family)
    if (ps < 0 || pi < 0)
      throw std::domain_error("spiral_spectrum: negative radial index in family");

  SupportScan s = scan_support(pump, widths, p_family);

  SpiralSpectrum out;
  out.p_family = p_family;
  out.ell_support = {s.lo, s.hi};
  out.window = ell_window;
  out.tail_mass = s.tail;
  out.norm = s.total + s.tail;
  for (const auto& [l, w] : s.weights) out.entries[l] = w / out.norm;
  return out;
}

GammaScan gamma_scan(const PumpSpec& pump,
                     std::span<const std::pair<double, double>> gamma_grid,
                     const PFamily& p_family, std::pair<int, int> ell_window,
                     double w_p) {
  if (gamma_grid.empty()) throw std::domain_error("gamma_scan: empty grid");
  for (size_t i = 1; i < gamma_grid.size(); ++i)
    if (!(gamma_grid[i - 1] < gamma_grid[i]))
      throw std::domain_error("gamma_scan: grid must be strictly increasing");

  GammaScan scan;
  scan.gammas.assign(gamma_grid.begin(), gamma_grid.end());
  scan.spectra.reserve(gamma_grid.size());
  for (auto [gs, gi] : gamma_grid) {
    try {
      scan.spectra.push_back(
          spiral_spectrum(pump, {w_p, gs, gi}, p_family, ell_window));
    } catch (const NumericError& e) {
      std::ostringstream msg;
      msg << "gamma_scan at (gamma_s=" << gs << ", gamma_i=" << gi
          << "): " << e.what();
      throw SpectrumError(msg.str(), e.diagnostic());
    }
  }
  return scan;
}

std::vector<double> subspace_probabilities(
    const PumpSpec& pump, const BeamWidths& widths,
    std::span<const std::pair<ModeIndex, ModeIndex>> states) {
  widths.validate();
  if (states.empty())
    throw std::domain_error("subspace_probabilities: empty state list");
  std::set<std::pair<std::pair<int, int>, std::pair<int, int>>> seen;
  PFamily family;
  std::set<std::pair<int, int>> fam_seen;
  for (const auto& [sig, idl] : states) {
    if (!seen.insert({{sig.ell, sig.p}, {idl.ell, idl.p}}).second)
      throw std::domain_error("subspace_probabilities: duplicate state");
    if (fam_seen.insert({sig.p, idl.p}).second)
      family.push_back({sig.p, idl.p});
  }

  SupportScan s = scan_support(pump, widths, family);
  double denom = s.total + s.tail;

  std::vector<double> probs;
  probs.reserve(states.size());
  for (const auto& [sig, idl] : states) {
    CoincidenceAmplitude c = coincidence_superposition(pump, sig, idl, widths);
    probs.push_back(std::norm(c.value) / denom);
  }
  return probs;
}

namespace {

double coefficient_of_variation(std::span<const double> xs) {
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= xs.size();
  if (mean <= 0.0) return std::numeric_limits<double>::infinity();
  double var = 0.0;
  for (double x : xs) var += (x - mean) * (x - mean);
  var /= xs.size();
  return std::sqrt(var) / mean;
}

}  // namespace

double effective_dimension(const SpiralSpectrum& spectrum) {
  double sq = 0.0;
  for (const auto& [l, p] : spectrum.entries) sq += p * p;
  if (sq <= 0.0)
    throw std::domain_error("effective_dimension: spectrum has no mass");
  return 1.0 / sq;
}

EqualizationResult find_equal_probability_gammas(
    const PumpSpec& pump,
    std::span<const std::pair<ModeIndex, ModeIndex>> states,
    std::pair<double, double> gamma_interval, double w_p, EqualizeMode mode,
    double grid_step, double tolerance_override) {
  if (states.size() < 2)
    throw std::domain_error(
        "find_equal_probability_gammas: need at least two states");
  auto [lo, hi] = gamma_interval;
  if (!(0.0 < lo && lo < hi))
    throw std::domain_error(
        "find_equal_probability_gammas: need 0 < lo < hi");
  if (!(grid_step > 0.0))
    throw std::domain_error("find_equal_probability_gammas: step must be > 0");

  const double tol = tolerance_override > 0.0
                         ? tolerance_override
                         : (mode == EqualizeMode::strict ? 1e-6 : 1e-2);

  auto cv_at = [&](double g) {
    auto probs = subspace_probabilities(pump, {w_p, g, g}, states);
    return coefficient_of_variation(probs);
  };

  std::vector<double> grid;
  for (double g = lo; g < hi + 0.5 * grid_step; g += grid_step)
    grid.push_back(std::min(g, hi));
  std::vector<double> cv(grid.size());
  for (size_t i = 0; i < grid.size(); ++i) cv[i] = cv_at(grid[i]);

  EqualizationResult result;
  result.bracket = gamma_interval;
  constexpr double kGolden = 0.6180339887498949;
  for (size_t i = 1; i + 1 < grid.size(); ++i) {
    if (!(cv[i] < cv[i - 1] && cv[i] <= cv[i + 1])) continue;
    // Golden-section refinement of the bracketed minimum.
    double a = grid[i - 1], b = grid[i + 1];
    double x1 = b - kGolden * (b - a), x2 = a + kGolden * (b - a);
    double f1 = cv_at(x1), f2 = cv_at(x2);
    while (b - a > 1e-6) {
      if (f1 < f2) {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - kGolden * (b - a);
        f1 = cv_at(x1);
      } else {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + kGolden * (b - a);
        f2 = cv_at(x2);
      }
    }
    double root = 0.5 * (a + b);
    double residual = cv_at(root);
    if (residual < tol) {
      result.roots.push_back(root);
      result.residuals.push_back(residual);
    }
  }
  return result;
}

}  // namespace spdc

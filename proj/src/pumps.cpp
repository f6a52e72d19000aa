#include "spdc/pumps.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

#include "spdc/specfun.hpp"

namespace spdc {

PumpSpec PumpSpec::single(ModeIndex mode) {
  if (mode.p < 0) throw std::domain_error("PumpSpec: radial index p must be >= 0");
  PumpSpec p;
  p.kind = Kind::single;
  p.components = {{std::complex<double>(1.0, 0.0), mode}};
  return p;
}

std::vector<int> PumpSpec::component_ells() const {
  std::vector<int> ells;
  for (const auto& c : components) ells.push_back(c.mode.ell);
  std::sort(ells.begin(), ells.end());
  ells.erase(std::unique(ells.begin(), ells.end()), ells.end());
  return ells;
}

double PumpSpec::mean_ell() const {
  double m = 0.0;
  for (const auto& c : components) m += std::norm(c.amplitude) * c.mode.ell;
  return m;
}

std::vector<std::complex<double>> elementary_symmetric(
    std::span<const std::complex<double>> zs) {
  std::vector<std::complex<double>> e(zs.size() + 1, 0.0);
  e[0] = 1.0;
  for (size_t n = 0; n < zs.size(); ++n) {
    for (size_t m = n + 1; m >= 1; --m) e[m] += zs[n] * e[m - 1];
  }
  return e;
}

PumpSpec normalize_pump(std::vector<PumpComponent> raw) {
  if (raw.empty()) throw std::domain_error("normalize_pump: empty mode list");
  // Merge duplicate labels by summing amplitudes.
  std::map<std::pair<int, int>, std::complex<double>> merged;
  for (const auto& c : raw) {
    if (c.mode.p < 0)
      throw std::domain_error("normalize_pump: radial index p must be >= 0");
    merged[{c.mode.ell, c.mode.p}] += c.amplitude;
  }
  double power = 0.0;
  for (const auto& [mode, a] : merged) power += std::norm(a);
  if (power <= 0.0)
    throw std::domain_error("normalize_pump: amplitudes cancel to zero (degenerate pump)");
  double scale = 1.0 / std::sqrt(power);

  PumpSpec p;
  p.components.reserve(merged.size());
  for (const auto& [mode, a] : merged) {
    std::complex<double> an = a * scale;
    if (an == std::complex<double>(0.0, 0.0)) continue;
    p.components.push_back({an, {mode.first, mode.second}});
  }
  if (p.components.empty())
    throw std::domain_error("normalize_pump: amplitudes cancel to zero (degenerate pump)");
  p.kind = p.components.size() == 1 ? PumpSpec::Kind::single
                                    : PumpSpec::Kind::superposition;
  return p;
}

PumpSpec singularities_to_lg(std::span<const Singularity> sings, double w_p) {
  if (!(w_p > 0.0) || !std::isfinite(w_p))
    throw std::domain_error("singularities_to_lg: w_p must be positive");
  const int n = static_cast<int>(sings.size());
  std::vector<std::complex<double>> zs;
  zs.reserve(n);
  for (const auto& s : sings) {
    if (!std::isfinite(s.rho) || s.rho < 0.0)
      throw std::domain_error("singularities_to_lg: rho must be >= 0 and finite");
    // Positions are in units of w_p; scale to absolute length.
    zs.push_back(std::polar(s.rho * w_p, s.phi));
  }
  auto b = elementary_symmetric(zs);

  // a_l = sqrt(pi) (-1)^(N-l) (w_p/sqrt(2))^(l-1) sqrt(l!) b_{N-l}; the
  // overall scale is irrelevant after renormalization, only the relative
  // phases matter.
  std::vector<PumpComponent> raw;
  raw.reserve(n + 1);
  for (int l = 0; l <= n; ++l) {
    double mag = std::sqrt(std::numbers::pi) *
                 std::pow(w_p / std::numbers::sqrt2, l - 1) *
                 std::exp(0.5 * log_factorial(l));
    double sgn = ((n - l) % 2 == 0) ? 1.0 : -1.0;
    std::complex<double> a = sgn * mag * b[n - l];
    raw.push_back({a, {l, 0}});
  }
  PumpSpec p = normalize_pump(std::move(raw));
  p.kind = PumpSpec::Kind::singularities;
  p.singularities.assign(sings.begin(), sings.end());
  return p;
}

std::complex<double> pump_field_value(const PumpSpec& pump, double rho,
                                      double phi, double w_p) {
  std::complex<double> v = 0.0;
  for (const auto& c : pump.components)
    v += c.amplitude * lg_amplitude(c.mode, w_p, rho, phi);
  return v;
}

}  // namespace spdc

#include "spdc/modes.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "spdc/quadrature.hpp"
#include "spdc/specfun.hpp"

namespace spdc {

void BeamWidths::validate() const {
  auto ok = [](double x) { return std::isfinite(x) && x > 0.0; };
  if (!ok(w_p) || !ok(gamma_s) || !ok(gamma_i))
    throw std::domain_error("BeamWidths: fields must be positive and finite");
}

namespace {

void check_mode(ModeIndex m) {
  if (m.p < 0) throw std::domain_error("ModeIndex: radial index p must be >= 0");
}

// ln of the normalization sqrt(2 p! / (pi (p+|l|)!)) / w.
double log_norm(ModeIndex m, double width) {
  return 0.5 * (std::numbers::ln2 + log_factorial(m.p) -
                std::log(std::numbers::pi) - log_factorial(m.p + std::abs(m.ell))) -
         std::log(width);
}

}  // namespace

double lg_radial(ModeIndex mode, double width, double rho) {
  check_mode(mode);
  int la = std::abs(mode.ell);
  double x = 2.0 * rho * rho / (width * width);
  if (rho == 0.0) {
    if (la > 0) return 0.0;
    return std::exp(log_norm(mode, width)) * assoc_laguerre(mode.p, 0, 0.0);
  }
  double lag = assoc_laguerre(mode.p, la, x);
  if (lag == 0.0) return 0.0;
  // Assemble the exponent in one piece so the rho^|l| growth and the
  // Gaussian decay cannot overflow separately.
  double log_mag = log_norm(mode, width) +
                   la * std::log(std::numbers::sqrt2 * rho / width) - 0.5 * x +
                   std::log(std::abs(lag));
  return std::copysign(std::exp(log_mag), lag);
}

std::complex<double> lg_amplitude(ModeIndex mode, double width, double rho,
                                  double phi) {
  if (!std::isfinite(width) || width <= 0.0)
    throw std::domain_error("lg_amplitude: width must be positive and finite");
  if (!std::isfinite(rho) || rho < 0.0)
    throw std::domain_error("lg_amplitude: rho must be >= 0 and finite");
  if (!std::isfinite(phi))
    throw std::domain_error("lg_amplitude: phi must be finite");
  double r = lg_radial(mode, width, rho);
  return r * std::polar(1.0, mode.ell * phi);
}

double mode_norm(ModeIndex mode, double width) {
  check_mode(mode);
  // |LG|^2 decays as exp(-2 rho^2 / w^2); reach exponent -50, then pad for
  // the polynomial factor.
  double r_max = width * 5.0 * (1.0 + 0.1 * (std::abs(mode.ell) + 2.0 * mode.p));
  QuadratureOptions opt;
  opt.rel_tol = 1e-12;
  auto res = integrate(
      [&](double rho) {
        double v = lg_radial(mode, width, rho);
        return rho * v * v;
      },
      0.0, r_max, opt);
  return 2.0 * std::numbers::pi * res.value;
}

}  // namespace spdc

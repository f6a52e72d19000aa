#include "spdc/oracle.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "spdc/quadrature.hpp"

namespace spdc {

namespace {

// Private radial evaluator. Normalization via std::lgamma and a local
// three-term recurrence; must stay independent of spdc/specfun.
struct RadialProfile {
  int abs_ell;
  int p;
  double width;
  double log_norm;

  RadialProfile(ModeIndex m, double w)
      : abs_ell(std::abs(m.ell)), p(m.p), width(w) {
    log_norm = 0.5 * (std::log(2.0) + std::lgamma(p + 1.0) -
                      std::log(std::numbers::pi) - std::lgamma(p + abs_ell + 1.0)) -
               std::log(w);
  }

  double laguerre(double x) const {
    double lm1 = 1.0;
    if (p == 0) return lm1;
    double l = 1.0 + abs_ell - x;
    for (int n = 1; n < p; ++n) {
      double lp1 = ((2.0 * n + 1.0 + abs_ell - x) * l - (n + abs_ell) * lm1) /
                   (n + 1.0);
      lm1 = l;
      l = lp1;
    }
    return l;
  }

  double operator()(double rho) const {
    double x = 2.0 * rho * rho / (width * width);
    if (rho == 0.0) return abs_ell > 0 ? 0.0 : std::exp(log_norm) * laguerre(0.0);
    double lag = laguerre(x);
    if (lag == 0.0) return 0.0;
    double lm = log_norm + abs_ell * std::log(std::numbers::sqrt2 * rho / width) -
                0.5 * x + std::log(std::abs(lag));
    return std::copysign(std::exp(lm), lag);
  }
};

void validate_inputs(ModeIndex pump, ModeIndex signal, ModeIndex idler,
                     const BeamWidths& widths) {
  widths.validate();
  if (pump.p < 0 || signal.p < 0 || idler.p < 0)
    throw std::domain_error("quadrature oracle: radial indices must be >= 0");
}

// The integrand decays as exp(-rho^2 (1 + gs^2 + gi^2) / w_p^2); pick the
// radius where that exponent reaches -50 and pad for polynomial growth.
double radial_cutoff(ModeIndex pump, ModeIndex signal, ModeIndex idler,
                     const BeamWidths& w) {
  double s = (1.0 + w.gamma_s * w.gamma_s + w.gamma_i * w.gamma_i) /
             (w.w_p * w.w_p);
  int ell_max = std::max({std::abs(pump.ell), std::abs(signal.ell),
                          std::abs(idler.ell)});
  int p_max = std::max({pump.p, signal.p, idler.p});
  return std::sqrt(50.0 / s) * (1.0 + 0.1 * (ell_max + 2.0 * p_max));
}

QuadratureOptions quad_options(const BeamWidths& w, const OracleOptions& o) {
  QuadratureOptions opt;
  opt.rel_tol = o.rel_tol;
  opt.abs_tol = 1e-15 / w.w_p;  // amplitudes scale as 1/w_p
  return opt;
}

}  // namespace

CoincidenceAmplitude coincidence_quadrature_radial(
    ModeIndex pump, ModeIndex signal, ModeIndex idler,
    const BeamWidths& widths, const OracleOptions& opt) {
  validate_inputs(pump, signal, idler, widths);
  if (pump.ell != signal.ell + idler.ell)
    throw std::domain_error(
        "coincidence_quadrature_radial: requires l_p == l_s + l_i");

  RadialProfile rp(pump, widths.w_p);
  RadialProfile rs(signal, widths.signal_width());
  RadialProfile ri(idler, widths.idler_width());

  auto res = integrate(
      [&](double rho) { return rho * rp(rho) * rs(rho) * ri(rho); }, 0.0,
      opt.cutoff_scale * radial_cutoff(pump, signal, idler, widths),
      quad_options(widths, opt));

  return {{2.0 * std::numbers::pi * res.value, 0.0}, 1.0,
          AmplitudePath::quadrature};
}

CoincidenceAmplitude coincidence_quadrature_2d(ModeIndex pump,
                                               ModeIndex signal,
                                               ModeIndex idler,
                                               const BeamWidths& widths,
                                               const OracleOptions& opt) {
  validate_inputs(pump, signal, idler, widths);

  RadialProfile rp(pump, widths.w_p);
  RadialProfile rs(signal, widths.signal_width());
  RadialProfile ri(idler, widths.idler_width());

  // Enough trapezoid nodes to integrate exp(i m phi) exactly for every
  // frequency the product can contain.
  const int n_phi =
      2 * (std::abs(pump.ell) + std::abs(signal.ell) + std::abs(idler.ell)) + 32;
  const double dphi = 2.0 * std::numbers::pi / n_phi;

  auto res = integrate_complex(
      [&](double rho) -> std::complex<double> {
        double radial = rho * rp(rho) * rs(rho) * ri(rho);
        std::complex<double> acc = 0.0;
        for (int k = 0; k < n_phi; ++k) {
          double phi = k * dphi;
          acc += std::polar(1.0, pump.ell * phi) *
                 std::conj(std::polar(1.0, signal.ell * phi)) *
                 std::conj(std::polar(1.0, idler.ell * phi));
        }
        return radial * dphi * acc;
      },
      0.0, opt.cutoff_scale * radial_cutoff(pump, signal, idler, widths),
      quad_options(widths, opt));

  return {res.value, 1.0, AmplitudePath::quadrature};
}

}  // namespace spdc

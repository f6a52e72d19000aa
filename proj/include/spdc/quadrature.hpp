#pragma once

#include <complex>
#include <functional>

namespace spdc {

struct QuadratureOptions {
  double rel_tol = 1e-10;
  double abs_tol = 0.0;
  int max_panels = 4000;
};

template <typename Value>
struct QuadratureResult {
  Value value{};
  double error_estimate = 0.0;
  int panels = 0;
};

// Globally adaptive bisection with a Gauss-Kronrod 7/15 rule per panel.
// The worst panel is split until the summed error estimate meets
// max(abs_tol, rel_tol * |integral|); exceeding max_panels throws
// QuadratureError carrying the achieved estimate. Panels are processed
// sequentially so error accumulation is deterministic.
QuadratureResult<double> integrate(const std::function<double(double)>& f,
                                   double a, double b,
                                   const QuadratureOptions& opt = {});

QuadratureResult<std::complex<double>> integrate_complex(
    const std::function<std::complex<double>(double)>& f, double a, double b,
    const QuadratureOptions& opt = {});

}  // namespace spdc

#include "spdc/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "spdc/errors.hpp"

namespace spdc {

namespace {

// Gauss-Kronrod 7/15 abscissae and weights on [-1, 1] (QUADPACK values).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

template <typename Value>
struct Panel {
  double a, b;
  Value integral;
  double abs_integral;  // integral of |f|, for the rounding floor
  double error;
};

template <typename Value, typename F>
Panel<Value> evaluate_panel(const F& f, double a, double b) {
  double center = 0.5 * (a + b);
  double half = 0.5 * (b - a);

  Value fc = f(center);
  Value kronrod = kWgk[7] * fc;
  Value gauss = kWg[3] * fc;
  double abs_sum = kWgk[7] * std::abs(fc);

  for (int j = 0; j < 7; ++j) {
    double dx = half * kXgk[j];
    Value f1 = f(center - dx);
    Value f2 = f(center + dx);
    kronrod += kWgk[j] * (f1 + f2);
    abs_sum += kWgk[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
  }

  Panel<Value> p;
  p.a = a;
  p.b = b;
  p.integral = half * kronrod;
  p.abs_integral = half * abs_sum;
  p.error = half * std::abs(kronrod - gauss);
  return p;
}

template <typename Value>
QuadratureResult<Value> integrate_impl(const std::function<Value(double)>& f,
                                       double a, double b,
                                       const QuadratureOptions& opt) {
  std::vector<Panel<Value>> panels;
  panels.push_back(evaluate_panel<Value>(f, a, b));

  auto totals = [&panels] {
    Value v{};
    double err = 0.0, absint = 0.0;
    for (const auto& p : panels) {
      v += p.integral;
      err += p.error;
      absint += p.abs_integral;
    }
    return std::tuple<Value, double, double>{v, err, absint};
  };

  for (;;) {
    auto [value, err, absint] = totals();
    double floor = 50.0 * std::numeric_limits<double>::epsilon() * absint;
    double target =
        std::max({opt.abs_tol, opt.rel_tol * std::abs(value), floor});
    if (err <= target) {
      return {value, err, static_cast<int>(panels.size())};
    }
    if (static_cast<int>(panels.size()) >= opt.max_panels) {
      std::ostringstream msg;
      msg << "adaptive quadrature: refinement budget of " << opt.max_panels
          << " panels exhausted; achieved error estimate " << err
          << " (target " << target << ")";
      throw QuadratureError(msg.str(), err);
    }
    auto worst = std::max_element(
        panels.begin(), panels.end(),
        [](const auto& x, const auto& y) { return x.error < y.error; });
    double mid = 0.5 * (worst->a + worst->b);
    Panel<Value> left = evaluate_panel<Value>(f, worst->a, mid);
    Panel<Value> right = evaluate_panel<Value>(f, mid, worst->b);
    *worst = left;
    panels.push_back(right);
  }
}

}  // namespace

QuadratureResult<double> integrate(const std::function<double(double)>& f,
                                   double a, double b,
                                   const QuadratureOptions& opt) {
  return integrate_impl<double>(f, a, b, opt);
}

QuadratureResult<std::complex<double>> integrate_complex(
    const std::function<std::complex<double>(double)>& f, double a, double b,
    const QuadratureOptions& opt) {
  return integrate_impl<std::complex<double>>(f, a, b, opt);
}

}  // namespace spdc

#include "spdc/specfun.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "spdc/ddouble.hpp"

namespace spdc {

SignedLogValue SignedLogValue::encode(double x) {
  if (x == 0.0) return {0, 0.0};
  if (!std::isfinite(x)) throw std::domain_error("SignedLogValue: non-finite input");
  return {x > 0.0 ? 1 : -1, std::log(std::abs(x))};
}

double SignedLogValue::decode() const {
  if (sign == 0) return 0.0;
  return sign * std::exp(log_mag);
}

namespace {

constexpr int kTableSize = 256;

// ln(n!) for n < 256, accumulated in double-double so each table entry is
// correctly rounded. Independent of libm lgamma on purpose: the quadrature
// oracle normalizes through std::lgamma and the two paths must not share
// their factorial source.
const std::array<double, kTableSize>& log_factorial_table() {
  static const std::array<double, kTableSize> table = [] {
    std::array<double, kTableSize> t{};
    DDouble acc{0.0};
    t[0] = 0.0;
    for (int n = 1; n < kTableSize; ++n) {
      acc = acc + dd_log(DDouble(static_cast<double>(n)));
      t[n] = acc.to_double();
    }
    return t;
  }();
  return table;
}

// Stirling series for ln Gamma(z), z >= 256: truncation below 1e-22.
double log_gamma_stirling(double z) {
  const double half_log_two_pi = 0.91893853320467274178;
  double inv = 1.0 / z;
  double inv2 = inv * inv;
  double series = inv * (1.0 / 12.0 +
                         inv2 * (-1.0 / 360.0 +
                                 inv2 * (1.0 / 1260.0 +
                                         inv2 * (-1.0 / 1680.0 + inv2 / 1188.0))));
  return (z - 0.5) * std::log(z) - z + half_log_two_pi + series;
}

// Neumaier compensated accumulator.
struct CompensatedSum {
  double sum = 0.0;
  double comp = 0.0;
  void add(double x) {
    double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

}  // namespace

double log_factorial(int n) {
  if (n < 0) throw std::domain_error("log_factorial: negative argument");
  if (n < kTableSize) return log_factorial_table()[n];
  return log_gamma_stirling(static_cast<double>(n) + 1.0);
}

SignedLogSum signed_log_sum(std::span<const SignedLogValue> terms) {
  double max_log = -std::numeric_limits<double>::infinity();
  for (const auto& t : terms)
    if (t.sign != 0 && t.log_mag > max_log) max_log = t.log_mag;
  if (!std::isfinite(max_log)) return {{0, 0.0}, 1.0};  // empty or all zero

  CompensatedSum signed_acc;
  CompensatedSum abs_acc;
  for (const auto& t : terms) {
    if (t.sign == 0) continue;
    double e = std::exp(t.log_mag - max_log);
    signed_acc.add(t.sign * e);
    abs_acc.add(e);
  }
  double s = signed_acc.value();
  double a = abs_acc.value();

  double condition = (s == 0.0) ? kCancellationSentinel : a / std::abs(s);
  if (condition > kEscalateCondition) {
    // Re-run with double-double exponentials; the shift keeps the dominant,
    // mutually cancelling terms exactly representable.
    DDouble sdd{0.0}, add{0.0};
    for (const auto& t : terms) {
      if (t.sign == 0) continue;
      DDouble e = dd_exp(dd_detail::two_sum(t.log_mag, -max_log));
      sdd = (t.sign > 0) ? sdd + e : sdd - e;
      add = add + e;
    }
    if (sdd.is_zero()) return {{0, 0.0}, kCancellationSentinel};
    condition = (add / dd_abs(sdd)).to_double();
    double mag = std::abs(sdd.hi);
    double log_s = std::log(mag) + std::log1p((sdd.hi < 0 ? -sdd.lo : sdd.lo) / mag);
    return {{sdd.hi > 0.0 ? 1 : -1, max_log + log_s}, std::max(condition, 1.0)};
  }

  if (s == 0.0) {
    // a > 0 here, so nonzero inputs cancelled exactly.
    return {{0, 0.0}, kCancellationSentinel};
  }
  return {{s > 0.0 ? 1 : -1, max_log + std::log(std::abs(s))},
          std::max(condition, 1.0)};
}

double assoc_laguerre(int p, int alpha, double x) {
  if (p < 0 || alpha < 0)
    throw std::domain_error("assoc_laguerre: negative degree or order");
  double lm1 = 1.0;  // L_0
  if (p == 0) return lm1;
  double l = 1.0 + alpha - x;  // L_1
  for (int n = 1; n < p; ++n) {
    double lp1 = ((2.0 * n + 1.0 + alpha - x) * l - (n + alpha) * lm1) / (n + 1.0);
    lm1 = l;
    l = lp1;
  }
  return l;
}

double assoc_laguerre_series(int p, int alpha, double x) {
  if (p < 0 || alpha < 0)
    throw std::domain_error("assoc_laguerre_series: negative degree or order");
  // Leading coefficient binomial(p+alpha, p) and successive monomial terms
  // from exact rational factors, accumulated in double-double; the
  // alternating sum would otherwise shed digits for large p*x and stop being
  // useful as a cross-check.
  DDouble term{1.0};
  for (int k = 1; k <= p; ++k)
    term = term * static_cast<double>(alpha + k) / static_cast<double>(k);
  DDouble sum = term;
  for (int i = 1; i <= p; ++i) {
    term = term * (-x) * static_cast<double>(p - i + 1) /
           static_cast<double>((alpha + i) * i);
    sum = sum + term;
  }
  return sum.to_double();
}

}  // namespace spdc

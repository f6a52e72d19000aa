#pragma once

#include <limits>
#include <span>

namespace spdc {

// Sign/log-magnitude representation of a real scalar. Sums of such values
// can be accumulated without overflow and with an explicit cancellation
// diagnostic, which is how every alternating factorial sum in this library
// is evaluated.
struct SignedLogValue {
  int sign = 0;          // -1, 0, +1; 0 means exactly zero
  double log_mag = 0.0;  // ln|x|; ignored when sign == 0

  static SignedLogValue encode(double x);
  double decode() const;
};

// Condition number reported when nonzero terms cancel to an exact zero.
inline constexpr double kCancellationSentinel =
    std::numeric_limits<double>::infinity();

// Above this condition number a plain double accumulation has lost more
// than ~4 significant digits and consumers re-evaluate in extended
// precision.
inline constexpr double kEscalateCondition = 1e12;

// Even the quad-double re-evaluation (~62 digits) cannot certify ten
// significant digits beyond this; radial indices around 20 reach 1e28.
inline constexpr double kConditionLimit = 1e45;

struct SignedLogSum {
  SignedLogValue value;
  double condition = 1.0;  // (sum |t|) / |sum t|, >= 1
};

// ln(n!). Table-driven for n <= 255, Stirling series beyond.
// Throws std::domain_error for negative n.
double log_factorial(int n);

// Sum of signed-log terms with its cancellation condition number.
// Escalates internally to double-double exponentials once the condition
// exceeds kEscalateCondition, treating the stored logs as exact.
SignedLogSum signed_log_sum(std::span<const SignedLogValue> terms);

// Associated Laguerre polynomial L_p^alpha(x) by the stable three-term
// recurrence in p. Integer alpha >= 0 only.
double assoc_laguerre(int p, int alpha, double x);

// Same polynomial by the explicit alternating sum over monomials. Loses
// digits for large p*x; kept as an independent cross-check path for tests.
double assoc_laguerre_series(int p, int alpha, double x);

}  // namespace spdc

#pragma once

#include <cmath>
#include <limits>

namespace spdc {

// Double-double value: the unevaluated sum hi + lo, |lo| <= ulp(hi)/2,
// giving roughly 31 significant decimal digits. Used as the software
// extended-precision type for re-evaluating catastrophically cancelling
// alternating sums. Algorithms follow the classic error-free transforms
// (Dekker/Knuth, as in the QD library).
struct DDouble {
  double hi = 0.0;
  double lo = 0.0;

  constexpr DDouble() = default;
  constexpr DDouble(double h) : hi(h), lo(0.0) {}
  constexpr DDouble(double h, double l) : hi(h), lo(l) {}

  double to_double() const { return hi + lo; }
  bool is_zero() const { return hi == 0.0; }
  bool is_finite() const { return std::isfinite(hi) && std::isfinite(lo); }
};

namespace dd_detail {

// s = fl(a+b), err = exact residual; no magnitude precondition.
inline DDouble two_sum(double a, double b) {
  double s = a + b;
  double bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

// Requires |a| >= |b| (or a == 0).
inline DDouble quick_two_sum(double a, double b) {
  double s = a + b;
  return {s, b - (s - a)};
}

// p = fl(a*b), err exact via FMA.
inline DDouble two_prod(double a, double b) {
  double p = a * b;
  return {p, std::fma(a, b, -p)};
}

}  // namespace dd_detail

inline DDouble operator+(DDouble a, DDouble b) {
  using namespace dd_detail;
  DDouble s = two_sum(a.hi, b.hi);
  DDouble t = two_sum(a.lo, b.lo);
  s.lo += t.hi;
  s = quick_two_sum(s.hi, s.lo);
  s.lo += t.lo;
  return quick_two_sum(s.hi, s.lo);
}

inline DDouble operator-(DDouble a) { return {-a.hi, -a.lo}; }
inline DDouble operator-(DDouble a, DDouble b) { return a + (-b); }

inline DDouble operator*(DDouble a, DDouble b) {
  using namespace dd_detail;
  DDouble p = two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return quick_two_sum(p.hi, p.lo);
}

inline DDouble operator/(DDouble a, DDouble b) {
  using namespace dd_detail;
  double q1 = a.hi / b.hi;
  DDouble r = a - DDouble(q1) * b;
  double q2 = r.hi / b.hi;
  r = r - DDouble(q2) * b;
  double q3 = r.hi / b.hi;
  DDouble q = quick_two_sum(q1, q2);
  return q + DDouble(q3);
}

inline DDouble operator*(DDouble a, double b) { return a * DDouble(b); }
inline DDouble operator*(double a, DDouble b) { return DDouble(a) * b; }
inline DDouble operator/(DDouble a, double b) { return a / DDouble(b); }
inline DDouble operator+(DDouble a, double b) { return a + DDouble(b); }
inline DDouble operator-(DDouble a, double b) { return a - DDouble(b); }

inline bool operator<(DDouble a, DDouble b) {
  return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo);
}
inline bool operator>(DDouble a, DDouble b) { return b < a; }

inline DDouble dd_abs(DDouble a) { return a.hi < 0.0 ? -a : a; }

inline DDouble dd_ldexp(DDouble a, int n) {
  return {std::ldexp(a.hi, n), std::ldexp(a.lo, n)};
}

// ln 2 to double-double precision.
inline constexpr DDouble kDDLn2{6.931471805599452862e-01, 2.319046813846299558e-17};

// exp(a). Range reduction a = m ln2 + r, |r| <= ln2/2, then a short Taylor
// series on r/512 squared back up nine times.
inline DDouble dd_exp(DDouble a) {
  if (a.hi <= -709.0) return {0.0, 0.0};
  if (a.hi >= 709.0) return {std::numeric_limits<double>::infinity(), 0.0};
  double m = std::floor(a.hi / kDDLn2.hi + 0.5);
  DDouble r = dd_ldexp(a - kDDLn2 * m, -9);

  // exp(r) - 1 by Taylor; |r| <= ln2/1024 so a handful of terms suffice.
  DDouble p = r * r * 0.5;
  DDouble s = r + p;
  DDouble term = p;
  double fact = 2.0;
  for (int k = 3; k <= 9; ++k) {
    fact += 1.0;
    term = term * r / fact;
    s = s + term;
    if (std::abs(term.hi) < 1e-40) break;
  }
  // (1+s)^(2^9) - 1 via repeated squaring of the offset form.
  for (int k = 0; k < 9; ++k) s = s * 2.0 + s * s;
  s = s + 1.0;
  return dd_ldexp(s, static_cast<int>(m));
}

// ln(a) for a > 0: double-precision seed refined by one Newton step
// x <- x + a e^{-x} - 1, which doubles the accurate digit count.
inline DDouble dd_log(DDouble a) {
  DDouble x{std::log(a.hi), 0.0};
  x = x + a * dd_exp(-x) - 1.0;
  return x;
}

}  // namespace spdc

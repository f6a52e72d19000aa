#pragma once

#include <cmath>

#include "spdc/ddouble.hpp"

namespace spdc {

// Quad-double value: unevaluated sum of four non-overlapping doubles,
// roughly 62 significant decimal digits. Only the ring operations are
// provided; this exists solely to re-evaluate alternating sums whose
// cancellation exceeds what double-double can absorb (conditions beyond
// ~1e18 appear already at radial indices around 15). Algorithms follow
// Hida, Li & Bailey's quad-double arithmetic.
struct QDouble {
  double c[4] = {0.0, 0.0, 0.0, 0.0};

  constexpr QDouble() = default;
  constexpr QDouble(double x) : c{x, 0.0, 0.0, 0.0} {}
  constexpr QDouble(double a, double b, double d, double e) : c{a, b, d, e} {}

  double to_double() const { return c[0] + c[1] + c[2] + c[3]; }
  bool is_zero() const { return c[0] == 0.0; }
  bool is_finite() const {
    return std::isfinite(c[0]) && std::isfinite(c[1]) && std::isfinite(c[2]) &&
           std::isfinite(c[3]);
  }
};

namespace qd_detail {

using dd_detail::quick_two_sum;
using dd_detail::two_prod;
using dd_detail::two_sum;

inline double two_sum_e(double a, double b, double& err) {
  DDouble r = two_sum(a, b);
  err = r.lo;
  return r.hi;
}

inline double quick_two_sum_e(double a, double b, double& err) {
  DDouble r = quick_two_sum(a, b);
  err = r.lo;
  return r.hi;
}

inline double two_prod_e(double a, double b, double& err) {
  DDouble r = two_prod(a, b);
  err = r.lo;
  return r.hi;
}

inline void three_sum(double& a, double& b, double& c) {
  double t1, t2, t3;
  t1 = two_sum_e(a, b, t2);
  a = two_sum_e(c, t1, t3);
  b = two_sum_e(t2, t3, c);
}

inline void three_sum2(double& a, double& b, double c) {
  double t1, t2, t3;
  t1 = two_sum_e(a, b, t2);
  a = two_sum_e(c, t1, t3);
  b = t2 + t3;
}

inline void renorm(double& c0, double& c1, double& c2, double& c3, double c4) {
  double s0, s1, s2 = 0.0, s3 = 0.0;
  if (std::isinf(c0)) return;

  s0 = quick_two_sum_e(c3, c4, c4);
  s0 = quick_two_sum_e(c2, s0, c3);
  s0 = quick_two_sum_e(c1, s0, c2);
  c0 = quick_two_sum_e(c0, s0, c1);

  s0 = quick_two_sum_e(c0, c1, s1);
  if (s1 != 0.0) {
    s1 = quick_two_sum_e(s1, c2, s2);
    if (s2 != 0.0) {
      s2 = quick_two_sum_e(s2, c3, s3);
      if (s3 != 0.0)
        s3 += c4;
      else
        s2 += c4;
    } else {
      s1 = quick_two_sum_e(s1, c3, s2);
      if (s2 != 0.0)
        s2 = quick_two_sum_e(s2, c4, s3);
      else
        s1 = quick_two_sum_e(s1, c4, s2);
    }
  } else {
    s0 = quick_two_sum_e(s0, c2, s1);
    if (s1 != 0.0) {
      s1 = quick_two_sum_e(s1, c3, s2);
      if (s2 != 0.0)
        s2 = quick_two_sum_e(s2, c4, s3);
      else
        s1 = quick_two_sum_e(s1, c4, s2);
    } else {
      s0 = quick_two_sum_e(s0, c3, s1);
      if (s1 != 0.0)
        s1 = quick_two_sum_e(s1, c4, s2);
      else
        s0 = quick_two_sum_e(s0, c4, s1);
    }
  }
  c0 = s0;
  c1 = s1;
  c2 = s2;
  c3 = s3;
}

inline void renorm4(double& c0, double& c1, double& c2, double& c3) {
  double s0, s1, s2 = 0.0, s3 = 0.0;
  if (std::isinf(c0)) return;

  s0 = quick_two_sum_e(c2, c3, c3);
  s0 = quick_two_sum_e(c1, s0, c2);
  c0 = quick_two_sum_e(c0, s0, c1);

  s0 = quick_two_sum_e(c0, c1, s1);
  if (s1 != 0.0) {
    s1 = quick_two_sum_e(s1, c2, s2);
    if (s2 != 0.0)
      s2 = quick_two_sum_e(s2, c3, s3);
    else
      s1 = quick_two_sum_e(s1, c3, s2);
  } else {
    s0 = quick_two_sum_e(s0, c2, s1);
    if (s1 != 0.0)
      s1 = quick_two_sum_e(s1, c3, s2);
    else
      s0 = quick_two_sum_e(s0, c3, s1);
  }
  c0 = s0;
  c1 = s1;
  c2 = s2;
  c3 = s3;
}

}  // namespace qd_detail

inline QDouble operator+(const QDouble& a, const QDouble& b) {
  using namespace qd_detail;
  double s0 = a.c[0] + b.c[0];
  double s1 = a.c[1] + b.c[1];
  double s2 = a.c[2] + b.c[2];
  double s3 = a.c[3] + b.c[3];

  double v0 = s0 - a.c[0];
  double v1 = s1 - a.c[1];
  double v2 = s2 - a.c[2];
  double v3 = s3 - a.c[3];

  double u0 = s0 - v0;
  double u1 = s1 - v1;
  double u2 = s2 - v2;
  double u3 = s3 - v3;

  double w0 = a.c[0] - u0;
  double w1 = a.c[1] - u1;
  double w2 = a.c[2] - u2;
  double w3 = a.c[3] - u3;

  u0 = b.c[0] - v0;
  u1 = b.c[1] - v1;
  u2 = b.c[2] - v2;
  u3 = b.c[3] - v3;

  double t0 = w0 + u0;
  double t1 = w1 + u1;
  double t2 = w2 + u2;
  double t3 = w3 + u3;

  s1 = two_sum_e(s1, t0, t0);
  three_sum(s2, t0, t1);
  three_sum2(s3, t0, t2);
  t0 = t0 + t1 + t3;

  renorm(s0, s1, s2, s3, t0);
  return {s0, s1, s2, s3};
}

inline QDouble operator-(const QDouble& a) {
  return {-a.c[0], -a.c[1], -a.c[2], -a.c[3]};
}
inline QDouble operator-(const QDouble& a, const QDouble& b) { return a + (-b); }

inline QDouble operator*(const QDouble& a, double b) {
  using namespace qd_detail;
  double q0, q1, q2;
  double p0 = two_prod_e(a.c[0], b, q0);
  double p1 = two_prod_e(a.c[1], b, q1);
  double p2 = two_prod_e(a.c[2], b, q2);
  double p3 = a.c[3] * b;

  double s0 = p0;
  double s2;
  double s1 = two_sum_e(q0, p1, s2);

  three_sum(s2, q1, p2);
  three_sum2(q1, q2, p3);
  double s3 = q1;
  double s4 = q2 + p2;

  renorm(s0, s1, s2, s3, s4);
  return {s0, s1, s2, s3};
}

inline QDouble operator*(const QDouble& a, const QDouble& b) {
  using namespace qd_detail;
  double q0, q1, q2, q3, q4, q5;
  double p0 = two_prod_e(a.c[0], b.c[0], q0);
  double p1 = two_prod_e(a.c[0], b.c[1], q1);
  double p2 = two_prod_e(a.c[1], b.c[0], q2);
  double p3 = two_prod_e(a.c[0], b.c[2], q3);
  double p4 = two_prod_e(a.c[1], b.c[1], q4);
  double p5 = two_prod_e(a.c[2], b.c[0], q5);

  three_sum(p1, p2, q0);

  three_sum(p2, q1, q2);
  three_sum(p3, p4, p5);
  double t0, t1;
  double s0 = two_sum_e(p2, p3, t0);
  double s1 = two_sum_e(q1, p4, t1);
  double s2 = q2 + p5;
  s1 = two_sum_e(s1, t0, t0);
  s2 += (t0 + t1);

  s1 += a.c[0] * b.c[3] + a.c[1] * b.c[2] + a.c[2] * b.c[1] + a.c[3] * b.c[0] +
        q0 + q3 + q4 + q5;
  renorm(p0, p1, s0, s1, s2);
  return {p0, p1, s0, s1};
}

inline QDouble operator/(const QDouble& a, const QDouble& b) {
  using namespace qd_detail;
  double q0 = a.c[0] / b.c[0];
  QDouble r = a - b * q0;
  double q1 = r.c[0] / b.c[0];
  r = r - b * q1;
  double q2 = r.c[0] / b.c[0];
  r = r - b * q2;
  double q3 = r.c[0] / b.c[0];
  renorm4(q0, q1, q2, q3);
  return {q0, q1, q2, q3};
}

inline QDouble operator/(const QDouble& a, double b) { return a / QDouble(b); }

inline QDouble qd_abs(const QDouble& a) { return a.c[0] < 0.0 ? -a : a; }

inline QDouble qd_from_dd(const DDouble& a) { return {a.hi, a.lo, 0.0, 0.0}; }

}  // namespace spdc

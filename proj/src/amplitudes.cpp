#include "spdc/amplitudes.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "spdc/ddouble.hpp"
#include "spdc/qdouble.hpp"
#include "spdc/errors.hpp"
#include "spdc/specfun.hpp"

namespace spdc {

namespace {

void check_triple(ModeIndex pump, ModeIndex signal, ModeIndex idler) {
  if (pump.p < 0 || signal.p < 0 || idler.p < 0)
    throw std::domain_error("coincidence: radial indices must be >= 0");
}

CoincidenceAmplitude zero_amplitude(AmplitudePath path) {
  return {{0.0, 0.0}, 1.0, path};
}

// Each term's log assembles nine log-factorials, leaving ~1e-14 relative
// error per term; the summed value then drifts by ~1e-14 * condition.
// Re-evaluating beyond 1e5 keeps every amplitude good to ~1e-9 relative,
// which the oracle comparison at 1e-8 needs. (Conditions around 1e8 already
// occur at radial indices of 3.)
constexpr double kAmplitudeEscalate = 1e5;

// Half of |l_p|+|l_s|+|l_i|, asserted integral. Conservation makes the sum
// even; hitting the throw would mean a caller bypassed the delta check.
int sigma_ell(int lp, int ls, int li) {
  int s = std::abs(lp) + std::abs(ls) + std::abs(li);
  if (s % 2 != 0)
    throw std::logic_error("sigma_ell: |l_p|+|l_s|+|l_i| odd despite OAM conservation");
  return s / 2;
}

// Triple sum re-evaluated in quad-double, with each term rebuilt from exact
// rational factor recurrences relative to the (0,0,0) term rather than from
// its double log. Conditions reach ~1e28 at radial indices around 20, which
// the ~62 quad-double digits absorb while still certifying 1e-10.
struct EscalatedSum {
  QDouble sum{0.0};
  QDouble abs_sum{0.0};
};

EscalatedSum triple_sum_escalated(int sigma, ModeIndex pump, ModeIndex signal,
                                  ModeIndex idler, double gs, double gi) {
  const int lp = std::abs(pump.ell), ls = std::abs(signal.ell),
            li = std::abs(idler.ell);
  const QDouble gs2 = qd_from_dd(dd_detail::two_prod(gs, gs));
  const QDouble gi2 = qd_from_dd(dd_detail::two_prod(gi, gi));
  const QDouble denom = QDouble(1.0) + gs2 + gi2;
  const QDouble fk_base = QDouble(-2.0) / denom;
  const QDouble fi_base = gs2 * fk_base;
  const QDouble fj_base = gi2 * fk_base;

  EscalatedSum out;
  QDouble tk{1.0};  // term at (k, 0, 0) relative to (0, 0, 0)
  for (int k = 0; k <= pump.p; ++k) {
    if (k > 0)
      tk = tk * fk_base * static_cast<double>(sigma + k) *
           static_cast<double>(pump.p - k + 1) /
           static_cast<double>((lp + k) * k);
    QDouble ti = tk;
    for (int i = 0; i <= signal.p; ++i) {
      if (i > 0)
        ti = ti * fi_base * static_cast<double>(sigma + k + i) *
             static_cast<double>(signal.p - i + 1) /
             static_cast<double>((ls + i) * i);
      QDouble tj = ti;
      for (int j = 0; j <= idler.p; ++j) {
        if (j > 0)
          tj = tj * fj_base * static_cast<double>(sigma + k + i + j) *
               static_cast<double>(idler.p - j + 1) /
               static_cast<double>((li + j) * j);
        out.sum = out.sum + tj;
        out.abs_sum = out.abs_sum + qd_abs(tj);
      }
    }
  }
  return out;
}

}  // namespace

CoincidenceAmplitude coincidence_general(ModeIndex pump, ModeIndex signal,
                                         ModeIndex idler,
                                         const BeamWidths& widths) {
  widths.validate();
  check_triple(pump, signal, idler);
  if (pump.ell != signal.ell + idler.ell)
    return zero_amplitude(AmplitudePath::general);

  const int sigma = sigma_ell(pump.ell, signal.ell, idler.ell);
  const int lp = std::abs(pump.ell), ls = std::abs(signal.ell),
            li = std::abs(idler.ell);
  const double gs = widths.gamma_s, gi = widths.gamma_i;
  const double log_gs = std::log(gs), log_gi = std::log(gi);
  const double log_denom = std::log1p(gs * gs + gi * gi);

  // Triple sum in signed-log space.
  std::vector<SignedLogValue> terms;
  terms.reserve((pump.p + 1) * (signal.p + 1) * (idler.p + 1));
  for (int k = 0; k <= pump.p; ++k)
    for (int i = 0; i <= signal.p; ++i)
      for (int j = 0; j <= idler.p; ++j) {
        int m = k + i + j;
        double lm = m * (std::numbers::ln2 - log_denom) + 2.0 * i * log_gs +
                    2.0 * j * log_gi + log_factorial(sigma + m) -
                    log_factorial(pump.p - k) - log_factorial(lp + k) -
                    log_factorial(k) - log_factorial(signal.p - i) -
                    log_factorial(ls + i) - log_factorial(i) -
                    log_factorial(idler.p - j) - log_factorial(li + j) -
                    log_factorial(j);
        terms.push_back({m % 2 == 0 ? 1 : -1, lm});
      }
  SignedLogSum s = signed_log_sum(terms);

  if (s.condition > kAmplitudeEscalate) {
    EscalatedSum es = triple_sum_escalated(sigma, pump, signal, idler, gs, gi);
    if (!es.sum.is_finite() || !es.abs_sum.is_finite())
      throw CancellationError(
          "coincidence amplitude: extended-precision re-evaluation overflowed",
          kCancellationSentinel);
    // Below ~1e-50 of the term scale the sum is zero to every digit
    // quad-double can see; such exact rational zeros do occur (e.g. the
    // (p_s, p_i) = (1, 1) node at gamma_s = 1, gamma_i = 2, |l_s| = 1) and
    // they are values, not failures.
    double ratio = es.sum.is_zero()
                       ? 0.0
                       : (qd_abs(es.sum) / es.abs_sum).to_double();
    if (ratio < 1e-50)
      return {{0.0, 0.0}, kCancellationSentinel, AmplitudePath::general};
    double cond = 1.0 / ratio;
    if (cond > kConditionLimit) {
      std::ostringstream msg;
      msg << "coincidence amplitude: alternating sum cancels beyond extended "
             "precision (condition "
          << cond << ")";
      throw CancellationError(msg.str(), cond);
    }
    // Fold the (0,0,0) reference term back in; it is positive, so only the
    // log magnitude moves.
    double log_t0 = log_factorial(sigma) - log_factorial(pump.p) -
                    log_factorial(lp) - log_factorial(signal.p) -
                    log_factorial(ls) - log_factorial(idler.p) -
                    log_factorial(li);
    QDouble mag = qd_abs(es.sum);
    double log_sum = std::log(mag.c[0]) +
                     std::log1p((mag - QDouble(mag.c[0])).to_double() / mag.c[0]);
    s.value = {es.sum.c[0] > 0.0 ? 1 : -1, log_t0 + log_sum};
    s.condition = std::max(cond, 1.0);
  }

  if (s.value.sign == 0) return {{0.0, 0.0}, s.condition, AmplitudePath::general};

  double log_pref =
      0.5 * (std::numbers::ln2 - std::log(std::numbers::pi)) -
      std::log(widths.w_p) + (sigma + 1) * (std::numbers::ln2 - log_denom) +
      (ls + 1) * log_gs + (li + 1) * log_gi +
      0.5 * (log_factorial(pump.p) + log_factorial(signal.p) +
             log_factorial(idler.p) + log_factorial(lp + pump.p) +
             log_factorial(ls + signal.p) + log_factorial(li + idler.p));

  double value = s.value.sign * std::exp(log_pref + s.value.log_mag);
  return {{value, 0.0}, s.condition, AmplitudePath::general};
}

CoincidenceAmplitude coincidence_gaussian_pump(int ell,
                                               const BeamWidths& widths) {
  widths.validate();
  if (widths.gamma_s != widths.gamma_i)
    throw std::domain_error(
        "coincidence_gaussian_pump: defined only for gamma_s == gamma_i");
  double g2 = widths.gamma_s * widths.gamma_s;
  double base = 2.0 * g2 / (1.0 + 2.0 * g2);
  double value = std::sqrt(2.0 / (std::numbers::pi * widths.w_p * widths.w_p)) *
                 std::pow(base, std::abs(ell) + 1);
  return {{value, 0.0}, 1.0, AmplitudePath::gaussian_pump};
}

CoincidenceAmplitude coincidence_p_zero(int ell_p, int ell_s, int ell_i,
                                        const BeamWidths& widths) {
  widths.validate();
  if (ell_p != ell_s + ell_i) return zero_amplitude(AmplitudePath::p_zero);
  const int sigma = sigma_ell(ell_p, ell_s, ell_i);
  const int lp = std::abs(ell_p), ls = std::abs(ell_s), li = std::abs(ell_i);
  const double gs = widths.gamma_s, gi = widths.gamma_i;
  double log_denom = std::log1p(gs * gs + gi * gi);
  double log_value = 0.5 * (std::numbers::ln2 - std::log(std::numbers::pi)) -
                     std::log(widths.w_p) +
                     (sigma + 1) * (std::numbers::ln2 - log_denom) +
                     (ls + 1) * std::log(gs) + (li + 1) * std::log(gi) +
                     log_factorial(sigma) -
                     0.5 * (log_factorial(lp) + log_factorial(ls) +
                            log_factorial(li));
  return {{std::exp(log_value), 0.0}, 1.0, AmplitudePath::p_zero};
}

CoincidenceAmplitude coincidence_closed(ModeIndex pump, ModeIndex signal,
                                        ModeIndex idler,
                                        const BeamWidths& widths) {
  widths.validate();
  check_triple(pump, signal, idler);
  bool p_free = pump.p == 0 && signal.p == 0 && idler.p == 0;
  if (pump.ell == 0 && p_free && widths.gamma_s == widths.gamma_i) {
    if (signal.ell + idler.ell != 0)
      return zero_amplitude(AmplitudePath::gaussian_pump);
    return coincidence_gaussian_pump(signal.ell, widths);
  }
  if (p_free) return coincidence_p_zero(pump.ell, signal.ell, idler.ell, widths);
  return coincidence_general(pump, signal, idler, widths);
}

CoincidenceAmplitude coincidence_superposition(const PumpSpec& pump,
                                               ModeIndex signal,
                                               ModeIndex idler,
                                               const BeamWidths& widths) {
  if (pump.components.empty())
    throw std::domain_error("coincidence_superposition: pump has no components");
  if (pump.components.size() == 1 &&
      pump.components[0].amplitude == std::complex<double>(1.0, 0.0))
    return coincidence_closed(pump.components[0].mode, signal, idler, widths);

  std::complex<double> total = 0.0;
  double worst = 1.0;
  for (const auto& c : pump.components) {
    CoincidenceAmplitude a = coincidence_closed(c.mode, signal, idler, widths);
    total += c.amplitude * a.value;
    worst = std::max(worst, a.condition);
  }
  return {total, worst, AmplitudePath::general};
}

}  // namespace spdc

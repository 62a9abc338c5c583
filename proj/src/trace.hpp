#ifndef SEMLAB_TRACE_HPP
#define SEMLAB_TRACE_HPP

#include <complex>
#include <string>
#include <vector>

#include "nodal.hpp"

namespace semlab {

// Fourier side of the normalized trace F_h(t) = phi(q(t)) / ||phi||_{L2(H)},
// with the admissible strip half-width derived from the coefficient decay.
struct ComplexTrace {
  std::vector<cd> coeff;  // c_k, |k| <= K, index k+K
  int K = 0;
  double norm_h = 0.0;    // normalization ||phi||_{L2(H)}
  double rho_hat = 0.0;   // fitted e-folding scale of |c_k|
  double tau_adm = 0.0;   // 0.5 * rho_hat, capped
  bool non_analytic = false;  // no measurable coefficient decay
  double tail_bound(double tau) const;  // extrapolated truncation tail
};

ComplexTrace build_trace(const CurveSamples &samples, double tau_cap = 2.0);

// Direct construction from raw periodic samples (revolution cross-checks,
// synthetic traces in tests).
ComplexTrace build_trace_from_values(const std::vector<double> &values,
                                     const std::vector<double> &weights,
                                     double tau_cap = 2.0);

cd eval_strip(const ComplexTrace &trace, cd t);

// Zeros of F^C in [0,2pi) x (-tau,tau) by the argument principle:
// winding along Im t = -tau minus winding along Im t = +tau.
int count_strip_zeros(const ComplexTrace &trace, double tau);

// max log|F^C| over the strip, 512x64 grid plus local ascent
double strip_log_max(const ComplexTrace &trace, double tau);

struct JensenRow {
  double h = 0.0;
  int zeros = 0;
  double log_max = 0.0;
  double ratio = 0.0;  // zeros / max(1, log_max)
  bool ok = false;
  std::string note;
};

std::vector<JensenRow> jensen_report(const std::vector<std::pair<double, ComplexTrace>> &traces,
                                     double tau);

}  // namespace semlab

#endif

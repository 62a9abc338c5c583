#ifndef SEMLAB_RATES_HPP
#define SEMLAB_RATES_HPP

#include <vector>

namespace semlab {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  double residual_max = 0.0;
  int points = 0;
};

// ordinary least squares y ~ slope*x + intercept
LineFit fit_line(const std::vector<double> &x, const std::vector<double> &y);

// exponential-rate fit: -log q ~ beta / h, i.e. slope of -log q against 1/h.
// Nonpositive or nonfinite q entries are skipped; throws InsufficientData when
// fewer than 3 remain.
LineFit fit_rate(const std::vector<double> &h, const std::vector<double> &q);

// same but with log-quantities supplied directly (for values that underflow)
LineFit fit_rate_log(const std::vector<double> &h, const std::vector<double> &log_q);

}  // namespace semlab

#endif

#include "rates.hpp"

#include <cmath>

#include "errors.hpp"

namespace semlab {

LineFit fit_line(const std::vector<double> &x, const std::vector<double> &y) {
  require(x.size() == y.size(), ErrorCode::invalid_argument, "fit arrays mismatch");
  const int n = static_cast<int>(x.size());
  require(n >= 2, ErrorCode::insufficient_data, "need >= 2 points for a line fit");
  double sx = 0, sy = 0;
  for (int i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (int i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  require(sxx > 0.0, ErrorCode::insufficient_data, "degenerate abscissae in fit");
  LineFit f;
  f.points = n;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss_res = 0.0;
  for (int i = 0; i < n; ++i) {
    const double r = y[i] - (f.slope * x[i] + f.intercept);
    ss_res += r * r;
    f.residual_max = std::max(f.residual_max, std::abs(r));
  }
  f.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  return f;
}

LineFit fit_rate(const std::vector<double> &h, const std::vector<double> &q) {
  std::vector<double> x, y;
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (!(q[i] > 0.0) || !std::isfinite(q[i]) || !std::isfinite(h[i])) continue;
    x.push_back(1.0 / h[i]);
    y.push_back(-std::log(q[i]));
  }
  require(x.size() >= 3, ErrorCode::insufficient_data,
          "need >= 3 positive finite points for a rate fit");
  return fit_line(x, y);
}

LineFit fit_rate_log(const std::vector<double> &h, const std::vector<double> &log_q) {
  std::vector<double> x, y;
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (!std::isfinite(log_q[i]) || !std::isfinite(h[i])) continue;
    x.push_back(1.0 / h[i]);
    y.push_back(-log_q[i]);
  }
  require(x.size() >= 3, ErrorCode::insufficient_data,
          "need >= 3 finite points for a rate fit");
  return fit_line(x, y);
}

}  // namespace semlab

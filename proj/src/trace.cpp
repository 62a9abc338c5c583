#include "trace.hpp"

#include <algorithm>
#include <cmath>

#include "rates.hpp"

namespace semlab {

namespace {

ComplexTrace trace_from_normalized(const std::vector<double> &f, double norm_h,
                                   double tau_cap) {
  const int n = static_cast<int>(f.size());
  ComplexTrace tr;
  tr.norm_h = norm_h;
  tr.K = n / 2 - 1;
  tr.coeff.assign(2 * tr.K + 1, cd(0.0, 0.0));
  const double dt = 2.0 * M_PI / n;
  for (int k = -tr.K; k <= tr.K; ++k) {
    cd acc = 0.0;
    for (int i = 0; i < n; ++i) acc += f[i] * std::polar(1.0, -k * (i * dt));
    tr.coeff[k + tr.K] = acc / static_cast<double>(n);
  }

  // coefficient decay over the top half of the spectrum
  double cmax = 0.0;
  for (const cd &c : tr.coeff) cmax = std::max(cmax, std::abs(c));
  std::vector<double> ks, logs;
  for (int k = std::max(1, tr.K / 2); k <= tr.K; ++k) {
    const double a = std::max(std::abs(tr.coeff[k + tr.K]), std::abs(tr.coeff[-k + tr.K]));
    if (a > 1e-13 * cmax) {
      ks.push_back(k);
      logs.push_back(std::log(a));
    }
  }
  if (ks.size() >= 3) {
    const LineFit fit = fit_line(ks, logs);
    tr.rho_hat = -fit.slope;
  } else {
    // spectrum already at the roundoff floor: effectively entire
    tr.rho_hat = 2.0 * tau_cap;
  }
  if (tr.rho_hat < 1e-3) tr.non_analytic = true;
  tr.tau_adm = std::min(0.5 * std::max(tr.rho_hat, 0.0), tau_cap);
  return tr;
}

}  // namespace

double ComplexTrace::tail_bound(double tau) const {
  // extrapolate |c_k| ~ cmax e^{-rho (k - K)} beyond the truncation
  double edge = 0.0;
  for (int k = K - 2; k <= K; ++k)
    edge = std::max(edge, std::abs(coeff[k + this->K]));
  const double decay = rho_hat - tau;
  if (decay <= 0.0) return std::numeric_limits<double>::infinity();
  return edge * std::exp(tau * K) * std::exp(-decay) / (1.0 - std::exp(-decay));
}

ComplexTrace build_trace(const CurveSamples &samples, double tau_cap) {
  const RestrictionNorms norms = restriction_norms(samples);
  require(norms.phi > 0.0, ErrorCode::zero_trace, "trace samples are identically zero");
  std::vector<double> f(samples.phi.size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = samples.phi[i] / norms.phi;
  return trace_from_normalized(f, norms.phi, tau_cap);
}

ComplexTrace build_trace_from_values(const std::vector<double> &values,
                                     const std::vector<double> &weights, double tau_cap) {
  require(values.size() == weights.size() && !values.empty(), ErrorCode::invalid_argument,
          "trace values/weights mismatch");
  double norm = 0.0, vmax = 0.0;
  for (double v : values) vmax = std::max(vmax, std::abs(v));
  require(vmax > 0.0, ErrorCode::zero_trace, "trace samples are identically zero");
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double r = values[i] / vmax;
    norm += r * r * weights[i];
  }
  norm = vmax * std::sqrt(norm);
  std::vector<double> f(values.size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = values[i] / norm;
  return trace_from_normalized(f, norm, tau_cap);
}

cd eval_strip(const ComplexTrace &trace, cd t) {
  require(std::abs(t.imag()) <= trace.tau_adm + 1e-12, ErrorCode::strip_exceeded,
          "|Im t| exceeds the admissible strip half-width");
  const cd I(0.0, 1.0);
  cd acc = 0.0;
  for (int k = -trace.K; k <= trace.K; ++k)
    acc += trace.coeff[k + trace.K] * std::exp(I * (static_cast<double>(k) * t));
  return acc;
}

namespace {

// winding number of t -> F(t + i*im) over one period, by phase unwrapping;
// doubles the sampling until each step turns by < pi/2
double edge_winding(const ComplexTrace &trace, double im, int samples, int max_doublings) {
  for (int attempt = 0; attempt <= max_doublings; ++attempt, samples *= 2) {
    cd prev = eval_strip(trace, cd(0.0, im));
    double total = 0.0;
    bool ok = true;
    for (int i = 1; i <= samples; ++i) {
      const double t = 2.0 * M_PI * i / samples;
      const cd cur = eval_strip(trace, cd(t, im));
      const double da = std::arg(cur / prev);
      if (std::abs(da) >= 0.5 * M_PI) {
        ok = false;
        break;
      }
      total += da;
      prev = cur;
    }
    if (ok) return total / (2.0 * M_PI);
  }
  fail(ErrorCode::contour_zero,
       "winding sampling did not stabilize; a zero may sit on the contour");
}

}  // namespace

int count_strip_zeros(const ComplexTrace &trace, double tau) {
  require(tau > 0.0 && tau <= trace.tau_adm + 1e-12, ErrorCode::strip_exceeded,
          "tau outside the admissible strip");
  // contour clearance check on both horizontal edges
  const int m = std::max(256, 8 * trace.K);
  double fmin = std::numeric_limits<double>::infinity(), fmax = 0.0;
  for (int side = 0; side < 2; ++side) {
    const double im = side == 0 ? -tau : tau;
    for (int i = 0; i < m; ++i) {
      const double a = std::abs(eval_strip(trace, cd(2.0 * M_PI * i / m, im)));
      fmin = std::min(fmin, a);
      fmax = std::max(fmax, a);
    }
  }
  require(fmin > 1e-10 * fmax, ErrorCode::contour_zero,
          "contour modulus below threshold; shrink tau");

  const double wb = edge_winding(trace, -tau, m, 6);
  const double wt = edge_winding(trace, tau, m, 6);
  const double count = wb - wt;
  const long rounded = std::lround(count);
  require(std::abs(count - rounded) < 0.1, ErrorCode::internal,
          "non-integer winding difference");
  return static_cast<int>(rounded);
}

double strip_log_max(const ComplexTrace &trace, double tau) {
  require(tau >= 0.0 && tau <= trace.tau_adm + 1e-12, ErrorCode::strip_exceeded,
          "tau outside the admissible strip");
  const int nre = 512, nim = 64;
  double best = -std::numeric_limits<double>::infinity();
  double bt = 0.0, bs = 0.0;
  for (int i = 0; i < nre; ++i) {
    const double t = 2.0 * M_PI * i / nre;
    for (int j = 0; j <= nim; ++j) {
      const double s = nim == 0 ? 0.0 : -tau + 2.0 * tau * j / nim;
      const double a = std::abs(eval_strip(trace, cd(t, s)));
      if (a > 0.0 && std::log(a) > best) {
        best = std::log(a);
        bt = t;
        bs = s;
      }
    }
  }
  // local ascent with shrinking steps, clamped to the strip
  double step_t = 2.0 * M_PI / nre, step_s = tau > 0.0 ? 2.0 * tau / nim : 0.0;
  for (int round = 0; round < 40; ++round) {
    bool improved = false;
    for (const auto &[dt, ds] : {std::pair{step_t, 0.0}, {-step_t, 0.0},
                                 {0.0, step_s}, {0.0, -step_s}}) {
      const double t = bt + dt;
      const double s = std::clamp(bs + ds, -tau, tau);
      const double a = std::abs(eval_strip(trace, cd(t, s)));
      if (a > 0.0 && std::log(a) > best) {
        best = std::log(a);
        bt = t;
        bs = s;
        improved = true;
      }
    }
    if (!improved) {
      step_t *= 0.5;
      step_s *= 0.5;
      if (step_t < 1e-3 * 2.0 * M_PI / nre && (tau == 0.0 || step_s < 1e-3 * tau))
        break;  // refined to relative 1e-3 of the grid scale
    }
  }
  return best;
}

std::vector<JensenRow> jensen_report(const std::vector<std::pair<double, ComplexTrace>> &traces,
                                     double tau) {
  std::vector<JensenRow> rows;
  for (const auto &[h, tr] : traces) {
    JensenRow row;
    row.h = h;
    try {
      const double t = std::min(tau, tr.tau_adm);
      row.zeros = count_strip_zeros(tr, t);
      row.log_max = strip_log_max(tr, t);
      row.ratio = row.zeros / std::max(1.0, row.log_max);
      row.ok = true;
    } catch (const Error &e) {
      row.note = std::string(error_code_name(e.code())) + ": " + e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace semlab

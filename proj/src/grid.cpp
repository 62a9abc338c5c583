#include "grid.hpp"

#include <fftw3.h>

#include <algorithm>
#include <mutex>
#include <numeric>

namespace semlab {

double Field2D::max_abs() const {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double Field2D::min() const { return *std::min_element(v.begin(), v.end()); }
double Field2D::max() const { return *std::max_element(v.begin(), v.end()); }

double Field2D::mean() const {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double Field2D::norm2() const {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double Field2D::bilinear(double x, double y) const {
  const int n = dom.n;
  const double dx = dom.dx();
  double fx = (dom.wrap(x) + 0.5 * dom.length) / dx;
  double fy = (dom.wrap(y) + 0.5 * dom.length) / dx;
  int i = static_cast<int>(std::floor(fx));
  int j = static_cast<int>(std::floor(fy));
  double sx = fx - i, sy = fy - j;
  i = dom.wrap_index(i);
  j = dom.wrap_index(j);
  int i1 = dom.wrap_index(i + 1), j1 = dom.wrap_index(j + 1);
  (void)n;
  return (1 - sx) * (1 - sy) * at(i, j) + sx * (1 - sy) * at(i1, j) +
         (1 - sx) * sy * at(i, j1) + sx * sy * at(i1, j1);
}

double dot(const Field2D &a, const Field2D &b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.v.size(); ++k) s += a.v[k] * b.v[k];
  return s;
}

void axpy(double alpha, const Field2D &x, Field2D &y) {
  for (std::size_t k = 0; k < x.v.size(); ++k) y.v[k] += alpha * x.v[k];
}

// fftw plan creation is not thread-safe; executes are.
static std::mutex &fftw_mutex() {
  static std::mutex m;
  return m;
}

struct Spectral::Fftw {
  fftw_complex *buf = nullptr;
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
  int n = 0;

  explicit Fftw(int n_) : n(n_) {
    std::lock_guard<std::mutex> lock(fftw_mutex());
    buf = fftw_alloc_complex(static_cast<std::size_t>(n) * n);
    fwd = fftw_plan_dft_2d(n, n, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
    bwd = fftw_plan_dft_2d(n, n, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  ~Fftw() {
    std::lock_guard<std::mutex> lock(fftw_mutex());
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(bwd);
    fftw_free(buf);
  }
};

Spectral::Spectral(const TorusDomain &d) : dom_(d) {
  dom_.validate();
  const int n = dom_.n;
  xi_.resize(n);
  const double base = 2.0 * M_PI / dom_.length;
  for (int k = 0; k < n; ++k) {
    int s = (k <= n / 2) ? k : k - n;
    if (k == n / 2) s = n / 2;  // Nyquist: magnitude used in symbols only
    xi_[k] = base * s;
  }
  lap_sym_.resize(dom_.size());
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l)
      lap_sym_[dom_.index(k, l)] = xi_[k] * xi_[k] + xi_[l] * xi_[l];
  fftw_ = std::make_unique<Fftw>(n);
}

Spectral::~Spectral() = default;

void Spectral::apply_symbol(const Field2D &u, const std::vector<double> &sym,
                            Field2D &out) const {
  const int n = dom_.n;
  const std::size_t nn = dom_.size();
  fftw_complex *b = fftw_->buf;
  for (std::size_t k = 0; k < nn; ++k) {
    b[k][0] = u.v[k];
    b[k][1] = 0.0;
  }
  fftw_execute(fftw_->fwd);
  for (std::size_t k = 0; k < nn; ++k) {
    b[k][0] *= sym[k];
    b[k][1] *= sym[k];
  }
  fftw_execute(fftw_->bwd);
  if (out.v.size() != nn) out = Field2D(dom_);
  const double scale = 1.0 / static_cast<double>(nn);
  for (std::size_t k = 0; k < nn; ++k) out.v[k] = b[k][0] * scale;
  (void)n;
}

void Spectral::gradient(const Field2D &u, Field2D &gx, Field2D &gy) const {
  const int n = dom_.n;
  const std::size_t nn = dom_.size();
  std::vector<cd> hat(nn);
  fftw_complex *b = fftw_->buf;
  for (std::size_t k = 0; k < nn; ++k) {
    b[k][0] = u.v[k];
    b[k][1] = 0.0;
  }
  fftw_execute(fftw_->fwd);
  for (std::size_t k = 0; k < nn; ++k) hat[k] = cd(b[k][0], b[k][1]);

  const double scale = 1.0 / static_cast<double>(nn);
  auto run = [&](bool along_x, Field2D &g) {
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l) {
        int m = along_x ? k : l;
        double f = (m == n / 2) ? 0.0 : xi_[m];  // drop Nyquist for odd derivative
        cd w = cd(0.0, f) * hat[dom_.index(k, l)];
        b[dom_.index(k, l)][0] = w.real();
        b[dom_.index(k, l)][1] = w.imag();
      }
    fftw_execute(fftw_->bwd);
    if (g.v.size() != nn) g = Field2D(dom_);
    for (std::size_t k = 0; k < nn; ++k) g.v[k] = b[k][0] * scale;
  };
  run(true, gx);
  run(false, gy);
}

std::vector<cd> Spectral::coefficients(const Field2D &u) const {
  const std::size_t nn = dom_.size();
  fftw_complex *b = fftw_->buf;
  for (std::size_t k = 0; k < nn; ++k) {
    b[k][0] = u.v[k];
    b[k][1] = 0.0;
  }
  fftw_execute(fftw_->fwd);
  std::vector<cd> c(nn);
  const double scale = 1.0 / static_cast<double>(nn);
  for (std::size_t k = 0; k < nn; ++k) c[k] = cd(b[k][0] * scale, b[k][1] * scale);
  return c;
}

void Spectral::phase_tables(double x, double y, std::vector<cd> &ex,
                            std::vector<cd> &ey) const {
  const int n = dom_.n;
  const double tx = x + 0.5 * dom_.length;  // offset from grid origin
  const double ty = y + 0.5 * dom_.length;
  ex.resize(n);
  ey.resize(n);
  for (int k = 0; k < n; ++k) {
    if (k == n / 2) {
      // split Nyquist between +/- so the interpolant stays real and even
      ex[k] = cd(std::cos(xi_[k] * tx), 0.0);
      ey[k] = cd(std::cos(xi_[k] * ty), 0.0);
    } else {
      ex[k] = std::polar(1.0, xi_[k] * tx);
      ey[k] = std::polar(1.0, xi_[k] * ty);
    }
  }
}

double Spectral::eval(const std::vector<cd> &c, double x, double y) const {
  const int n = dom_.n;
  std::vector<cd> ex, ey;
  phase_tables(x, y, ex, ey);
  cd acc = 0.0;
  for (int k = 0; k < n; ++k) {
    cd row = 0.0;
    const cd *ck = &c[dom_.index(k, 0)];
    for (int l = 0; l < n; ++l) row += ck[l] * ey[l];
    acc += row * ex[k];
  }
  return acc.real();
}

Spectral::ValueGrad Spectral::eval_with_gradient(const std::vector<cd> &c, double x,
                                                 double y) const {
  const int n = dom_.n;
  std::vector<cd> ex, ey;
  phase_tables(x, y, ex, ey);
  cd f = 0.0, fx = 0.0, fy = 0.0;
  for (int k = 0; k < n; ++k) {
    cd row = 0.0, rowdy = 0.0;
    const cd *ck = &c[dom_.index(k, 0)];
    for (int l = 0; l < n; ++l) {
      cd t = ck[l] * ey[l];
      row += t;
      double fl = (l == n / 2) ? 0.0 : xi_[l];
      rowdy += t * cd(0.0, fl);
    }
    double fk = (k == n / 2) ? 0.0 : xi_[k];
    f += row * ex[k];
    fx += row * ex[k] * cd(0.0, fk);
    fy += rowdy * ex[k];
  }
  return {f.real(), fx.real(), fy.real()};
}

cd Spectral::eval_complex(const std::vector<cd> &c, cd x, cd y) const {
  const int n = dom_.n;
  const cd tx = x + 0.5 * dom_.length;
  const cd ty = y + 0.5 * dom_.length;
  std::vector<cd> ex(n), ey(n);
  const cd I(0.0, 1.0);
  for (int k = 0; k < n; ++k) {
    if (k == n / 2) {
      ex[k] = 0.5 * (std::exp(I * (xi_[k] * tx)) + std::exp(-I * (xi_[k] * tx)));
      ey[k] = 0.5 * (std::exp(I * (xi_[k] * ty)) + std::exp(-I * (xi_[k] * ty)));
    } else {
      ex[k] = std::exp(I * (xi_[k] * tx));
      ey[k] = std::exp(I * (xi_[k] * ty));
    }
  }
  cd acc = 0.0;
  for (int k = 0; k < n; ++k) {
    cd row = 0.0;
    const cd *ck = &c[dom_.index(k, 0)];
    for (int l = 0; l < n; ++l) row += ck[l] * ey[l];
    acc += row * ex[k];
  }
  return acc;
}

}  // namespace semlab

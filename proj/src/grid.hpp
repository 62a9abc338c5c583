#ifndef SEMLAB_GRID_HPP
#define SEMLAB_GRID_HPP

#include <cmath>
#include <complex>
#include <memory>
#include <vector>

#include "errors.hpp"

namespace semlab {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

// Periodic square grid on [-L/2, L/2)^2 with n points per axis.
struct TorusDomain {
  double length = 2.0;
  int n = 256;

  TorusDomain() = default;
  TorusDomain(double L, int n_) : length(L), n(n_) { validate(); }

  void validate() const {
    require(length > 0.0, ErrorCode::invalid_argument, "torus period must be positive");
    require(n >= 8 && n % 2 == 0, ErrorCode::invalid_argument,
            "grid size must be even and >= 8");
  }

  double dx() const { return length / n; }
  double coord(int i) const { return -0.5 * length + i * dx(); }
  std::size_t size() const { return static_cast<std::size_t>(n) * n; }
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * n + j; }
  int wrap_index(int i) const {
    int m = i % n;
    return m < 0 ? m + n : m;
  }

  // Reduce a coordinate to the fundamental domain [-L/2, L/2).
  double wrap(double x) const {
    double t = std::fmod(x + 0.5 * length, length);
    if (t < 0.0) t += length;
    return t - 0.5 * length;
  }
  // Signed displacement wrapped to the nearest image.
  double min_image(double d) const { return wrap(d); }
  double distance(Point a, Point b) const {
    return std::hypot(min_image(a.x - b.x), min_image(a.y - b.y));
  }
  bool same_grid(const TorusDomain &o) const { return n == o.n && length == o.length; }
};

// Scalar samples on a TorusDomain, row-major: v[i*n + j] = f(x_i, y_j).
struct Field2D {
  TorusDomain dom;
  std::vector<double> v;

  Field2D() = default;
  explicit Field2D(const TorusDomain &d, double fill = 0.0) : dom(d), v(d.size(), fill) {}

  double &at(int i, int j) { return v[dom.index(i, j)]; }
  double at(int i, int j) const { return v[dom.index(i, j)]; }
  double at_wrapped(int i, int j) const {
    return v[dom.index(dom.wrap_index(i), dom.wrap_index(j))];
  }

  double max_abs() const;
  double min() const;
  double max() const;
  double mean() const;
  // l2 norm of the sample vector (no quadrature weights)
  double norm2() const;
  // L2 norm with the grid quadrature weight dx^2
  double l2() const { return norm2() * dom.dx(); }

  // Bilinear interpolation with periodic wrap.
  double bilinear(double x, double y) const;
};

double dot(const Field2D &a, const Field2D &b);
void axpy(double alpha, const Field2D &x, Field2D &y);  // y += alpha x

using cd = std::complex<double>;

// FFT machinery for one grid: forward/backward transforms, symbol application,
// spectral derivatives and off-grid evaluation of the trig interpolant.
// Owns fftw buffers; not copyable. One instance per worker.
class Spectral {
 public:
  explicit Spectral(const TorusDomain &d);
  ~Spectral();
  Spectral(const Spectral &) = delete;
  Spectral &operator=(const Spectral &) = delete;

  const TorusDomain &domain() const { return dom_; }

  // |xi|^2 per mode (periodic Laplacian symbol), row-major like fields.
  const std::vector<double> &lap_symbol() const { return lap_sym_; }
  // signed frequency of index k along one axis
  double freq(int k) const { return xi_[k]; }

  // out = ifft(sym .* fft(u)) for a real symbol; aliasing-free for products is
  // not attempted (fields here are smooth).
  void apply_symbol(const Field2D &u, const std::vector<double> &sym, Field2D &out) const;
  // minus Laplacian
  void neg_laplacian(const Field2D &u, Field2D &out) const { apply_symbol(u, lap_sym_, out); }
  void gradient(const Field2D &u, Field2D &gx, Field2D &gy) const;

  // Fourier coefficients c[k*n+l] such that u(x,y) = sum c_kl e^{i xi_k (x-x0)} e^{i xi_l (y-y0)}.
  std::vector<cd> coefficients(const Field2D &u) const;

  // Trig-interpolant evaluation at an arbitrary point (Nyquist split symmetrically).
  double eval(const std::vector<cd> &c, double x, double y) const;
  struct ValueGrad {
    double f, fx, fy;
  };
  ValueGrad eval_with_gradient(const std::vector<cd> &c, double x, double y) const;
  // Evaluation at complex coordinates x + i*zx, y + i*zy (analytic continuation
  // of the interpolant; caller controls the imaginary offsets).
  cd eval_complex(const std::vector<cd> &c, cd x, cd y) const;

 private:
  void phase_tables(double x, double y, std::vector<cd> &ex, std::vector<cd> &ey) const;

  TorusDomain dom_;
  std::vector<double> xi_;       // signed frequencies per index
  std::vector<double> lap_sym_;  // |xi|^2 with Nyquist magnitude
  struct Fftw;
  std::unique_ptr<Fftw> fftw_;
};

}  // namespace semlab

#endif

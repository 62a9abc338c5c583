#include "bessel.hpp"

#include <cmath>

#include "errors.hpp"

namespace semlab {

namespace {

constexpr double kEulerGamma = 0.57721566490153286060651209;
constexpr double kSwitch = 8.0;

template <typename T>
T k0_series(T z) {
  // K0 = -(log(z/2)+gamma) I0(z) + sum_{k>=1} H_k (z^2/4)^k / (k!)^2
  const T q = 0.25 * z * z;
  T i0 = T(1.0), sum = T(0.0), term = T(1.0);
  double harmonic = 0.0;
  for (int k = 1; k <= 60; ++k) {
    term *= q / T(static_cast<double>(k) * k);
    harmonic += 1.0 / k;
    i0 += term;
    sum += term * T(harmonic);
    if (std::abs(term) < 1e-20 * (std::abs(i0) + 1.0)) break;
  }
  return -(std::log(T(0.5) * z) + T(kEulerGamma)) * i0 + sum;
}

// asymptotic tail sum S(z) with K0(z) = sqrt(pi/(2z)) e^{-z} S(z); truncated
// at the smallest term
template <typename T>
T k0_asymptotic_tail(T z) {
  T sum = T(1.0), term = T(1.0);
  double prev = 1.0;
  for (int k = 1; k <= 40; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= T(-odd * odd / (8.0 * k)) / z;
    const double mag = std::abs(term);
    if (mag >= prev) break;
    sum += term;
    prev = mag;
    if (mag < 1e-18) break;
  }
  return sum;
}

}  // namespace

double bessel_i0(double x) {
  const double q = 0.25 * x * x;
  double i0 = 1.0, term = 1.0;
  for (int k = 1; k <= 80; ++k) {
    term *= q / (static_cast<double>(k) * k);
    i0 += term;
    if (term < 1e-18 * i0) break;
  }
  return i0;
}

double bessel_k0(double x) {
  require(x > 0.0, ErrorCode::invalid_argument, "K0 needs a positive real argument");
  if (x <= kSwitch) return k0_series(x);
  return std::sqrt(M_PI / (2.0 * x)) * std::exp(-x) * k0_asymptotic_tail(x);
}

double log_bessel_k0(double x) {
  require(x > 0.0, ErrorCode::invalid_argument, "K0 needs a positive real argument");
  if (x <= kSwitch) return std::log(k0_series(x));
  return 0.5 * std::log(M_PI / (2.0 * x)) - x + std::log(k0_asymptotic_tail(x));
}

std::complex<double> bessel_k0(std::complex<double> z) {
  require(z.real() > 0.0, ErrorCode::branch_violation,
          "complex K0 evaluated off the right half-plane");
  if (std::abs(z) <= kSwitch) return k0_series(z);
  return std::sqrt(M_PI / (2.0 * z)) * std::exp(-z) * k0_asymptotic_tail(z);
}

}  // namespace semlab

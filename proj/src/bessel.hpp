#ifndef SEMLAB_BESSEL_HPP
#define SEMLAB_BESSEL_HPP

#include <complex>

namespace semlab {

// Modified Bessel function of the second kind, order zero. Ascending series
// for |z| <= 8, asymptotic expansion beyond (switchover per the kernel-oracle
// contract). Requires Re z > 0 off the branch cut.
double bessel_k0(double x);
std::complex<double> bessel_k0(std::complex<double> z);

// log K0(x) for large real x (decay fits at separations where K0 underflows)
double log_bessel_k0(double x);

double bessel_i0(double x);

}  // namespace semlab

#endif

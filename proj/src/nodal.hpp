#ifndef SEMLAB_NODAL_HPP
#define SEMLAB_NODAL_HPP

#include <functional>
#include <vector>

#include "eigensolve.hpp"
#include "geometry.hpp"
#include "grid.hpp"

namespace semlab {

// Restriction of an eigenfunction to a closed curve: values, normal
// derivatives, arclength weights, plus the spectral interpolant used for
// sign-change refinement.
struct CurveSamples {
  std::vector<double> t;
  std::vector<double> phi;
  std::vector<double> dn_phi;
  std::vector<double> weight;  // |q'(t)| * 2pi/N_t
  bool undersampled = false;
  std::function<double(double)> interpolant;  // phi(q(t)), spectral
};

// phi by trig interpolation, normal derivative from the spectral gradient.
// Warns (flag) when N_t is below the counting threshold max(64, ceil(40/h)).
CurveSamples restrict_to_curve(const EigenPair &pair, const AnalyticCurve &curve, int n_t);

struct SignChangeCount {
  int count = 0;           // strict alternations, even on a closed curve
  int uncertain = 0;       // below-tolerance plateaus
  bool all_below_tol = false;
  std::vector<double> zeros;  // bisection-refined parameter locations
};

SignChangeCount count_sign_changes(const CurveSamples &samples, double zero_tol_rel = 1e-6);

struct RestrictionNorms {
  double phi = 0.0;     // ||phi||_{L2(H)}
  double dn_phi = 0.0;  // ||d_nu phi||_{L2(H)}
};

RestrictionNorms restriction_norms(const CurveSamples &samples);

// Quadrature weights for a disk region: full cells weigh dx^2, boundary cells
// a 4x4-subsampled fraction of it.
struct RegionQuadrature {
  Field2D weight;
  double area = 0.0;
};

RegionQuadrature disk_quadrature(const TorusDomain &dom, const Disk &disk);

struct GreenIdentityReport {
  double lhs_energy = 0.0;      // ||h grad phi||^2_{L2(M_H)}
  double potential_term = 0.0;  // <(V - E(h)) phi, phi>_{L2(M_H)}
  double boundary_term = 0.0;   // h^2 <d_nu phi, phi>_{L2(dM_H)}
  double mismatch = 0.0;        // relative difference of the two sides
};

GreenIdentityReport green_identity_check(const EigenPair &pair, const Field2D &potential,
                                         const Disk &region, const AnalyticCurve &boundary,
                                         int n_boundary = 512);

struct TunnellingReport {
  double lhs = 0.0;  // C_E h^{-2} ||phi||^2_{L2(M_H)}
  double rhs = 0.0;  // ||phi||_{L2(H)} ||d_nu phi||_{L2(H)}
  double c_em = 0.0;
  bool holds = false;
};

TunnellingReport tunnelling_inequality_check(const EigenPair &pair, const Field2D &potential,
                                             const Disk &region, const AnalyticCurve &boundary,
                                             double eps_disc = 0.05, int n_boundary = 512);

// Zero-set polylines from marching squares with linear edge interpolation.
struct NodalSet {
  struct Segment {
    Point a, b;
  };
  std::vector<Segment> segments;
};

NodalSet extract_nodal_set(const Field2D &phi);

}  // namespace semlab

#endif

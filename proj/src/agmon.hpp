#ifndef SEMLAB_AGMON_HPP
#define SEMLAB_AGMON_HPP

#include "geometry.hpp"
#include "grid.hpp"

namespace semlab {

// First-order fast-marching solution of |grad d| = speed with d = 0 on the
// seed set. The degenerate Agmon case uses speed = sqrt((V-E)_+), seeds =
// the classically allowed cells.
struct DistanceField {
  Field2D d;
  std::vector<int> accept_order;  // acceptance rank per cell, -1 for seeds
  double front_error_estimate = 0.0;  // ~ 2 dx * max speed
};

// Generic point-speed eikonal solve on the torus grid.
DistanceField fast_march(const Field2D &speed, const std::vector<std::uint8_t> &seed_mask);

// Agmon distance d_E to the allowed region M \ Omega_E in the metric (V-E)_+ g.
DistanceField solve_agmon(const ClassicalData &data, const Field2D &potential);

// min over >= n_samples curve points of the bilinearly interpolated field.
// Every sample must satisfy V(q(t)) > E (CurveLeavesForbidden otherwise).
double curve_agmon_distance(const DistanceField &field, const AnalyticCurve &curve,
                            const BumpPotential &potential, double energy,
                            int n_samples = 256);

// Point-to-point distance in the metric lambda * g (speed sqrt(lambda)),
// fast-marched from a single source cell. Used as the decay-rate oracle for
// the conformal Green's kernel.
double fmm_point_distance(const Field2D &lambda, Point source, Point target);

}  // namespace semlab

#endif

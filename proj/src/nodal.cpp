#include "nodal.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace semlab {

CurveSamples restrict_to_curve(const EigenPair &pair, const AnalyticCurve &curve, int n_t) {
  require(n_t >= 64, ErrorCode::invalid_argument, "need at least 64 curve samples");
  const TorusDomain &dom = pair.phi.dom;
  auto spectral = std::make_shared<Spectral>(dom);
  auto coeffs = std::make_shared<std::vector<cd>>(spectral->coefficients(pair.phi));

  CurveSamples out;
  const int threshold = std::max(64, static_cast<int>(std::ceil(40.0 / pair.h)));
  out.undersampled = n_t < threshold;
  out.t.resize(n_t);
  out.phi.resize(n_t);
  out.dn_phi.resize(n_t);
  out.weight.resize(n_t);
  const double dt = 2.0 * M_PI / n_t;
  for (int i = 0; i < n_t; ++i) {
    const double t = i * dt;
    const AnalyticCurve::Frame f = curve.frame(t);
    const Spectral::ValueGrad vg = spectral->eval_with_gradient(*coeffs, f.point.x, f.point.y);
    out.t[i] = t;
    out.phi[i] = vg.f;
    out.dn_phi[i] = vg.fx * f.normal.x + vg.fy * f.normal.y;
    out.weight[i] = f.speed * dt;
  }
  out.interpolant = [spectral, coeffs, curve](double t) {
    const Point p = curve.point(t);
    return spectral->eval(*coeffs, p.x, p.y);
  };
  return out;
}

SignChangeCount count_sign_changes(const CurveSamples &samples, double zero_tol_rel) {
  const int n = static_cast<int>(samples.phi.size());
  require(n > 0, ErrorCode::invalid_argument, "empty samples");
  for (double v : samples.phi)
    require(std::isfinite(v), ErrorCode::invalid_argument, "non-finite curve sample");

  double vmax = 0.0;
  for (double v : samples.phi) vmax = std::max(vmax, std::abs(v));
  const double tol = zero_tol_rel * vmax;

  SignChangeCount out;
  std::vector<int> sig(n);  // +1 / -1 above tolerance, 0 below
  int above = 0;
  for (int i = 0; i < n; ++i) {
    sig[i] = std::abs(samples.phi[i]) <= tol ? 0 : (samples.phi[i] > 0 ? 1 : -1);
    if (sig[i] != 0) ++above;
  }
  if (above == 0) {
    out.all_below_tol = true;
    return out;
  }

  // circular scan over the above-tolerance subsequence
  int first = 0;
  while (sig[first] == 0) ++first;
  int prev_idx = first;
  const double period = 2.0 * M_PI;
  auto refine = [&](double ta, double tb) {
    // bisection of the spectral interpolant down to dt <= 1e-6
    if (!samples.interpolant) return 0.5 * (ta + tb);
    double fa = samples.interpolant(ta);
    while (tb - ta > 1e-6) {
      const double tm = 0.5 * (ta + tb);
      const double fm = samples.interpolant(tm);
      if ((fa > 0) == (fm > 0)) {
        ta = tm;
        fa = fm;
      } else {
        tb = tm;
      }
    }
    return 0.5 * (ta + tb);
  };

  for (int step = 1; step <= n; ++step) {
    const int i = (first + step) % n;
    if (sig[i] == 0) continue;
    if (sig[i] != sig[prev_idx]) {
      ++out.count;
      double ta = samples.t[prev_idx];
      double tb = samples.t[i];
      if (tb <= ta) tb += period;
      out.zeros.push_back(std::fmod(refine(ta, tb), period));
    }
    prev_idx = i;
  }

  // plateaus: maximal runs of below-tolerance samples; equal-sign flanks can
  // hide an even number of crossings, long runs are ambiguous either way
  int i = first;
  int steps = 0;
  while (steps < n) {
    if (sig[i] == 0) {
      int len = 0;
      const int before = (i - 1 + n) % n;
      int j = i;
      while (sig[j] == 0) {
        ++len;
        j = (j + 1) % n;
        ++steps;
      }
      const bool equal_flanks = sig[before] == sig[j];
      if (len >= 2 || equal_flanks) ++out.uncertain;
      i = j;
    } else {
      i = (i + 1) % n;
      ++steps;
    }
  }
  return out;
}

RestrictionNorms restriction_norms(const CurveSamples &samples) {
  double m1 = 0.0, m2 = 0.0;
  for (std::size_t i = 0; i < samples.phi.size(); ++i) {
    require(samples.weight[i] > 0.0, ErrorCode::invalid_argument,
            "nonpositive arclength weight");
    m1 = std::max(m1, std::abs(samples.phi[i]));
    m2 = std::max(m2, std::abs(samples.dn_phi[i]));
  }
  // scale out the max so exponentially small restrictions do not underflow
  double s1 = 0.0, s2 = 0.0;
  for (std::size_t i = 0; i < samples.phi.size(); ++i) {
    if (m1 > 0.0) {
      const double r = samples.phi[i] / m1;
      s1 += r * r * samples.weight[i];
    }
    if (m2 > 0.0) {
      const double r = samples.dn_phi[i] / m2;
      s2 += r * r * samples.weight[i];
    }
  }
  return {m1 * std::sqrt(s1), m2 * std::sqrt(s2)};
}

RegionQuadrature disk_quadrature(const TorusDomain &dom, const Disk &disk) {
  RegionQuadrature out;
  out.weight = Field2D(dom);
  const double dx = dom.dx();
  const double cell_area = dx * dx;
  const double half_diag = 0.5 * dx * std::sqrt(2.0);
  for (int i = 0; i < dom.n; ++i) {
    const double x = dom.coord(i);
    for (int j = 0; j < dom.n; ++j) {
      const Point p{x, dom.coord(j)};
      const double dist = dom.distance(p, disk.center);
      double w = 0.0;
      if (dist <= disk.radius - half_diag) {
        w = cell_area;
      } else if (dist <= disk.radius + half_diag) {
        int inside = 0;  // 4x4 subsample of the cell
        for (int a = 0; a < 4; ++a)
          for (int b = 0; b < 4; ++b) {
            const Point q{p.x + (a - 1.5) * dx / 4.0, p.y + (b - 1.5) * dx / 4.0};
            if (dom.distance(q, disk.center) <= disk.radius) ++inside;
          }
        w = cell_area * inside / 16.0;
      }
      out.weight.at(i, j) = w;
      out.area += w;
    }
  }
  return out;
}

GreenIdentityReport green_identity_check(const EigenPair &pair, const Field2D &potential,
                                         const Disk &region, const AnalyticCurve &boundary,
                                         int n_boundary) {
  const TorusDomain &dom = pair.phi.dom;
  require(potential.dom.same_grid(dom), ErrorCode::invalid_argument, "grid mismatch");
  RegionQuadrature quad = disk_quadrature(dom, region);
  for (std::size_t c = 0; c < dom.size(); ++c)
    if (quad.weight.v[c] > 0.0)
      require(potential.v[c] - pair.energy > 0.0, ErrorCode::region_not_forbidden,
              "M_H touches the classically allowed region");

  Spectral spectral(dom);
  Field2D gx, gy;
  spectral.gradient(pair.phi, gx, gy);
  const double h2 = pair.h * pair.h;
  GreenIdentityReport rep;
  for (std::size_t c = 0; c < dom.size(); ++c) {
    const double w = quad.weight.v[c];
    if (w == 0.0) continue;
    rep.lhs_energy += h2 * (gx.v[c] * gx.v[c] + gy.v[c] * gy.v[c]) * w;
    rep.potential_term +=
        (potential.v[c] - pair.energy) * pair.phi.v[c] * pair.phi.v[c] * w;
  }
  CurveSamples bs = restrict_to_curve(pair, boundary, n_boundary);
  double bterm = 0.0;
  for (std::size_t i = 0; i < bs.phi.size(); ++i)
    bterm += bs.dn_phi[i] * bs.phi[i] * bs.weight[i];
  rep.boundary_term = h2 * bterm;
  const double lhs = rep.lhs_energy + rep.potential_term;
  const double scale = std::max({std::abs(lhs), std::abs(rep.boundary_term), 1e-300});
  rep.mismatch = std::abs(lhs - rep.boundary_term) / scale;
  return rep;
}

TunnellingReport tunnelling_inequality_check(const EigenPair &pair, const Field2D &potential,
                                             const Disk &region, const AnalyticCurve &boundary,
                                             double eps_disc, int n_boundary) {
  const TorusDomain &dom = pair.phi.dom;
  RegionQuadrature quad = disk_quadrature(dom, region);
  TunnellingReport rep;
  rep.c_em = std::numeric_limits<double>::infinity();
  double mass = 0.0;
  for (std::size_t c = 0; c < dom.size(); ++c) {
    const double w = quad.weight.v[c];
    if (w == 0.0) continue;
    const double vme = potential.v[c] - pair.energy;
    require(vme > 0.0, ErrorCode::region_not_forbidden,
            "M_H touches the classically allowed region");
    rep.c_em = std::min(rep.c_em, vme);
    mass += pair.phi.v[c] * pair.phi.v[c] * w;
  }
  CurveSamples bs = restrict_to_curve(pair, boundary, n_boundary);
  const RestrictionNorms norms = restriction_norms(bs);
  rep.lhs = rep.c_em / (pair.h * pair.h) * mass;
  rep.rhs = norms.phi * norms.dn_phi;
  rep.holds = rep.lhs <= rep.rhs * (1.0 + eps_disc);
  return rep;
}

NodalSet extract_nodal_set(const Field2D &phi) {
  for (double v : phi.v)
    require(std::isfinite(v), ErrorCode::invalid_argument, "non-finite field");
  const TorusDomain &dom = phi.dom;
  const int n = dom.n;
  const double dx = dom.dx();
  NodalSet out;

  auto edge_point = [&](double xa, double ya, double va, double xb, double yb,
                        double vb) -> Point {
    const double s = va / (va - vb);  // va, vb have opposite signs
    return {xa + s * (xb - xa), ya + s * (yb - ya)};
  };

  for (int i = 0; i < n; ++i) {
    const double x0 = dom.coord(i);
    const double x1 = x0 + dx;
    const int ip = dom.wrap_index(i + 1);
    for (int j = 0; j < n; ++j) {
      const double y0 = dom.coord(j);
      const double y1 = y0 + dx;
      const int jp = dom.wrap_index(j + 1);
      const double v00 = phi.at(i, j), v10 = phi.at(ip, j);
      const double v01 = phi.at(i, jp), v11 = phi.at(ip, jp);
      auto pos = [](double v) { return v >= 0.0; };
      const int code = (pos(v00) ? 1 : 0) | (pos(v10) ? 2 : 0) | (pos(v11) ? 4 : 0) |
                       (pos(v01) ? 8 : 0);
      if (code == 0 || code == 15) continue;

      // edge crossings: bottom (00-10), right (10-11), top (01-11), left (00-01)
      Point pb, pr, pt, pl;
      const bool eb = pos(v00) != pos(v10);
      const bool er = pos(v10) != pos(v11);
      const bool et = pos(v01) != pos(v11);
      const bool el = pos(v00) != pos(v01);
      if (eb) pb = edge_point(x0, y0, v00, x1, y0, v10);
      if (er) pr = edge_point(x1, y0, v10, x1, y1, v11);
      if (et) pt = edge_point(x0, y1, v01, x1, y1, v11);
      if (el) pl = edge_point(x0, y0, v00, x0, y1, v01);

      switch (code) {
        case 1: case 14: out.segments.push_back({pb, pl}); break;
        case 2: case 13: out.segments.push_back({pb, pr}); break;
        case 4: case 11: out.segments.push_back({pr, pt}); break;
        case 8: case 7:  out.segments.push_back({pt, pl}); break;
        case 3: case 12: out.segments.push_back({pl, pr}); break;
        case 6: case 9:  out.segments.push_back({pb, pt}); break;
        case 5: case 10: {
          // saddle: split by the cell-centre average
          const double centre = 0.25 * (v00 + v10 + v01 + v11);
          const bool centre_pos = centre >= 0.0;
          if ((code == 5) == centre_pos) {
            out.segments.push_back({pb, pr});
            out.segments.push_back({pt, pl});
          } else {
            out.segments.push_back({pb, pl});
            out.segments.push_back({pr, pt});
          }
          break;
        }
        default: break;
      }
    }
  }
  return out;
}

}  // namespace semlab

#include "agmon.hpp"

#include <cmath>
#include <limits>
#include <queue>

namespace semlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct HeapEntry {
  double d;
  std::size_t cell;
  bool operator>(const HeapEntry &o) const {
    if (d != o.d) return d > o.d;
    return cell > o.cell;  // deterministic tie-break
  }
};

// Upwind quadratic update from the smaller neighbour values per axis.
double upwind_value(double dxmin, double dymin, double f, double dx) {
  const double rhs = f * dx;
  const double a = std::min(dxmin, dymin);
  const double b = std::max(dxmin, dymin);
  if (b - a >= rhs || b == kInf) return a + rhs;  // one-sided
  // (d-a)^2 + (d-b)^2 = rhs^2
  const double sum = a + b;
  const double disc = 2.0 * rhs * rhs - (a - b) * (a - b);
  return 0.5 * (sum + std::sqrt(disc));
}

}  // namespace

DistanceField fast_march(const Field2D &speed, const std::vector<std::uint8_t> &seed_mask) {
  const TorusDomain &dom = speed.dom;
  require(seed_mask.size() == dom.size(), ErrorCode::invalid_argument,
          "seed mask size mismatch");
  DistanceField out;
  out.d = Field2D(dom, kInf);
  out.accept_order.assign(dom.size(), -1);
  std::vector<std::uint8_t> accepted(dom.size(), 0);

  std::priority_queue<HeapEntry, std::vector<HeapEntry>, std::greater<HeapEntry>> heap;
  bool any_seed = false;
  for (std::size_t c = 0; c < dom.size(); ++c)
    if (seed_mask[c]) {
      out.d.v[c] = 0.0;
      accepted[c] = 1;
      any_seed = true;
    }
  require(any_seed, ErrorCode::invalid_argument, "fast march needs a nonempty seed set");

  const int n = dom.n;
  const double dx = dom.dx();
  auto neighbours = [&](std::size_t c, std::size_t out4[4]) {
    const int i = static_cast<int>(c) / n, j = static_cast<int>(c) % n;
    out4[0] = dom.index(dom.wrap_index(i - 1), j);
    out4[1] = dom.index(dom.wrap_index(i + 1), j);
    out4[2] = dom.index(i, dom.wrap_index(j - 1));
    out4[3] = dom.index(i, dom.wrap_index(j + 1));
  };
  auto relax = [&](std::size_t c) {
    if (accepted[c]) return;
    std::size_t nb[4];
    neighbours(c, nb);
    const double dxmin = std::min(accepted[nb[0]] ? out.d.v[nb[0]] : kInf,
                                  accepted[nb[1]] ? out.d.v[nb[1]] : kInf);
    const double dymin = std::min(accepted[nb[2]] ? out.d.v[nb[2]] : kInf,
                                  accepted[nb[3]] ? out.d.v[nb[3]] : kInf);
    if (dxmin == kInf && dymin == kInf) return;
    const double cand = upwind_value(dxmin, dymin, speed.v[c], dx);
    if (cand < out.d.v[c]) {
      out.d.v[c] = cand;
      heap.push({cand, c});
    }
  };

  for (std::size_t c = 0; c < dom.size(); ++c)
    if (seed_mask[c]) {
      std::size_t nb[4];
      neighbours(c, nb);
      for (int t = 0; t < 4; ++t) relax(nb[t]);
    }

  int rank = 0;
  double max_speed = 0.0;
  while (!heap.empty()) {
    const HeapEntry e = heap.top();
    heap.pop();
    if (accepted[e.cell] || e.d > out.d.v[e.cell]) continue;  // stale entry
    accepted[e.cell] = 1;
    out.accept_order[e.cell] = rank++;
    max_speed = std::max(max_speed, speed.v[e.cell]);
    std::size_t nb[4];
    neighbours(e.cell, nb);
    for (int t = 0; t < 4; ++t) relax(nb[t]);
  }
  out.front_error_estimate = 2.0 * dx * max_speed;
  return out;
}

DistanceField solve_agmon(const ClassicalData &data, const Field2D &potential) {
  require(data.forbidden_count > 0, ErrorCode::empty_forbidden_region,
          "forbidden region is empty");
  require(data.band_count > 0, ErrorCode::empty_forbidden_region,
          "boundary band is empty");
  Field2D speed(potential.dom);
  for (std::size_t c = 0; c < potential.dom.size(); ++c)
    speed.v[c] = std::sqrt(std::max(potential.v[c] - data.energy, 0.0));
  std::vector<std::uint8_t> seeds(potential.dom.size());
  for (std::size_t c = 0; c < seeds.size(); ++c) seeds[c] = data.mask[c] ? 0 : 1;
  return fast_march(speed, seeds);
}

double curve_agmon_distance(const DistanceField &field, const AnalyticCurve &curve,
                            const BumpPotential &potential, double energy,
                            int n_samples) {
  n_samples = std::max(n_samples, 256);
  const TorusDomain &dom = field.d.dom;
  double best = kInf;
  for (int i = 0; i < n_samples; ++i) {
    const double t = 2.0 * M_PI * i / n_samples;
    const Point p = curve.point(t);
    require(potential.eval(p, dom) > energy, ErrorCode::curve_leaves_forbidden,
            "curve sample leaves the forbidden region at t=" + std::to_string(t));
    best = std::min(best, field.d.bilinear(p.x, p.y));
  }
  return best;
}

double fmm_point_distance(const Field2D &lambda, Point source, Point target) {
  const TorusDomain &dom = lambda.dom;
  Field2D speed(dom);
  for (std::size_t c = 0; c < dom.size(); ++c) speed.v[c] = std::sqrt(lambda.v[c]);
  std::vector<std::uint8_t> seeds(dom.size(), 0);
  const int si = dom.wrap_index(static_cast<int>(std::lround((dom.wrap(source.x) + 0.5 * dom.length) / dom.dx())));
  const int sj = dom.wrap_index(static_cast<int>(std::lround((dom.wrap(source.y) + 0.5 * dom.length) / dom.dx())));
  seeds[dom.index(si, sj)] = 1;
  DistanceField f = fast_march(speed, seeds);
  return f.d.bilinear(target.x, target.y);
}

}  // namespace semlab

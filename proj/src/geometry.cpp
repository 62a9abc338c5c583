#include "geometry.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace semlab {

using nlohmann::json;

double BumpPotential::eval(Point p, const TorusDomain &dom) const {
  const double x = dom.wrap(p.x);
  const double y = dom.wrap(p.y);
  const double L = dom.length;
  double s = 0.0;
  for (const GaussBump &b : bumps) {
    for (int nx = -n_per; nx <= n_per; ++nx) {
      for (int ny = -n_per; ny <= n_per; ++ny) {
        const double ddx = x - b.center.x + L * nx;
        const double ddy = y - b.center.y + L * ny;
        s += b.amplitude * std::exp(-b.decay * (ddx * ddx + ddy * ddy));
      }
    }
  }
  return s;
}

Field2D BumpPotential::sample(const TorusDomain &dom) const {
  Field2D f(dom);
  for (int i = 0; i < dom.n; ++i) {
    const double x = dom.coord(i);
    for (int j = 0; j < dom.n; ++j) f.at(i, j) = eval({x, dom.coord(j)}, dom);
  }
  return f;
}

BumpPotential BumpPotential::two_bumps() {
  BumpPotential p;
  p.bumps = {{4.0, {-0.3, -0.3}, 10.0}, {3.0, {0.6, 0.7}, 15.0}};
  p.n_per = 3;
  return p;
}

ClassicalData forbidden_mask(const Field2D &potential, double energy) {
  const TorusDomain &dom = potential.dom;
  ClassicalData out;
  out.energy = energy;
  out.mask.assign(dom.size(), 0);
  out.band.assign(dom.size(), 0);
  for (std::size_t k = 0; k < dom.size(); ++k)
    if (potential.v[k] > energy) {
      out.mask[k] = 1;
      ++out.forbidden_count;
    }
  if (out.forbidden_count == 0)
    fail(ErrorCode::empty_forbidden_region, "no grid point has V > E");
  if (out.forbidden_count == dom.size())
    fail(ErrorCode::full_forbidden_region, "all grid points have V > E");
  const int n = dom.n;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const std::uint8_t m = out.mask[dom.index(i, j)];
      const bool differs =
          out.mask[dom.index(dom.wrap_index(i + 1), j)] != m ||
          out.mask[dom.index(dom.wrap_index(i - 1), j)] != m ||
          out.mask[dom.index(i, dom.wrap_index(j + 1))] != m ||
          out.mask[dom.index(i, dom.wrap_index(j - 1))] != m;
      if (differs) {
        out.band[dom.index(i, j)] = 1;
        ++out.band_count;
      }
    }
  return out;
}

AnalyticCurve::AnalyticCurve(std::vector<cd> cx, std::vector<cd> cy)
    : cx_(std::move(cx)), cy_(std::move(cy)) {
  require(cx_.size() == cy_.size() && cx_.size() % 2 == 1, ErrorCode::invalid_argument,
          "curve coefficient arrays must have equal odd length");
  K_ = static_cast<int>(cx_.size() / 2);
}

AnalyticCurve AnalyticCurve::circle(Point center, double radius) {
  require(radius >= 0.0, ErrorCode::invalid_argument, "negative circle radius");
  std::vector<cd> cx(3), cy(3);
  cx[1] = center.x;
  cy[1] = center.y;
  cx[0] = cx[2] = 0.5 * radius;                 // cos t
  cy[0] = cd(0.0, 0.5 * radius);                // sin t: c_{-1} = i r/2
  cy[2] = cd(0.0, -0.5 * radius);               //        c_{+1} = -i r/2
  return AnalyticCurve(std::move(cx), std::move(cy));
}

AnalyticCurve AnalyticCurve::ellipse(Point center, double ax, double ay, double rot) {
  // (ax cos t, ay sin t) rotated by rot, then translated
  const double c = std::cos(rot), s = std::sin(rot);
  std::vector<cd> cx(3), cy(3);
  cx[1] = center.x;
  cy[1] = center.y;
  // cos t coefficients 1/2 at k=+-1; sin t coefficients -i/2 at +1, i/2 at -1
  cx[0] = 0.5 * c * ax + cd(0.0, 0.5) * (-s) * ay;
  cx[2] = 0.5 * c * ax + cd(0.0, -0.5) * (-s) * ay;
  cy[0] = 0.5 * s * ax + cd(0.0, 0.5) * c * ay;
  cy[2] = 0.5 * s * ax + cd(0.0, -0.5) * c * ay;
  return AnalyticCurve(std::move(cx), std::move(cy));
}

Point AnalyticCurve::point(double t) const {
  cd x = 0.0, y = 0.0;
  for (int k = -K_; k <= K_; ++k) {
    const cd e = std::polar(1.0, k * t);
    x += cx_[k + K_] * e;
    y += cy_[k + K_] * e;
  }
  return {x.real(), y.real()};
}

Point AnalyticCurve::derivative(double t) const {
  cd x = 0.0, y = 0.0;
  for (int k = -K_; k <= K_; ++k) {
    const cd e = cd(0.0, k) * std::polar(1.0, k * t);
    x += cx_[k + K_] * e;
    y += cy_[k + K_] * e;
  }
  return {x.real(), y.real()};
}

AnalyticCurve::Frame AnalyticCurve::frame(double t) const {
  const Point p = point(t);
  const Point d = derivative(t);
  const double speed = std::hypot(d.x, d.y);
  require(speed >= 1e-12, ErrorCode::degenerate_curve,
          "curve has vanishing tangent at t=" + std::to_string(t));
  const Point tang{d.x / speed, d.y / speed};
  return {p, tang, {-tang.y, tang.x}, speed};
}

std::pair<cd, cd> AnalyticCurve::point_complex(cd t) const {
  cd x = 0.0, y = 0.0;
  const cd I(0.0, 1.0);
  for (int k = -K_; k <= K_; ++k) {
    const cd e = std::exp(I * (static_cast<double>(k) * t));
    x += cx_[k + K_] * e;
    y += cy_[k + K_] * e;
  }
  return {x, y};
}

double AnalyticCurve::arclength(int n) const {
  double s = 0.0;
  const double dt = 2.0 * M_PI / n;
  for (int i = 0; i < n; ++i) {
    const Point d = derivative(i * dt);
    s += std::hypot(d.x, d.y) * dt;
  }
  return s;
}

double smoothstep5(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  return t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
}

ConformalFactor build_conformal_factor(const Field2D &potential, double eh,
                                       const Disk &omega_h, double transition_width) {
  const TorusDomain &dom = potential.dom;
  require(transition_width > 0.0, ErrorCode::invalid_argument,
          "transition width must be positive");
  ConformalFactor out;
  out.chi = Field2D(dom);
  out.lambda = Field2D(dom, 1.0);
  if (omega_h.radius <= 0.0) return out;  // empty Omega_H: chi = 0, Lambda = 1
  out.c_em = std::numeric_limits<double>::infinity();

  bool any_inner = false;
  for (int i = 0; i < dom.n; ++i) {
    const double x = dom.coord(i);
    for (int j = 0; j < dom.n; ++j) {
      const Point p{x, dom.coord(j)};
      const double sd = dom.distance(p, omega_h.center) - omega_h.radius;
      const double chi = 1.0 - smoothstep5(sd / transition_width);
      out.chi.at(i, j) = chi;
      const double vme = potential.at(i, j) - eh;
      if (chi > 0.0) {
        require(vme > 0.0, ErrorCode::non_positive_factor,
                "V - E(h) <= 0 on supp chi");
        out.lambda.at(i, j) = vme * chi + (1.0 - chi);
      }
      if (sd <= 0.0) {
        any_inner = true;
        out.c_em = std::min(out.c_em, vme);
      }
    }
  }
  if (!any_inner) out.c_em = 0.0;  // empty Omega_H: chi may still be 0 everywhere

  // margin: the 2dx-dilation of supp chi must stay forbidden
  const double margin = 2.0 * dom.dx();
  for (int i = 0; i < dom.n; ++i) {
    const double x = dom.coord(i);
    for (int j = 0; j < dom.n; ++j) {
      const Point p{x, dom.coord(j)};
      const double sd = dom.distance(p, omega_h.center) - omega_h.radius;
      if (sd < transition_width + margin && potential.at(i, j) <= eh)
        fail(ErrorCode::margin_violation,
             "supp chi (plus 2dx margin) leaves the forbidden region");
    }
  }
  return out;
}

static AnalyticCurve curve_from_json(const json &j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "circle") {
    const auto c = j.at("center");
    return AnalyticCurve::circle({c.at(0).get<double>(), c.at(1).get<double>()},
                                 j.at("radius").get<double>());
  }
  if (kind == "ellipse") {
    const auto c = j.at("center");
    const auto a = j.at("semi_axes");
    return AnalyticCurve::ellipse({c.at(0).get<double>(), c.at(1).get<double>()},
                                  a.at(0).get<double>(), a.at(1).get<double>(),
                                  j.value("rotation", 0.0));
  }
  if (kind == "fourier") {
    // coefficient lists [[k, re, im], ...] per coordinate
    auto parse = [](const json &arr, int K) {
      std::vector<cd> c(2 * K + 1);
      for (const auto &e : arr) {
        const int k = e.at(0).get<int>();
        c[k + K] = cd(e.at(1).get<double>(), e.at(2).get<double>());
      }
      return c;
    };
    int K = 0;
    for (const char *key : {"x", "y"})
      for (const auto &e : j.at(key)) K = std::max(K, std::abs(e.at(0).get<int>()));
    return AnalyticCurve(parse(j.at("x"), K), parse(j.at("y"), K));
  }
  fail(ErrorCode::parse, "unknown curve kind: " + kind);
}

AnalyticCurve curve_from_json_text(const std::string &text) {
  try {
    return curve_from_json(json::parse(text));
  } catch (const json::exception &e) {
    fail(ErrorCode::parse, std::string("curve json: ") + e.what());
  }
}

Scene Scene::from_json_text(const std::string &text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception &e) {
    fail(ErrorCode::parse, std::string("scene json: ") + e.what());
  }
  try {
    Scene s;
    const auto &d = j.at("domain");
    s.dom = TorusDomain(d.value("L", 2.0), d.value("n", 256));
    const auto &p = j.at("potential");
    for (const auto &b : p.at("bumps")) {
      GaussBump g;
      g.amplitude = b.at(0).get<double>();
      g.center = {b.at(1).at(0).get<double>(), b.at(1).at(1).get<double>()};
      g.decay = b.at(2).get<double>();
      s.potential.bumps.push_back(g);
    }
    s.potential.n_per = p.value("n_per", 3);
    s.energy = j.value("energy", 1.0);
    if (j.contains("curves"))
      for (auto it = j.at("curves").begin(); it != j.at("curves").end(); ++it)
        s.curves.emplace(it.key(), curve_from_json(it.value()));
    if (j.contains("omega_h")) {
      const auto &o = j.at("omega_h");
      Disk disk;
      disk.center = {o.at("center").at(0).get<double>(), o.at("center").at(1).get<double>()};
      disk.radius = o.at("radius").get<double>();
      s.omega_h = disk;
      s.omega_h_width = o.value("width", 0.05);
    }
    return s;
  } catch (const json::exception &e) {
    fail(ErrorCode::parse, std::string("scene json: ") + e.what());
  }
}

Scene Scene::from_json_file(const std::string &path) {
  std::ifstream in(path);
  require(in.good(), ErrorCode::io, "cannot open scene file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json_text(ss.str());
}

Scene Scene::figure1(int n) {
  Scene s;
  s.dom = TorusDomain(2.0, n);
  s.potential = BumpPotential::two_bumps();
  s.energy = 1.0;
  s.curves.emplace("H", AnalyticCurve::circle({-0.3, -0.3}, 0.15));
  s.curves.emplace("gamma", AnalyticCurve::circle({-0.3, -0.3}, 0.25));
  s.omega_h = Disk{{-0.3, -0.3}, 0.27};
  s.omega_h_width = 0.05;
  return s;
}

Field2D Scene::potential_field() const {
  if (!v_cache_ || !v_cache_->dom.same_grid(dom)) v_cache_ = potential.sample(dom);
  return *v_cache_;
}

const AnalyticCurve &Scene::curve(const std::string &name) const {
  auto it = curves.find(name);
  require(it != curves.end(), ErrorCode::invalid_argument,
          "scene has no curve named '" + name + "'");
  return it->second;
}

}  // namespace semlab

#ifndef SEMLAB_GEOMETRY_HPP
#define SEMLAB_GEOMETRY_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "grid.hpp"

namespace semlab {

// Periodized sum of Gaussian bumps A e^{-a|x-c|^2}; always positive.
struct GaussBump {
  double amplitude = 1.0;
  Point center;
  double decay = 1.0;
};

struct BumpPotential {
  std::vector<GaussBump> bumps;
  int n_per = 3;  // periodization images |n|_inf <= n_per

  double eval(Point p, const TorusDomain &dom) const;
  Field2D sample(const TorusDomain &dom) const;
  // figure-1 potential of the two-bump torus scene
  static BumpPotential two_bumps();
};

// Forbidden region mask chi_{V>E} plus its boundary band.
struct ClassicalData {
  double energy = 0.0;
  std::vector<std::uint8_t> mask;       // 1 where V > E
  std::vector<std::uint8_t> band;       // 1 on cells whose 4-neighbourhood disagrees
  std::size_t forbidden_count = 0;
  std::size_t band_count = 0;
};

ClassicalData forbidden_mask(const Field2D &potential, double energy);

// Closed curve q(t), t in [0,2pi), stored as a finite Fourier series per
// coordinate so analytic continuation in t is exact at truncation order.
class AnalyticCurve {
 public:
  AnalyticCurve() = default;
  // coefficient k (|k| <= K) of each coordinate, index k+K
  AnalyticCurve(std::vector<cd> cx, std::vector<cd> cy);

  static AnalyticCurve circle(Point center, double radius);
  static AnalyticCurve ellipse(Point center, double ax, double ay, double rotation = 0.0);

  int max_mode() const { return K_; }
  Point point(double t) const;
  Point derivative(double t) const;
  struct Frame {
    Point point;
    Point tangent;  // unit
    Point normal;   // tangent rotated by +pi/2, unit
    double speed;   // |q'(t)|
  };
  // Throws DegenerateCurve when |q'(t)| < 1e-12.
  Frame frame(double t) const;
  // Analytic continuation q(t) for complex t.
  std::pair<cd, cd> point_complex(cd t) const;

  // total arclength via trapezoid on n samples
  double arclength(int n = 2048) const;

 private:
  std::vector<cd> cx_, cy_;  // length 2K+1
  int K_ = 0;
};

// Disk used both for Omega_H specifications and integration regions M_H.
struct Disk {
  Point center;
  double radius = 0.0;
  bool contains(Point p, const TorusDomain &dom) const {
    return dom.distance(p, center) <= radius;
  }
};

// Auxiliary conformal factor Lambda = (V - E(h)) chi + (1 - chi), with chi a
// quintic smoothstep of the distance to Omega_H (chi = 1 on the disk, 0 beyond
// the transition width).
struct ConformalFactor {
  Field2D lambda;
  Field2D chi;
  double c_em = 0.0;  // min(V - E(h)) over Omega_H (the constant C_E)
};

ConformalFactor build_conformal_factor(const Field2D &potential, double eh,
                                       const Disk &omega_h, double transition_width);

// Scene file: domain + potential + energy + named curves (+ optional omega_h).
struct Scene {
  TorusDomain dom;
  BumpPotential potential;
  double energy = 1.0;
  std::map<std::string, AnalyticCurve> curves;
  std::optional<Disk> omega_h;
  double omega_h_width = 0.05;

  Field2D potential_field() const;  // cached on first use
  const AnalyticCurve &curve(const std::string &name) const;

  static Scene from_json_text(const std::string &text);
  static Scene from_json_file(const std::string &path);
  static Scene figure1(int n = 256);

 private:
  mutable std::optional<Field2D> v_cache_;
};

AnalyticCurve curve_from_json_text(const std::string &text);

double smoothstep5(double t);  // quintic smoothstep clamped to [0,1]

}  // namespace semlab

#endif

#ifndef SEMLAB_EIGENSOLVE_HPP
#define SEMLAB_EIGENSOLVE_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "geometry.hpp"
#include "grid.hpp"

namespace semlab {

enum class Scheme { spectral, fd5 };

// Discretization of -h^2 Lambda^{-1} Delta + V on the torus. The plain
// Schrodinger operator P(h) = -h^2 Delta + V is the Lambda-free case; the
// conformal resolvent operator -h^2 Lambda^{-1} Delta + 1 uses V == 1 and a
// conformal factor. Symmetric in the Lambda-weighted inner product.
class DiscreteOperator {
 public:
  DiscreteOperator(const TorusDomain &dom, Field2D potential, double h, Scheme scheme,
                   std::optional<Field2D> lambda = std::nullopt);

  void apply(const Field2D &u, Field2D &out) const;
  const TorusDomain &domain() const { return dom_; }
  double h() const { return h_; }
  Scheme scheme() const { return scheme_; }
  const Field2D &potential() const { return potential_; }
  bool has_lambda() const { return lambda_.has_value(); }
  const Field2D &lambda() const { return *lambda_; }
  const Spectral &spectral() const { return *spectral_; }
  // -Delta symbol of the scheme per Fourier mode (exact for spectral, the
  // discrete sin^2 symbol for fd5)
  const std::vector<double> &neg_lap_symbol() const { return sym_; }
  // <u,v> with the Lambda weight (plain dot when Lambda is absent)
  double weighted_dot(const Field2D &u, const Field2D &v) const;

 private:
  TorusDomain dom_;
  Field2D potential_;
  double h_;
  Scheme scheme_;
  std::optional<Field2D> lambda_;
  std::shared_ptr<Spectral> spectral_;
  std::vector<double> sym_;
  mutable Field2D work_;
};

// Resolution precondition: dx <= 2 pi h / (10 sqrt(max(E - min V, 1))).
// Throws ResolutionError naming the required n when violated.
void check_resolution(const TorusDomain &dom, const Field2D &potential, double h,
                      double target_energy);

// Assembles the Schrodinger operator and verifies symmetry on 5 seeded random
// vector pairs to 1e-10.
DiscreteOperator assemble(const TorusDomain &dom, const Field2D &potential, double h,
                          Scheme scheme, double target_energy);

struct EigenPair {
  double h = 0.0;
  double energy = 0.0;  // E(h)
  Field2D phi;          // real, L2-normalized with grid quadrature
  double residual = 0.0;  // ||P phi - E phi||_2 / ||phi||_2
  bool degenerate_cluster = false;
};

struct EigenOptions {
  int max_lanczos = 220;          // outer iteration cap
  int max_cg = 30000;             // inner iteration cap per solve
  double cg_tol = 1e-12;          // relative residual of the inner solves
  double shift_offset = 3e-3;     // sigma = E + offset*(1+|E|)*0.618...
  unsigned seed = 20250809;
};

// k eigenpairs with E(h) nearest target, sorted by |E(h)-E| (ties toward the
// smaller E(h)). Shift-invert Lanczos; inner solves are CG on the shifted
// normal equations, preconditioned by the Fourier-diagonal symbol.
std::vector<EigenPair> eigenpairs_near(const DiscreteOperator &op, double target,
                                       int k, double tol,
                                       const EigenOptions &opts = {});

struct SweepEntry {
  double h = 0.0;
  std::optional<EigenPair> pair;
  std::string error;  // empty on success
};

// One selected pair per h (nearest target). Per-h failures are recorded and
// the sweep continues.
std::vector<SweepEntry> eigensolve_sweep(const Scene &scene, const std::vector<double> &h_list,
                                         double tol = 1e-8, Scheme scheme = Scheme::spectral,
                                         const EigenOptions &opts = {});

}  // namespace semlab

#endif

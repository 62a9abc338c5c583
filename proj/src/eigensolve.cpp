#include "eigensolve.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <random>

namespace semlab {

DiscreteOperator::DiscreteOperator(const TorusDomain &dom, Field2D potential, double h,
                                   Scheme scheme, std::optional<Field2D> lambda)
    : dom_(dom), potential_(std::move(potential)), h_(h), scheme_(scheme),
      lambda_(std::move(lambda)) {
  require(h_ > 0.0, ErrorCode::invalid_argument, "h must be positive");
  spectral_ = std::make_shared<Spectral>(dom_);
  const int n = dom_.n;
  sym_.resize(dom_.size());
  if (scheme_ == Scheme::spectral) {
    sym_ = spectral_->lap_symbol();
  } else {
    const double dx = dom_.dx();
    std::vector<double> s1(n);
    for (int k = 0; k < n; ++k) {
      const double sn = std::sin(0.5 * spectral_->freq(k) * dx);
      s1[k] = 4.0 / (dx * dx) * sn * sn;
    }
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l) sym_[dom_.index(k, l)] = s1[k] + s1[l];
  }
  if (lambda_) {
    require(lambda_->dom.same_grid(dom_), ErrorCode::invalid_argument,
            "conformal factor grid mismatch");
    for (double v : lambda_->v)
      require(v > 0.0, ErrorCode::non_positive_factor, "conformal factor must be positive");
  }
  work_ = Field2D(dom_);
}

void DiscreteOperator::apply(const Field2D &u, Field2D &out) const {
  const double h2 = h_ * h_;
  if (scheme_ == Scheme::spectral) {
    spectral_->apply_symbol(u, sym_, work_);
  } else {
    const int n = dom_.n;
    const double idx2 = 1.0 / (dom_.dx() * dom_.dx());
    if (work_.v.size() != dom_.size()) work_ = Field2D(dom_);
    for (int i = 0; i < n; ++i) {
      const int im = dom_.wrap_index(i - 1), ip = dom_.wrap_index(i + 1);
      for (int j = 0; j < n; ++j) {
        const int jm = dom_.wrap_index(j - 1), jp = dom_.wrap_index(j + 1);
        work_.at(i, j) = idx2 * (4.0 * u.at(i, j) - u.at(im, j) - u.at(ip, j) -
                                 u.at(i, jm) - u.at(i, jp));
      }
    }
  }
  if (out.v.size() != dom_.size()) out = Field2D(dom_);
  if (lambda_) {
    for (std::size_t k = 0; k < dom_.size(); ++k)
      out.v[k] = h2 * work_.v[k] / lambda_->v[k] + potential_.v[k] * u.v[k];
  } else {
    for (std::size_t k = 0; k < dom_.size(); ++k)
      out.v[k] = h2 * work_.v[k] + potential_.v[k] * u.v[k];
  }
}

double DiscreteOperator::weighted_dot(const Field2D &u, const Field2D &v) const {
  if (!lambda_) return dot(u, v);
  double s = 0.0;
  for (std::size_t k = 0; k < dom_.size(); ++k) s += u.v[k] * v.v[k] * lambda_->v[k];
  return s;
}

void check_resolution(const TorusDomain &dom, const Field2D &potential, double h,
                      double target_energy) {
  const double vmin = potential.min();
  const double limit = 2.0 * M_PI * h / (10.0 * std::sqrt(std::max(target_energy - vmin, 1.0)));
  if (dom.dx() > limit) {
    const int need = static_cast<int>(std::ceil(dom.length / limit));
    fail(ErrorCode::resolution,
         "grid does not resolve the local wavelength at h=" + std::to_string(h) +
             ": need n >= " + std::to_string(need) + ", have " + std::to_string(dom.n));
  }
}

DiscreteOperator assemble(const TorusDomain &dom, const Field2D &potential, double h,
                          Scheme scheme, double target_energy) {
  check_resolution(dom, potential, h, target_energy);
  DiscreteOperator op(dom, potential, h, scheme);
  std::mt19937 rng(987654321u);
  std::normal_distribution<double> gauss;
  Field2D u(dom), v(dom), au(dom), av(dom);
  for (int trial = 0; trial < 5; ++trial) {
    for (auto &x : u.v) x = gauss(rng);
    for (auto &x : v.v) x = gauss(rng);
    op.apply(u, au);
    op.apply(v, av);
    const double lhs = op.weighted_dot(au, v);
    const double rhs = op.weighted_dot(u, av);
    const double scale = au.norm2() * v.norm2() + 1e-300;
    require(std::abs(lhs - rhs) <= 1e-10 * scale, ErrorCode::internal,
            "operator failed the symmetry self-check");
  }
  return op;
}

namespace {

// CG on the shifted normal equations (A - sigma)^2 y = (A - sigma) b with a
// Fourier-diagonal preconditioner built from the scheme symbol and mean(V).
class ShiftedSolver {
 public:
  ShiftedSolver(const DiscreteOperator &op, double sigma, const EigenOptions &opts)
      : op_(op), sigma_(sigma), opts_(opts) {
    const auto &dom = op.domain();
    const double h2 = op.h() * op.h();
    const double vbar = op.potential().mean();
    const double spread = op.potential().max() - op.potential().min();
    const double floor = std::max(1e-12, 0.06 * spread * spread);
    precond_.resize(dom.size());
    const auto &sym = op.neg_lap_symbol();
    for (std::size_t k = 0; k < dom.size(); ++k) {
      const double d = h2 * sym[k] + vbar - sigma;
      precond_[k] = 1.0 / std::max(d * d, floor);
    }
    r_ = z_ = p_ = ap_ = t_ = Field2D(dom);
  }

  long iterations() const { return iters_; }

  // y solves (A - sigma) y = b to relative tolerance
  void solve(const Field2D &b, Field2D &y) {
    const auto &dom = op_.domain();
    if (y.v.size() != dom.size()) y = Field2D(dom);
    std::fill(y.v.begin(), y.v.end(), 0.0);
    apply_shifted(b, r_);  // rhs of the normal equations
    const double bn = r_.norm2();
    if (bn == 0.0) return;
    precondition(r_, z_);
    p_ = z_;
    double rz = dot(r_, z_);
    for (int it = 0; it < opts_.max_cg; ++it) {
      apply_shifted(p_, t_);
      apply_shifted(t_, ap_);
      const double pap = dot(p_, ap_);
      if (!(pap > 0.0)) break;  // loss of definiteness at roundoff level
      const double alpha = rz / pap;
      axpy(alpha, p_, y);
      axpy(-alpha, ap_, r_);
      ++iters_;
      if (r_.norm2() <= opts_.cg_tol * bn) return;
      precondition(r_, z_);
      const double rz2 = dot(r_, z_);
      const double beta = rz2 / rz;
      rz = rz2;
      for (std::size_t k = 0; k < p_.v.size(); ++k) p_.v[k] = z_.v[k] + beta * p_.v[k];
    }
    // accept the best iterate; Lanczos convergence checks use true residuals
  }

 private:
  void apply_shifted(const Field2D &u, Field2D &out) {
    op_.apply(u, out);
    axpy(-sigma_, u, out);
  }
  void precondition(const Field2D &u, Field2D &out) {
    op_.spectral().apply_symbol(u, precond_, out);
  }

  const DiscreteOperator &op_;
  double sigma_;
  EigenOptions opts_;
  std::vector<double> precond_;
  Field2D r_, z_, p_, ap_, t_;
  long iters_ = 0;
};

struct Ritz {
  double lambda;
  double mu;
  int index;
};

}  // namespace

std::vector<EigenPair> eigenpairs_near(const DiscreteOperator &op, double target, int k,
                                       double tol, const EigenOptions &opts) {
  require(k >= 1, ErrorCode::invalid_argument, "k must be >= 1");
  require(!op.has_lambda(), ErrorCode::invalid_argument,
          "eigenpairs_near expects the flat-weight Schrodinger operator");
  const TorusDomain &dom = op.domain();
  const double sigma = target + opts.shift_offset * (1.0 + std::abs(target)) * 0.618033988;
  ShiftedSolver solver(op, sigma, opts);

  std::mt19937 rng(opts.seed);
  std::normal_distribution<double> gauss;
  std::vector<Field2D> basis;
  std::vector<double> alpha, beta;
  Field2D q(dom), w(dom), tmp(dom);
  for (auto &x : q.v) x = gauss(rng);
  {
    const double nq = q.norm2();
    for (auto &x : q.v) x /= nq;
  }

  const int want = k + 1;  // one extra for the cluster flag
  std::vector<EigenPair> found;

  auto extract = [&](bool final_pass) -> bool {
    const int m = static_cast<int>(alpha.size());
    if (m < want) return false;
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
      T(i, i) = alpha[i];
      if (i + 1 < m) T(i, i + 1) = T(i + 1, i) = beta[i];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(T);
    std::vector<Ritz> ritz;
    for (int i = 0; i < m; ++i) {
      const double mu = eig.eigenvalues()(i);
      if (std::abs(mu) < 1e-14) continue;  // unconverged far end of the spectrum
      ritz.push_back({sigma + 1.0 / mu, mu, i});
    }
    std::sort(ritz.begin(), ritz.end(), [&](const Ritz &a, const Ritz &b) {
      const double da = std::abs(a.lambda - target), db = std::abs(b.lambda - target);
      if (da != db) return da < db;
      return a.lambda < b.lambda;
    });
    if (static_cast<int>(ritz.size()) < want) return false;

    std::vector<EigenPair> pairs;
    for (int c = 0; c < want; ++c) {
      const Ritz &r = ritz[c];
      // cheap bound first: beta_m |s_m| relative to |mu|
      const double bm = static_cast<int>(beta.size()) >= m ? beta[m - 1] : 0.0;
      const double bound = std::abs(bm * eig.eigenvectors()(m - 1, r.index));
      if (!final_pass && bound > 0.05 * tol * std::abs(r.mu)) return false;
      Field2D v(dom);
      for (int j = 0; j < m; ++j) axpy(eig.eigenvectors()(j, r.index), basis[j], v);
      const double nv = v.norm2();
      for (auto &x : v.v) x /= nv;
      op.apply(v, tmp);
      const double lambda = dot(v, tmp);
      axpy(-lambda, v, tmp);
      const double res = tmp.norm2();
      if (res > tol) {
        if (!final_pass) return false;
        fail(ErrorCode::convergence_failure,
             "iteration budget exhausted; best residual " + std::to_string(res) +
                 " for E(h)=" + std::to_string(lambda));
      }
      EigenPair p;
      p.h = op.h();
      p.energy = lambda;
      p.phi = std::move(v);
      p.residual = res;
      pairs.push_back(std::move(p));
    }
    // deterministic sign and quadrature normalization
    for (EigenPair &p : pairs) {
      std::size_t arg = 0;
      double best = 0.0;
      for (std::size_t i = 0; i < p.phi.v.size(); ++i)
        if (std::abs(p.phi.v[i]) > best) {
          best = std::abs(p.phi.v[i]);
          arg = i;
        }
      const double sign = p.phi.v[arg] < 0.0 ? -1.0 : 1.0;
      const double scale = sign / (p.phi.norm2() * dom.dx());
      for (auto &x : p.phi.v) x *= scale;
    }
    for (int c = 0; c < want; ++c)
      for (int d = 0; d < want; ++d)
        if (d != c && std::abs(pairs[c].energy - pairs[d].energy) < 1e-8)
          pairs[c].degenerate_cluster = true;
    pairs.resize(k);
    found = std::move(pairs);
    return true;
  };

  for (int m = 0; m < opts.max_lanczos; ++m) {
    solver.solve(q, w);
    const double a = dot(w, q);
    axpy(-a, q, w);
    if (!basis.empty()) axpy(-beta.back(), basis.back(), w);
    basis.push_back(q);
    alpha.push_back(a);
    // full reorthogonalization, two passes
    for (int pass = 0; pass < 2; ++pass)
      for (const Field2D &b : basis) axpy(-dot(b, w), b, w);
    const double nb = w.norm2();
    beta.push_back(nb);
    if ((m >= want + 2 && m % 4 == 0) || nb < 1e-13) {
      if (extract(false)) return found;
      if (nb < 1e-13) break;  // invariant subspace exhausted
    }
    q = w;
    for (auto &x : q.v) x /= nb;
  }
  if (extract(true)) return found;
  fail(ErrorCode::convergence_failure, "Lanczos iteration cap reached without " +
                                           std::to_string(k) + " converged pairs");
}

std::vector<SweepEntry> eigensolve_sweep(const Scene &scene, const std::vector<double> &h_list,
                                         double tol, Scheme scheme, const EigenOptions &opts) {
  for (std::size_t i = 1; i < h_list.size(); ++i)
    require(h_list[i] < h_list[i - 1], ErrorCode::invalid_argument,
            "h list must be strictly decreasing");
  std::vector<SweepEntry> out;
  const Field2D V = scene.potential_field();
  for (double h : h_list) {
    SweepEntry entry;
    entry.h = h;
    try {
      DiscreteOperator op = assemble(scene.dom, V, h, scheme, scene.energy);
      auto pairs = eigenpairs_near(op, scene.energy, 1, tol, opts);
      entry.pair = std::move(pairs.front());
    } catch (const Error &e) {
      entry.error = std::string(error_code_name(e.code())) + ": " + e.what();
    }
    out.push_back(std::move(entry));
  }
  return out;
}

}  // namespace semlab

#include "sfp/divergences.hpp"

#include <cmath>
#include <limits>

namespace sfp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool int_like(double t) { return std::abs(t - std::round(t)) < 1e-12; }

bool even_int_like(double t) {
  return int_like(t) && std::fmod(std::abs(std::round(t)), 2.0) < 0.5;
}

// x^e for the exponents the beta generator needs. Negative bases are legal
// only for integer e; powers that would leave the reals throw.
double beta_pow(double x, double e) {
  if (x >= 0.0) return std::pow(x, e);
  if (!int_like(e))
    throw DomainViolation("beta generator: negative base with non-integer exponent");
  const double mag = std::pow(-x, e);
  return even_int_like(e) ? mag : -mag;
}

// t^{1/e} with e = beta - 1. Negative t requires an odd integer root.
double beta_root(double t, double e) {
  if (t >= 0.0) return std::pow(t, 1.0 / e);
  if (int_like(e) && !even_int_like(e)) return -std::pow(-t, 1.0 / e);
  throw DomainViolation("beta generator: conjugate argument outside real range");
}

}  // namespace

BregmanGenerator::BregmanGenerator(GeneratorKind kind, double beta, Matrix M)
    : kind_(kind), beta_(beta) {
  if (kind == GeneratorKind::Quadratic) {
    M_factor_ = std::make_shared<SpdFactorization>(M);  // rejects non-SPD
    M_ = std::make_shared<const Matrix>(std::move(M));
  }
}

BregmanGenerator BregmanGenerator::squared_euclidean() {
  return BregmanGenerator(GeneratorKind::SquaredEuclidean, 0.0, Matrix());
}

BregmanGenerator BregmanGenerator::negative_entropy() {
  return BregmanGenerator(GeneratorKind::NegativeEntropy, 0.0, Matrix());
}

BregmanGenerator BregmanGenerator::quadratic(Matrix M) {
  return BregmanGenerator(GeneratorKind::Quadratic, 0.0, std::move(M));
}

BregmanGenerator BregmanGenerator::beta_divergence(double beta) {
  if (int_like(beta) && (std::round(beta) == 0.0 || std::round(beta) == 1.0))
    throw Error("beta_divergence: beta in {0, 1}; use ItakuraSaito or NegativeEntropy");
  return BregmanGenerator(GeneratorKind::Beta, beta, Matrix());
}

BregmanGenerator BregmanGenerator::itakura_saito() {
  return BregmanGenerator(GeneratorKind::ItakuraSaito, 0.0, Matrix());
}

double BregmanGenerator::beta() const {
  if (kind_ != GeneratorKind::Beta) throw Error("beta(): not a beta generator");
  return beta_;
}

const Matrix& BregmanGenerator::quadratic_matrix() const {
  if (kind_ != GeneratorKind::Quadratic)
    throw Error("quadratic_matrix(): not a quadratic generator");
  return *M_;
}

bool BregmanGenerator::in_domain(const Vector& x) const {
  if (!x.allFinite()) return false;
  switch (kind_) {
    case GeneratorKind::SquaredEuclidean:
    case GeneratorKind::Quadratic:
      return true;
    case GeneratorKind::NegativeEntropy:
    case GeneratorKind::ItakuraSaito:
      return (x.array() > 0.0).all();
    case GeneratorKind::Beta:
      if (even_int_like(beta_) && beta_ >= 2.0) return true;
      if (beta_ >= 2.0) return (x.array() >= 0.0).all();
      return (x.array() > 0.0).all();
  }
  return false;
}

double BregmanGenerator::value(const Vector& x) const {
  switch (kind_) {
    case GeneratorKind::SquaredEuclidean:
      return 0.5 * x.squaredNorm();
    case GeneratorKind::Quadratic:
      return 0.5 * x.dot(*M_ * x);
    case GeneratorKind::NegativeEntropy: {
      double s = 0.0;
      for (Index i = 0; i < x.size(); ++i) {
        if (x[i] < 0.0)
          throw DomainViolation("negative entropy: negative coordinate");
        if (x[i] > 0.0) s += x[i] * std::log(x[i]);
      }
      return s;
    }
    case GeneratorKind::ItakuraSaito: {
      double s = 0.0;
      for (Index i = 0; i < x.size(); ++i) {
        if (x[i] <= 0.0)
          throw DomainViolation("itakura-saito: non-positive coordinate");
        s -= std::log(x[i]);
      }
      return s;
    }
    case GeneratorKind::Beta: {
      double s = 0.0;
      for (Index i = 0; i < x.size(); ++i) s += beta_pow(x[i], beta_);
      return s / (beta_ * (beta_ - 1.0));
    }
  }
  throw Error("BregmanGenerator::value: unknown kind");
}

Vector BregmanGenerator::grad(const Vector& x) const {
  switch (kind_) {
    case GeneratorKind::SquaredEuclidean:
      return x;
    case GeneratorKind::Quadratic:
      return *M_ * x;
    case GeneratorKind::NegativeEntropy: {
      if ((x.array() <= 0.0).any())
        throw DomainViolation("negative entropy: gradient needs x > 0");
      return x.array().log().matrix() + Vector::Ones(x.size());
    }
    case GeneratorKind::ItakuraSaito: {
      if ((x.array() <= 0.0).any())
        throw DomainViolation("itakura-saito: gradient needs x > 0");
      return -x.cwiseInverse();
    }
    case GeneratorKind::Beta: {
      Vector g(x.size());
      for (Index i = 0; i < x.size(); ++i)
        g[i] = beta_pow(x[i], beta_ - 1.0) / (beta_ - 1.0);
      return g;
    }
  }
  throw Error("BregmanGenerator::grad: unknown kind");
}

Vector BregmanGenerator::hess_diag(const Vector& x) const {
  switch (kind_) {
    case GeneratorKind::SquaredEuclidean:
      return Vector::Ones(x.size());
    case GeneratorKind::NegativeEntropy:
      if ((x.array() <= 0.0).any())
        throw DomainViolation("negative entropy: Hessian needs x > 0");
      return x.cwiseInverse();
    case GeneratorKind::ItakuraSaito:
      if ((x.array() <= 0.0).any())
        throw DomainViolation("itakura-saito: Hessian needs x > 0");
      return x.array().square().inverse().matrix();
    case GeneratorKind::Beta: {
      Vector d(x.size());
      for (Index i = 0; i < x.size(); ++i)
        d[i] = beta_pow(x[i], beta_ - 2.0);
      return d;
    }
    case GeneratorKind::Quadratic:
      throw Error("hess_diag: quadratic generator is not separable");
  }
  throw Error("BregmanGenerator::hess_diag: unknown kind");
}

Vector BregmanGenerator::hess_apply(const Vector& x, const Vector& w) const {
  if (kind_ == GeneratorKind::Quadratic) return *M_ * w;
  return hess_diag(x).cwiseProduct(w);
}

Matrix BregmanGenerator::hess_dense(const Vector& x) const {
  if (kind_ == GeneratorKind::Quadratic) return *M_;
  return hess_diag(x).asDiagonal();
}

Vector BregmanGenerator::conj_grad(const Vector& z) const {
  switch (kind_) {
    case GeneratorKind::SquaredEuclidean:
      return z;
    case GeneratorKind::Quadratic:
      return M_factor_->solve(z);
    case GeneratorKind::NegativeEntropy:
      return (z.array() - 1.0).exp().matrix();
    case GeneratorKind::ItakuraSaito: {
      if ((z.array() >= 0.0).any())
        throw DomainViolation("itakura-saito: conjugate needs z < 0");
      return -z.cwiseInverse();
    }
    case GeneratorKind::Beta: {
      // grad phi*(z) = ((beta - 1) z)^{1/(beta-1)}
      Vector m(z.size());
      for (Index i = 0; i < z.size(); ++i)
        m[i] = beta_root((beta_ - 1.0) * z[i], beta_ - 1.0);
      return m;
    }
  }
  throw Error("BregmanGenerator::conj_grad: unknown kind");
}

double BregmanGenerator::conj_value(const Vector& z) const {
  switch (kind_) {
    case GeneratorKind::SquaredEuclidean:
      return 0.5 * z.squaredNorm();
    case GeneratorKind::NegativeEntropy:
      return (z.array() - 1.0).exp().sum();
    default: {
      const Vector m = conj_grad(z);
      return z.dot(m) - value(m);
    }
  }
}

double BregmanGenerator::conj_curvature(const Vector& z, const Vector& a) const {
  // d2phi*(z) = [d2phi(m)]^{-1} at m = grad phi*(z).
  if (kind_ == GeneratorKind::Quadratic)
    return a.dot(M_factor_->solve(a));
  const Vector m = conj_grad(z);
  const Vector d = hess_diag(m);
  double s = 0.0;
  for (Index i = 0; i < a.size(); ++i) {
    if (d[i] <= 0.0) return kInf;
    s += a[i] * a[i] / d[i];
  }
  return s;
}

double divergence(const BregmanGenerator& gen, const Vector& v,
                  const Vector& u) {
  if (v.size() != u.size()) throw DimensionMismatch("divergence: size mismatch");
  const double d = gen.value(v) - gen.value(u) - gen.grad(u).dot(v - u);
  // Round-off can push an exact zero slightly negative.
  if (d < 0.0) {
    const double scale =
        1.0 + std::abs(gen.value(v)) + std::abs(gen.value(u));
    if (d > -1e-10 * scale) return 0.0;
    throw Error("divergence: negative value; arguments outside domain?");
  }
  return d;
}

namespace {

// Scalar dual of the hyperplane projection: rho(gamma) =
// phi*(grad phi(x) - gamma a) + gamma c, minimized over gamma.
struct DualProblem {
  const BregmanGenerator& gen;
  const Vector& grad_x;
  const Vector& a;
  double c;

  // rho'(gamma) = c - a^t grad phi*(grad phi(x) - gamma a); increasing.
  double slope(double gamma) const {
    return c - a.dot(gen.conj_grad(grad_x - gamma * a));
  }
  double curvature(double gamma) const {
    return gen.conj_curvature(grad_x - gamma * a, a);
  }
  bool feasible(double gamma) const {
    try {
      const double s = slope(gamma);
      return std::isfinite(s);
    } catch (const DomainViolation&) {
      return false;
    }
  }
};

}  // namespace

BregmanProjectionResult bregman_project_hyperplane(const BregmanGenerator& gen,
                                                   const Vector& x,
                                                   const Vector& a, double c) {
  if (a.squaredNorm() == 0.0)
    throw ZeroNormal("bregman_project_hyperplane: zero normal");
  if (x.size() != a.size())
    throw DimensionMismatch("bregman_project_hyperplane: size mismatch");
  if (!gen.in_domain(x))
    throw DomainViolation("bregman_project_hyperplane: point outside domain");

  const Vector grad_x = gen.grad(x);
  DualProblem dual{gen, grad_x, a, c};
  const double tol = 1e-10 * (1.0 + std::abs(c));
  const int max_iters = 100;

  double gamma = 0.0;
  double s0 = dual.slope(0.0);
  if (std::abs(s0) <= tol)
    return {gen.conj_grad(grad_x), 0.0, 0};

  // Bracket a sign change of the increasing slope; expansion runs toward
  // the infeasible side carefully since the dual domain can be bounded.
  const int direction = s0 < 0.0 ? +1 : -1;
  double lo = 0.0, hi = 0.0;  // slope(lo) < 0 < slope(hi) after bracketing
  double inner = 0.0, outer;
  double step = 1.0;
  bool bracketed = false;
  for (int tries = 0; tries < 200 && !bracketed; ++tries) {
    outer = inner + direction * step;
    if (!dual.feasible(outer)) {
      // Retreat toward the last feasible gamma; the minimizer, if any,
      // lies inside the feasible interval.
      double shrink = 0.5;
      bool found = false;
      for (int r = 0; r < 64; ++r) {
        const double trial = inner + direction * step * shrink;
        if (dual.feasible(trial)) {
          outer = trial;
          found = true;
          break;
        }
        shrink *= 0.5;
      }
      if (!found)
        throw NoFiniteMinimizer(
            "bregman_project_hyperplane: dual has no feasible descent interval");
      step *= 0.5;
    }
    const double s = dual.slope(outer);
    if ((s0 < 0.0 && s >= 0.0) || (s0 > 0.0 && s <= 0.0)) {
      lo = direction > 0 ? inner : outer;
      hi = direction > 0 ? outer : inner;
      bracketed = true;
    } else {
      inner = outer;
      step *= 2.0;
      if (std::abs(inner) > 1e100)
        throw NoFiniteMinimizer(
            "bregman_project_hyperplane: dual objective unbounded below");
    }
  }
  if (!bracketed)
    throw NoFiniteMinimizer(
        "bregman_project_hyperplane: failed to bracket the dual minimizer");

  // Safeguarded Newton on the slope, bisection when Newton leaves the
  // bracket or curvature degenerates.
  gamma = 0.5 * (lo + hi);
  int iters = 0;
  double s = dual.slope(gamma);
  while (std::abs(s) > tol && ++iters <= max_iters) {
    if (s < 0.0)
      lo = gamma;
    else
      hi = gamma;
    double next = gamma;
    const double curv = dual.curvature(gamma);
    if (std::isfinite(curv) && curv > 0.0) next = gamma - s / curv;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (!dual.feasible(next)) next = 0.5 * (lo + hi);
    if (next == gamma) break;  // bracket exhausted at round-off
    gamma = next;
    s = dual.slope(gamma);
  }
  if (iters > max_iters)
    throw Error("bregman_project_hyperplane: Newton did not converge");

  return {gen.conj_grad(grad_x - gamma * a), gamma, iters};
}

BregmanProjectionResult bregman_project_halfspace(const BregmanGenerator& gen,
                                                  const Vector& x,
                                                  const Vector& a, double c) {
  if (a.squaredNorm() == 0.0)
    throw ZeroNormal("bregman_project_halfspace: zero normal");
  if (!gen.in_domain(x))
    throw DomainViolation("bregman_project_halfspace: point outside domain");
  if (a.dot(x) <= c) return {x, 0.0, 0};
  return bregman_project_hyperplane(gen, x, a, c);
}

Vector bregman_project_set(const BregmanGenerator& gen,
                           const ConstraintSet& set, const Vector& x) {
  if (gen.is_euclidean()) return set.project(x);
  switch (set.kind()) {
    case SetKind::Singleton:
      return set.point();
    case SetKind::HalfSpace:
      return bregman_project_halfspace(gen, x, set.normal(), set.offset()).point;
    case SetKind::Hyperplane:
      return bregman_project_hyperplane(gen, x, set.normal(), set.offset()).point;
    case SetKind::Box:
      // A separable divergence is coordinate-wise convex in its first
      // argument with minimum at x, so the box projection clamps.
      if (!gen.is_separable()) break;
      return project_box(x, set.lower(), set.upper());
    case SetKind::NonnegativeOrthant:
      if (!gen.is_separable()) break;
      return x.cwiseMax(0.0);
    default:
      break;
  }
  throw Error("bregman_project_set: unsupported generator/set combination");
}

}  // namespace sfp

#pragma once

#include <memory>

#include "sfp/linalg.hpp"
#include "sfp/sets.hpp"

namespace sfp {

enum class GeneratorKind {
  SquaredEuclidean,
  NegativeEntropy,
  Quadratic,
  Beta,
  ItakuraSaito,
};

/// A strictly convex, twice differentiable generator phi together with the
/// maps the solver needs: phi, grad phi, the Hessian action d2phi(x)w, the
/// conjugate value phi*, and grad phi* (which inverts grad phi).
///
/// Conventions: SquaredEuclidean is phi(u) = 0.5 ||u||^2 so the generated
/// divergence is 0.5 ||v - u||^2, and Quadratic(M) is phi(u) = 0.5 u^t M u,
/// so Quadratic(I) and SquaredEuclidean coincide. NegativeEntropy
/// (phi = sum u log u) generates the KL divergence, ItakuraSaito
/// (phi = -sum log u) its beta = 0 analogue; both are separate kinds rather
/// than Beta limits. Beta(beta) is phi(u) = sum u^beta / (beta (beta - 1))
/// for beta outside {0, 1}; negative coordinates are accepted only when the
/// exponent arithmetic stays real and the generator stays convex there
/// (even integer beta >= 2).
class BregmanGenerator {
 public:
  static BregmanGenerator squared_euclidean();
  static BregmanGenerator negative_entropy();
  static BregmanGenerator quadratic(Matrix M);
  static BregmanGenerator beta_divergence(double beta);
  static BregmanGenerator itakura_saito();

  GeneratorKind kind() const { return kind_; }
  double beta() const;
  const Matrix& quadratic_matrix() const;

  /// True for every kind except Quadratic; separable generators have
  /// diagonal second differentials.
  bool is_separable() const { return kind_ != GeneratorKind::Quadratic; }
  bool is_euclidean() const { return kind_ == GeneratorKind::SquaredEuclidean; }

  bool in_domain(const Vector& x) const;

  double value(const Vector& x) const;
  Vector grad(const Vector& x) const;
  /// d2phi(x) w.
  Vector hess_apply(const Vector& x, const Vector& w) const;
  /// Diagonal of d2phi(x); only for separable kinds.
  Vector hess_diag(const Vector& x) const;
  Matrix hess_dense(const Vector& x) const;

  /// phi*(z); computed through the Fenchel equality phi*(z) = <z, m> - phi(m)
  /// at m = grad phi*(z) where no cheaper closed form exists.
  double conj_value(const Vector& z) const;
  /// grad phi*(z); inverts grad phi.
  Vector conj_grad(const Vector& z) const;
  /// a^t d2phi*(z) a, the curvature of the projection dual; used by the
  /// Newton iteration on gamma.
  double conj_curvature(const Vector& z, const Vector& a) const;

 private:
  BregmanGenerator(GeneratorKind kind, double beta, Matrix M);

  GeneratorKind kind_;
  double beta_ = 0.0;
  // Quadratic payload; shared so generators stay cheap to copy.
  std::shared_ptr<const Matrix> M_;
  std::shared_ptr<const SpdFactorization> M_factor_;
};

/// D_phi(v, u) = phi(v) - phi(u) - <grad phi(u), v - u>. Nonnegative, zero
/// iff v = u. Throws DomainViolation outside the generator domain.
double divergence(const BregmanGenerator& gen, const Vector& v,
                  const Vector& u);

struct BregmanProjectionResult {
  Vector point;
  double gamma = 0.0;
  int inner_iterations = 0;
};

/// Bregman projection of x onto the hyperplane {z : a^t z = c}:
///   point = grad phi*(grad phi(x) - gamma a)
/// with gamma minimizing phi*(grad phi(x) - gamma a) + gamma c. The scalar
/// problem is solved by safeguarded Newton with bisection fallback,
/// tolerance 1e-10 on the scalar gradient, at most 100 inner iterations.
BregmanProjectionResult bregman_project_hyperplane(const BregmanGenerator& gen,
                                                   const Vector& x,
                                                   const Vector& a, double c);

/// Half-space {z : a^t z <= c}: returns x with gamma = 0 when feasible,
/// otherwise the hyperplane projection (gamma > 0).
BregmanProjectionResult bregman_project_halfspace(const BregmanGenerator& gen,
                                                  const Vector& x,
                                                  const Vector& a, double c);

/// Bregman projection of x onto a constraint set, for the supported
/// combinations: any set under SquaredEuclidean (coincides with the
/// Euclidean projection), and Singleton / HalfSpace / Hyperplane /
/// Box / NonnegativeOrthant under separable generators (box-like sets
/// reduce to coordinate-wise clamping of a separable divergence).
Vector bregman_project_set(const BregmanGenerator& gen,
                           const ConstraintSet& set, const Vector& x);

}  // namespace sfp

#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "sfp/divergences.hpp"
#include "sfp/linalg.hpp"
#include "sfp/mappings.hpp"
#include "sfp/sets.hpp"

namespace sfp {

struct WeightedSet {
  ConstraintSet set;
  double weight = 1.0;
};

/// How the proximity function is evaluated. Euclidean and Bregman follow the
/// weighted squared-distance / weighted-divergence forms; Hinge evaluates the
/// region-by-region one-sided penalties directly, which coincides with the
/// Euclidean form when every range set is a coordinate half-space.
enum class ProximityForm { Euclidean, Bregman, Hinge };

/// A split feasibility problem: weighted domain constraints on x, weighted
/// range constraints on h(x), and the generators measuring proximity on each
/// side. Weights are rescaled to sum to one at construction (with a note on
/// stderr when a rescale actually changed them). Immutable once built.
class SplitProblem {
 public:
  SplitProblem(SmoothMap h, std::vector<WeightedSet> domain,
               std::vector<WeightedSet> range,
               BregmanGenerator domain_generator =
                   BregmanGenerator::squared_euclidean(),
               BregmanGenerator range_generator =
                   BregmanGenerator::squared_euclidean(),
               bool hinge_mode = false);

  const SmoothMap& map() const { return h_; }
  const std::vector<WeightedSet>& domain_constraints() const { return domain_; }
  const std::vector<WeightedSet>& range_constraints() const { return range_; }
  const BregmanGenerator& domain_generator() const { return phi_; }
  const BregmanGenerator& range_generator() const { return zeta_; }

  Index input_dim() const { return h_.input_dim(); }
  Index output_dim() const { return h_.output_dim(); }
  double domain_weight() const { return v_total_; }
  double range_weight() const { return w_total_; }
  bool weights_were_rescaled() const { return weights_rescaled_; }

  ProximityForm form() const { return form_; }
  /// Copy of the problem evaluated under a forced form (the Bregman and
  /// Euclidean routes coincide for squared-Euclidean generators; forcing
  /// lets callers exercise either one).
  SplitProblem with_form(ProximityForm form) const;

  /// True when x is in every domain set and h(x) in every range set.
  bool is_split_feasible(const Vector& x, double tol = 1e-8) const;

  // Hinge-mode data: per range constraint, the bound d_j and whether the
  // region is a target (lower bound) rather than a cap.
  double hinge_bound(std::size_t j) const { return hinge_bounds_[j]; }
  bool hinge_is_target(std::size_t j) const { return hinge_targets_[j]; }

 private:
  SmoothMap h_;
  std::vector<WeightedSet> domain_;
  std::vector<WeightedSet> range_;
  BregmanGenerator phi_;
  BregmanGenerator zeta_;
  ProximityForm form_;
  double v_total_ = 0.0;
  double w_total_ = 0.0;
  bool weights_rescaled_ = false;
  std::vector<double> hinge_bounds_;
  std::vector<bool> hinge_targets_;
};

/// Value, gradient, and the projections the surrogate is built from.
/// The value vanishes exactly when every cached projection equals its
/// argument, i.e. when x is split feasible.
struct ProximityEvaluation {
  double value = 0.0;
  Vector gradient;
  Vector h_of_x;
  std::vector<Vector> domain_projections;
  std::vector<Vector> range_projections;
};

/// Evaluates the proximity function and its gradient at x under the
/// problem's form. Throws DomainViolation when x (or h(x)) leaves the
/// generator domains on the Bregman path.
ProximityEvaluation eval_f(const SplitProblem& problem, const Vector& x);

/// Value only; skips the Jacobian work. Used by line searches.
double value_f(const SplitProblem& problem, const Vector& x);

/// The majorizing surrogate at x given the projections cached at x_k:
/// quadratic in the Euclidean/hinge forms, divergence-based on the Bregman
/// path. Touches the objective at x_k and dominates it everywhere.
double surrogate_value(const SplitProblem& problem,
                       const ProximityEvaluation& at_xk, const Vector& x);

/// The positive-definite curvature model v I + w grad-h dh (Euclidean) or
/// v d2phi + w grad-h d2zeta dh (Bregman), exposed through solves. Uses the
/// p-by-p Woodbury route when p < n and the curvature permits it.
class HessianOperator {
 public:
  Vector solve(const Vector& g) const;
  /// Assembles the dense matrix; for small problems and tests.
  Matrix dense() const;

  static HessianOperator scaled_identity(Index n, double v);
  static HessianOperator diagonal(Vector d);
  static HessianOperator woodbury(double v, double w, Matrix J);
  static HessianOperator woodbury_diag(Vector d, Vector w_diag, Matrix J);
  static HessianOperator dense_factor(Matrix H);

 private:
  struct ScaledIdentity {
    Index n;
    double v;
  };
  struct Diagonal {
    Vector d;
  };
  struct WoodburyData {
    double v, w;
    Matrix J;
  };
  struct WoodburyDiagData {
    Vector d, w;
    Matrix J;
  };
  struct DenseData {
    Matrix H;
    SpdFactorization factor;
  };
  using Impl = std::variant<ScaledIdentity, Diagonal, WoodburyData,
                            WoodburyDiagData, DenseData>;
  explicit HessianOperator(Impl impl) : impl_(std::move(impl)) {}
  Impl impl_;
};

/// Builds the curvature model at x. The Jacobian may be passed in when the
/// caller already evaluated it.
HessianOperator approx_hessian(const SplitProblem& problem, const Vector& x,
                               const Matrix* jacobian = nullptr);

}  // namespace sfp

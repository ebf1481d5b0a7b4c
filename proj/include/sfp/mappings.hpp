#pragma once

#include <memory>
#include <vector>

#include "sfp/linalg.hpp"

namespace sfp {

/// Overflow-safe softmax mu(y) = log(sum exp(gamma y_l)) / gamma.
/// Satisfies max(y) <= mu(y) <= max(y) + log(m)/gamma.
double softmax_mu(const Vector& y, double gamma);

/// Gradient of mu: exp(gamma y) / sum exp(gamma y_l). Entries are positive
/// and sum to one.
Vector softmax_mu_grad(const Vector& y, double gamma);

enum class MapKind {
  Identity,
  Linear,
  SoftmaxRegion,
  ComplementarityStack,
  ToyQuadratic,
};

/// A differentiable map h : R^n -> R^p with value and Jacobian access.
///
/// SoftmaxRegion aggregates row blocks A_1..A_p of a dose-style matrix into
/// one coordinate per region: mu(A_j x) for non-targets and -mu(-A_j x)
/// (the softmin) for targets. ComplementarityStack is h(x) = (x, u(x)) for
/// an inner map u with equal input and output dimensions. ToyQuadratic is
/// the demo map (x_1, x_2, x_1^2 + x_2^2).
class SmoothMap {
 public:
  static SmoothMap identity(Index n);
  static SmoothMap linear(Matrix A);
  /// h(x) = A x + b; same kind as linear, constant Jacobian A.
  static SmoothMap affine(Matrix A, Vector b);
  static SmoothMap softmax_region(std::vector<Matrix> blocks,
                                  std::vector<bool> is_target, double gamma);
  static SmoothMap complementarity_stack(SmoothMap inner);
  /// Stack with affine inner map u(x) = M x + q.
  static SmoothMap complementarity_affine(Matrix M, Vector q);
  static SmoothMap toy_quadratic();

  MapKind kind() const { return kind_; }
  Index input_dim() const { return n_; }
  Index output_dim() const { return p_; }

  /// True when the Jacobian does not depend on x.
  bool has_constant_jacobian() const;

  Vector eval(const Vector& x) const;
  Matrix jacobian(const Vector& x) const;

  // Parameter access.
  const Matrix& matrix() const;  // Linear
  const Vector& shift() const;   // Linear
  double gamma() const;
  const std::vector<Matrix>& blocks() const;
  const std::vector<bool>& block_targets() const;
  const SmoothMap& inner() const;

 private:
  SmoothMap() = default;

  MapKind kind_ = MapKind::Identity;
  Index n_ = 0, p_ = 0;

  Matrix A_;
  Vector b_;
  std::vector<Matrix> blocks_;
  std::vector<bool> targets_;
  double gamma_ = 0.0;
  std::shared_ptr<const SmoothMap> inner_;
};

}  // namespace sfp

#pragma once

#include <utility>
#include <variant>

#include "sfp/linalg.hpp"

namespace sfp {

enum class SetKind {
  Box,
  Ball,
  HalfSpace,
  Hyperplane,
  Singleton,
  NonnegativeOrthant,
  Sparsity,
  Complementarity,
};

/// Euclidean projection onto the half-space {z : a^t z <= c}.
Vector project_halfspace(const Vector& x, const Vector& a, double c);

/// Euclidean projection onto the hyperplane {z : a^t z = c}.
Vector project_hyperplane(const Vector& x, const Vector& a, double c);

/// Euclidean projection onto the closed ball of radius r about center.
Vector project_ball(const Vector& x, const Vector& center, double r);

/// Coordinate-wise clamp onto [lower, upper] (entries may be +-inf).
Vector project_box(const Vector& x, const Vector& lower, const Vector& upper);

/// Keeps the k entries of largest magnitude and zeroes the rest. Among equal
/// magnitudes, lower indices win, so results are deterministic.
Vector project_sparsity(const Vector& x, Index k);

/// Coordinate-wise projection onto {(x, y) : x >= 0, y >= 0, x y = 0}.
/// Ties u_i = v_i >= 0 resolve to (u_i, 0). The result satisfies
/// nonnegativity and x_i y_i = 0 exactly.
std::pair<Vector, Vector> project_complementarity(const Vector& u,
                                                  const Vector& v);

/// A closed set with a Euclidean projection operator. Box, Ball, HalfSpace,
/// Hyperplane, Singleton, and NonnegativeOrthant are convex; Sparsity and
/// Complementarity are not.
class ConstraintSet {
 public:
  static ConstraintSet box(Vector lower, Vector upper);
  static ConstraintSet ball(Vector center, double radius);
  static ConstraintSet halfspace(Vector a, double c);
  static ConstraintSet hyperplane(Vector a, double c);
  static ConstraintSet singleton(Vector y);
  static ConstraintSet nonnegative_orthant(Index n);
  static ConstraintSet sparsity(Index n, Index k);
  /// Acts on stacked 2p-vectors (x, y).
  static ConstraintSet complementarity(Index pairs);

  SetKind kind() const { return kind_; }
  Index dim() const { return dim_; }
  bool is_convex() const {
    return kind_ != SetKind::Sparsity && kind_ != SetKind::Complementarity;
  }

  Vector project(const Vector& x) const;
  /// Membership within an absolute tolerance on each defining inequality.
  bool contains(const Vector& x, double tol = 1e-9) const;

  // Parameter access for the kinds that carry data.
  const Vector& lower() const;
  const Vector& upper() const;
  const Vector& center() const;
  double radius() const;
  const Vector& normal() const;
  double offset() const;
  const Vector& point() const;
  Index sparsity_level() const;

 private:
  struct BoxData {
    Vector lower, upper;
  };
  struct BallData {
    Vector center;
    double radius;
  };
  struct PlaneData {  // HalfSpace and Hyperplane
    Vector a;
    double c;
  };
  struct SingletonData {
    Vector y;
  };
  struct SparsityData {
    Index k;
  };
  struct NoData {};

  using Payload = std::variant<NoData, BoxData, BallData, PlaneData,
                               SingletonData, SparsityData>;

  ConstraintSet(SetKind kind, Index dim, Payload payload)
      : kind_(kind), dim_(dim), payload_(std::move(payload)) {}

  SetKind kind_;
  Index dim_;
  Payload payload_;
};

}  // namespace sfp

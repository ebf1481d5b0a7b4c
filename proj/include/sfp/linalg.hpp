#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "sfp/errors.hpp"

namespace sfp {

// Dense storage is Eigen's default column-major layout throughout the
// library; other modules treat these types as opaque.
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

/// Cholesky factorization of a symmetric positive-definite matrix.
///
/// The input is symmetrized as (H + H^t)/2 before factoring, since Gram
/// products J^t J accumulate round-off that breaks exact symmetry.
class SpdFactorization {
 public:
  explicit SpdFactorization(const Matrix& H);

  Index dimension() const { return llt_.matrixL().rows(); }

  /// Solves H y = g.
  Vector solve(const Vector& g) const;

 private:
  Eigen::LLT<Matrix> llt_;
};

/// Factors a symmetric positive-definite matrix. Throws NotPositiveDefinite
/// if a non-positive pivot is encountered.
SpdFactorization factor_spd(const Matrix& H);

/// Applies (v I_n + w J^t J)^{-1} to g through the p-by-p system
///   H^{-1} = (1/v) I - (w/v^2) J^t (I_p + (w/v) J J^t)^{-1} J,
/// which is cheaper than the dense factorization when p < n.
///
/// Requires v > 0 and w >= 0. Throws SingularSystem if the inner p-by-p
/// system is numerically singular (w/v overflow or rank pathology).
Vector woodbury_apply(double v, double w, const Matrix& J, const Vector& g);

/// Diagonal-weight generalization: applies (diag(d) + J^t diag(w) J)^{-1}
/// to g via the p-by-p system (I_p + diag(w) J diag(d)^{-1} J^t). Used on
/// the Bregman path where the curvature weights are coordinate-dependent.
/// Requires d > 0 coordinate-wise and w >= 0.
Vector woodbury_apply_diag(const Vector& d, const Vector& w, const Matrix& J,
                           const Vector& g);

}  // namespace sfp

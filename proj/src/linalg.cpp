#include "sfp/linalg.hpp"

#include <Eigen/LU>
#include <cmath>

namespace sfp {

namespace {

void check_finite(const Matrix& H) {
  if (!H.allFinite()) throw Error("matrix has non-finite entries");
}

}  // namespace

SpdFactorization::SpdFactorization(const Matrix& H) {
  if (H.rows() != H.cols())
    throw DimensionMismatch("factor_spd: matrix must be square");
  check_finite(H);
  const double scale = H.cwiseAbs().maxCoeff();
  const double asym = (H - H.transpose()).cwiseAbs().maxCoeff();
  if (scale > 0 && asym > 1e-10 * scale)
    throw Error("factor_spd: matrix is not symmetric");
  const Matrix sym = 0.5 * (H + H.transpose());
  llt_.compute(sym);
  if (llt_.info() != Eigen::Success)
    throw NotPositiveDefinite("factor_spd: non-positive pivot encountered");
}

Vector SpdFactorization::solve(const Vector& g) const {
  if (g.size() != dimension())
    throw DimensionMismatch("SpdFactorization::solve: size mismatch");
  return llt_.solve(g);
}

SpdFactorization factor_spd(const Matrix& H) { return SpdFactorization(H); }

Vector woodbury_apply(double v, double w, const Matrix& J, const Vector& g) {
  if (!(v > 0.0)) throw Error("woodbury_apply: v must be positive");
  if (w < 0.0) throw Error("woodbury_apply: w must be nonnegative");
  if (J.cols() != g.size())
    throw DimensionMismatch("woodbury_apply: J and g are incompatible");
  if (w == 0.0) return g / v;

  const Index p = J.rows();
  Matrix inner = Matrix::Identity(p, p) + (w / v) * (J * J.transpose());
  if (!inner.allFinite())
    throw SingularSystem("woodbury_apply: inner system overflowed");
  Eigen::LLT<Matrix> llt(inner);
  if (llt.info() != Eigen::Success)
    throw SingularSystem("woodbury_apply: inner p-by-p system is singular");
  const Vector z = llt.solve(J * g);
  return g / v - (w / (v * v)) * (J.transpose() * z);
}

Vector woodbury_apply_diag(const Vector& d, const Vector& w, const Matrix& J,
                           const Vector& g) {
  if (J.cols() != g.size() || d.size() != g.size() || w.size() != J.rows())
    throw DimensionMismatch("woodbury_apply_diag: incompatible sizes");
  if ((d.array() <= 0.0).any())
    throw Error("woodbury_apply_diag: diagonal must be positive");
  if ((w.array() < 0.0).any())
    throw Error("woodbury_apply_diag: weights must be nonnegative");

  const Index p = J.rows();
  const Vector dinv = d.cwiseInverse();
  // inner = I_p + diag(w) J diag(d)^{-1} J^t  (not symmetric; use LU)
  Matrix inner = Matrix::Identity(p, p) +
                 w.asDiagonal() * (J * dinv.asDiagonal() * J.transpose());
  if (!inner.allFinite())
    throw SingularSystem("woodbury_apply_diag: inner system overflowed");
  Eigen::PartialPivLU<Matrix> lu(inner);
  const Vector rhs = w.asDiagonal() * (J * dinv.cwiseProduct(g));
  const Vector z = lu.solve(rhs);
  Vector y = dinv.cwiseProduct(g) - dinv.cwiseProduct(J.transpose() * z);
  if (!y.allFinite())
    throw SingularSystem("woodbury_apply_diag: solve produced non-finite values");
  return y;
}

}  // namespace sfp

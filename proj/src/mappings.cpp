#include "sfp/mappings.hpp"

#include <cmath>
#include <utility>

namespace sfp {

double softmax_mu(const Vector& y, double gamma) {
  if (!(gamma > 0.0)) throw Error("softmax_mu: gamma must be positive");
  if (y.size() == 0) throw Error("softmax_mu: empty input");
  const double m = y.maxCoeff();
  const double s = ((y.array() - m) * gamma).exp().sum();
  return m + std::log(s) / gamma;
}

Vector softmax_mu_grad(const Vector& y, double gamma) {
  if (!(gamma > 0.0)) throw Error("softmax_mu_grad: gamma must be positive");
  if (y.size() == 0) throw Error("softmax_mu_grad: empty input");
  const double m = y.maxCoeff();
  Vector e = ((y.array() - m) * gamma).exp().matrix();
  return e / e.sum();
}

SmoothMap SmoothMap::identity(Index n) {
  SmoothMap map;
  map.kind_ = MapKind::Identity;
  map.n_ = map.p_ = n;
  return map;
}

SmoothMap SmoothMap::linear(Matrix A) {
  SmoothMap map;
  map.kind_ = MapKind::Linear;
  map.n_ = A.cols();
  map.p_ = A.rows();
  map.b_ = Vector::Zero(map.p_);
  map.A_ = std::move(A);
  return map;
}

SmoothMap SmoothMap::affine(Matrix A, Vector b) {
  if (A.rows() != b.size())
    throw DimensionMismatch("SmoothMap::affine: A and b are incompatible");
  SmoothMap map = linear(std::move(A));
  map.b_ = std::move(b);
  return map;
}

SmoothMap SmoothMap::softmax_region(std::vector<Matrix> blocks,
                                    std::vector<bool> is_target,
                                    double gamma) {
  if (blocks.empty()) throw Error("softmax_region: no blocks");
  if (blocks.size() != is_target.size())
    throw DimensionMismatch("softmax_region: one target flag per block");
  if (!(gamma > 0.0)) throw Error("softmax_region: gamma must be positive");
  const Index n = blocks.front().cols();
  for (const Matrix& B : blocks) {
    if (B.cols() != n)
      throw DimensionMismatch("softmax_region: blocks disagree on input dim");
    if (B.rows() == 0) throw Error("softmax_region: empty block");
  }
  SmoothMap map;
  map.kind_ = MapKind::SoftmaxRegion;
  map.n_ = n;
  map.p_ = static_cast<Index>(blocks.size());
  map.blocks_ = std::move(blocks);
  map.targets_ = std::move(is_target);
  map.gamma_ = gamma;
  return map;
}

SmoothMap SmoothMap::complementarity_stack(SmoothMap inner) {
  if (inner.input_dim() != inner.output_dim())
    throw DimensionMismatch(
        "complementarity_stack: inner map must have equal dims");
  SmoothMap map;
  map.kind_ = MapKind::ComplementarityStack;
  map.n_ = inner.input_dim();
  map.p_ = 2 * map.n_;
  map.inner_ = std::make_shared<const SmoothMap>(std::move(inner));
  return map;
}

SmoothMap SmoothMap::complementarity_affine(Matrix M, Vector q) {
  if (M.rows() != M.cols() || M.rows() != q.size())
    throw DimensionMismatch("complementarity_affine: M must be square, q matching");
  return complementarity_stack(affine(std::move(M), std::move(q)));
}

SmoothMap SmoothMap::toy_quadratic() {
  SmoothMap map;
  map.kind_ = MapKind::ToyQuadratic;
  map.n_ = 2;
  map.p_ = 3;
  return map;
}

bool SmoothMap::has_constant_jacobian() const {
  switch (kind_) {
    case MapKind::Identity:
    case MapKind::Linear:
      return true;
    case MapKind::ComplementarityStack:
      return inner_->has_constant_jacobian();
    default:
      return false;
  }
}

Vector SmoothMap::eval(const Vector& x) const {
  if (x.size() != n_) throw DimensionMismatch("SmoothMap::eval: bad input size");
  switch (kind_) {
    case MapKind::Identity:
      return x;
    case MapKind::Linear:
      return A_ * x + b_;
    case MapKind::SoftmaxRegion: {
      Vector out(p_);
      for (Index j = 0; j < p_; ++j) {
        const Vector dose = blocks_[static_cast<std::size_t>(j)] * x;
        out[j] = targets_[static_cast<std::size_t>(j)]
                     ? -softmax_mu(-dose, gamma_)
                     : softmax_mu(dose, gamma_);
      }
      return out;
    }
    case MapKind::ComplementarityStack: {
      Vector out(p_);
      out << x, inner_->eval(x);
      return out;
    }
    case MapKind::ToyQuadratic: {
      Vector out(3);
      out << x[0], x[1], x[0] * x[0] + x[1] * x[1];
      return out;
    }
  }
  throw Error("SmoothMap::eval: unknown kind");
}

Matrix SmoothMap::jacobian(const Vector& x) const {
  if (x.size() != n_)
    throw DimensionMismatch("SmoothMap::jacobian: bad input size");
  switch (kind_) {
    case MapKind::Identity:
      return Matrix::Identity(n_, n_);
    case MapKind::Linear:
      return A_;
    case MapKind::SoftmaxRegion: {
      Matrix J(p_, n_);
      for (Index j = 0; j < p_; ++j) {
        const Matrix& B = blocks_[static_cast<std::size_t>(j)];
        const Vector dose = B * x;
        // Both cases reduce to grad mu(+-B x)^t B by the chain rule.
        const Vector g = targets_[static_cast<std::size_t>(j)]
                             ? softmax_mu_grad(-dose, gamma_)
                             : softmax_mu_grad(dose, gamma_);
        J.row(j) = g.transpose() * B;
      }
      return J;
    }
    case MapKind::ComplementarityStack: {
      Matrix J(p_, n_);
      J.topRows(n_) = Matrix::Identity(n_, n_);
      J.bottomRows(n_) = inner_->jacobian(x);
      return J;
    }
    case MapKind::ToyQuadratic: {
      Matrix J(3, 2);
      J << 1.0, 0.0, 0.0, 1.0, 2.0 * x[0], 2.0 * x[1];
      return J;
    }
  }
  throw Error("SmoothMap::jacobian: unknown kind");
}

const Matrix& SmoothMap::matrix() const {
  if (kind_ != MapKind::Linear) throw Error("SmoothMap::matrix: not a linear map");
  return A_;
}

const Vector& SmoothMap::shift() const {
  if (kind_ != MapKind::Linear) throw Error("SmoothMap::shift: not a linear map");
  return b_;
}

double SmoothMap::gamma() const {
  if (kind_ != MapKind::SoftmaxRegion)
    throw Error("SmoothMap::gamma: not a softmax map");
  return gamma_;
}

const std::vector<Matrix>& SmoothMap::blocks() const {
  if (kind_ != MapKind::SoftmaxRegion)
    throw Error("SmoothMap::blocks: not a softmax map");
  return blocks_;
}

const std::vector<bool>& SmoothMap::block_targets() const {
  if (kind_ != MapKind::SoftmaxRegion)
    throw Error("SmoothMap::block_targets: not a softmax map");
  return targets_;
}

const SmoothMap& SmoothMap::inner() const {
  if (kind_ != MapKind::ComplementarityStack)
    throw Error("SmoothMap::inner: not a stacked map");
  return *inner_;
}

}  // namespace sfp

#include "sfp/sets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace sfp {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

Vector project_halfspace(const Vector& x, const Vector& a, double c) {
  const double nn = a.squaredNorm();
  if (nn == 0.0) throw ZeroNormal("project_halfspace: zero normal");
  if (x.size() != a.size())
    throw DimensionMismatch("project_halfspace: size mismatch");
  const double excess = a.dot(x) - c;
  if (excess <= 0.0) return x;
  return x - (excess / nn) * a;
}

Vector project_hyperplane(const Vector& x, const Vector& a, double c) {
  const double nn = a.squaredNorm();
  if (nn == 0.0) throw ZeroNormal("project_hyperplane: zero normal");
  if (x.size() != a.size())
    throw DimensionMismatch("project_hyperplane: size mismatch");
  return x - ((a.dot(x) - c) / nn) * a;
}

Vector project_ball(const Vector& x, const Vector& center, double r) {
  if (x.size() != center.size())
    throw DimensionMismatch("project_ball: size mismatch");
  const double dist = (x - center).norm();
  if (dist <= r) return x;
  return center + (r / dist) * (x - center);
}

Vector project_box(const Vector& x, const Vector& lower, const Vector& upper) {
  if (x.size() != lower.size() || x.size() != upper.size())
    throw DimensionMismatch("project_box: size mismatch");
  if ((lower.array() > upper.array()).any())
    throw EmptyBox("project_box: lower bound exceeds upper bound");
  return x.cwiseMax(lower).cwiseMin(upper);
}

Vector project_sparsity(const Vector& x, Index k) {
  const Index n = x.size();
  if (k < 1 || k > n) throw Error("project_sparsity: need 1 <= k <= n");
  if (k == n) return x;
  std::vector<Index> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), Index{0});
  // Largest magnitudes first; among equal magnitudes, lower indices win.
  std::nth_element(idx.begin(), idx.begin() + (k - 1), idx.end(),
                   [&](Index i, Index j) {
                     const double ai = std::abs(x[i]), aj = std::abs(x[j]);
                     if (ai != aj) return ai > aj;
                     return i < j;
                   });
  Vector out = Vector::Zero(n);
  for (Index r = 0; r < k; ++r) out[idx[static_cast<std::size_t>(r)]] = x[idx[static_cast<std::size_t>(r)]];
  return out;
}

std::pair<Vector, Vector> project_complementarity(const Vector& u,
                                                  const Vector& v) {
  if (u.size() != v.size())
    throw DimensionMismatch("project_complementarity: size mismatch");
  const Index p = u.size();
  Vector a = Vector::Zero(p), b = Vector::Zero(p);
  for (Index i = 0; i < p; ++i) {
    const double ui = u[i], vi = v[i];
    if (ui >= vi && vi >= 0.0) {
      a[i] = ui;  // covers the tie u_i = v_i >= 0
    } else if (vi > ui && ui >= 0.0) {
      b[i] = vi;
    } else {
      // Here at least one of u_i, v_i is negative, so the product is 0.
      a[i] = std::max(ui, 0.0);
      b[i] = std::max(vi, 0.0);
    }
  }
  return {std::move(a), std::move(b)};
}

ConstraintSet ConstraintSet::box(Vector lower, Vector upper) {
  if (lower.size() != upper.size())
    throw DimensionMismatch("ConstraintSet::box: bound sizes differ");
  if ((lower.array() > upper.array()).any())
    throw EmptyBox("ConstraintSet::box: lower bound exceeds upper bound");
  const Index n = lower.size();
  return ConstraintSet(SetKind::Box, n,
                       BoxData{std::move(lower), std::move(upper)});
}

ConstraintSet ConstraintSet::ball(Vector center, double radius) {
  if (!(radius > 0.0)) throw Error("ConstraintSet::ball: radius must be positive");
  const Index n = center.size();
  return ConstraintSet(SetKind::Ball, n, BallData{std::move(center), radius});
}

ConstraintSet ConstraintSet::halfspace(Vector a, double c) {
  if (a.squaredNorm() == 0.0) throw ZeroNormal("ConstraintSet::halfspace: zero normal");
  const Index n = a.size();
  return ConstraintSet(SetKind::HalfSpace, n, PlaneData{std::move(a), c});
}

ConstraintSet ConstraintSet::hyperplane(Vector a, double c) {
  if (a.squaredNorm() == 0.0) throw ZeroNormal("ConstraintSet::hyperplane: zero normal");
  const Index n = a.size();
  return ConstraintSet(SetKind::Hyperplane, n, PlaneData{std::move(a), c});
}

ConstraintSet ConstraintSet::singleton(Vector y) {
  const Index n = y.size();
  return ConstraintSet(SetKind::Singleton, n, SingletonData{std::move(y)});
}

ConstraintSet ConstraintSet::nonnegative_orthant(Index n) {
  return ConstraintSet(SetKind::NonnegativeOrthant, n, NoData{});
}

ConstraintSet ConstraintSet::sparsity(Index n, Index k) {
  if (k < 1 || k > n) throw Error("ConstraintSet::sparsity: need 1 <= k <= n");
  return ConstraintSet(SetKind::Sparsity, n, SparsityData{k});
}

ConstraintSet ConstraintSet::complementarity(Index pairs) {
  if (pairs < 1) throw Error("ConstraintSet::complementarity: need pairs >= 1");
  return ConstraintSet(SetKind::Complementarity, 2 * pairs, NoData{});
}

Vector ConstraintSet::project(const Vector& x) const {
  if (x.size() != dim_)
    throw DimensionMismatch("ConstraintSet::project: size mismatch");
  switch (kind_) {
    case SetKind::Box: {
      const auto& d = std::get<BoxData>(payload_);
      return project_box(x, d.lower, d.upper);
    }
    case SetKind::Ball: {
      const auto& d = std::get<BallData>(payload_);
      return project_ball(x, d.center, d.radius);
    }
    case SetKind::HalfSpace: {
      const auto& d = std::get<PlaneData>(payload_);
      return project_halfspace(x, d.a, d.c);
    }
    case SetKind::Hyperplane: {
      const auto& d = std::get<PlaneData>(payload_);
      return project_hyperplane(x, d.a, d.c);
    }
    case SetKind::Singleton:
      return std::get<SingletonData>(payload_).y;
    case SetKind::NonnegativeOrthant:
      return x.cwiseMax(0.0);
    case SetKind::Sparsity:
      return project_sparsity(x, std::get<SparsityData>(payload_).k);
    case SetKind::Complementarity: {
      const Index p = dim_ / 2;
      auto [a, b] = project_complementarity(x.head(p), x.tail(p));
      Vector out(dim_);
      out << a, b;
      return out;
    }
  }
  throw Error("ConstraintSet::project: unknown kind");
}

bool ConstraintSet::contains(const Vector& x, double tol) const {
  if (x.size() != dim_) return false;
  switch (kind_) {
    case SetKind::Box: {
      const auto& d = std::get<BoxData>(payload_);
      return (x.array() >= d.lower.array() - tol).all() &&
             (x.array() <= d.upper.array() + tol).all();
    }
    case SetKind::Ball: {
      const auto& d = std::get<BallData>(payload_);
      return (x - d.center).norm() <= d.radius + tol;
    }
    case SetKind::HalfSpace: {
      const auto& d = std::get<PlaneData>(payload_);
      return d.a.dot(x) <= d.c + tol * (1.0 + std::abs(d.c));
    }
    case SetKind::Hyperplane: {
      const auto& d = std::get<PlaneData>(payload_);
      return std::abs(d.a.dot(x) - d.c) <= tol * (1.0 + std::abs(d.c));
    }
    case SetKind::Singleton:
      return (x - std::get<SingletonData>(payload_).y).lpNorm<Eigen::Infinity>() <= tol;
    case SetKind::NonnegativeOrthant:
      return (x.array() >= -tol).all();
    case SetKind::Sparsity: {
      const Index k = std::get<SparsityData>(payload_).k;
      Index nonzeros = 0;
      for (Index i = 0; i < dim_; ++i)
        if (std::abs(x[i]) > tol) ++nonzeros;
      return nonzeros <= k;
    }
    case SetKind::Complementarity: {
      const Index p = dim_ / 2;
      for (Index i = 0; i < p; ++i) {
        if (x[i] < -tol || x[p + i] < -tol) return false;
        if (std::abs(x[i] * x[p + i]) > tol) return false;
      }
      return true;
    }
  }
  return false;
}

const Vector& ConstraintSet::lower() const { return std::get<BoxData>(payload_).lower; }
const Vector& ConstraintSet::upper() const { return std::get<BoxData>(payload_).upper; }
const Vector& ConstraintSet::center() const { return std::get<BallData>(payload_).center; }
double ConstraintSet::radius() const { return std::get<BallData>(payload_).radius; }
const Vector& ConstraintSet::normal() const { return std::get<PlaneData>(payload_).a; }
double ConstraintSet::offset() const { return std::get<PlaneData>(payload_).c; }
const Vector& ConstraintSet::point() const { return std::get<SingletonData>(payload_).y; }
Index ConstraintSet::sparsity_level() const { return std::get<SparsityData>(payload_).k; }

}  // namespace sfp

#include "sfp/proximity.hpp"

#include <cmath>
#include <iostream>

namespace sfp {

namespace {

// Hinge mode requires every range set to be a coordinate half-space
// +-e_j^t y <= +-d_j in order of the map's regions. Returns (bound, target).
std::pair<double, bool> hinge_data_for(const ConstraintSet& set, Index j,
                                       Index p) {
  if (set.kind() != SetKind::HalfSpace)
    throw Error("hinge mode: range sets must be coordinate half-spaces");
  const Vector& a = set.normal();
  if (a.size() != p) throw DimensionMismatch("hinge mode: bad range dimension");
  for (Index i = 0; i < p; ++i) {
    if (i != j && a[i] != 0.0)
      throw Error("hinge mode: range set must constrain its own region only");
  }
  if (a[j] == 1.0) return {set.offset(), false};   // y_j <= d_j
  if (a[j] == -1.0) return {-set.offset(), true};  // y_j >= d_j
  throw Error("hinge mode: half-space normal must be a signed unit vector");
}

}  // namespace

SplitProblem::SplitProblem(SmoothMap h, std::vector<WeightedSet> domain,
                           std::vector<WeightedSet> range,
                           BregmanGenerator domain_generator,
                           BregmanGenerator range_generator, bool hinge_mode)
    : h_(std::move(h)),
      domain_(std::move(domain)),
      range_(std::move(range)),
      phi_(std::move(domain_generator)),
      zeta_(std::move(range_generator)) {
  if (domain_.empty() && range_.empty())
    throw Error("SplitProblem: needs at least one constraint");
  for (const auto& ws : domain_) {
    if (ws.set.dim() != h_.input_dim())
      throw DimensionMismatch("SplitProblem: domain set dimension mismatch");
    if (!(ws.weight > 0.0)) throw Error("SplitProblem: weights must be positive");
  }
  for (const auto& ws : range_) {
    if (ws.set.dim() != h_.output_dim())
      throw DimensionMismatch("SplitProblem: range set dimension mismatch");
    if (!(ws.weight > 0.0)) throw Error("SplitProblem: weights must be positive");
  }

  double total = 0.0;
  for (const auto& ws : domain_) total += ws.weight;
  for (const auto& ws : range_) total += ws.weight;
  if (std::abs(total - 1.0) > 1e-12) {
    weights_rescaled_ = true;
    std::cerr << "sfp: constraint weights rescaled to sum to 1 (was " << total
              << ")\n";
    for (auto& ws : domain_) ws.weight /= total;
    for (auto& ws : range_) ws.weight /= total;
  }
  for (const auto& ws : domain_) v_total_ += ws.weight;
  for (const auto& ws : range_) w_total_ += ws.weight;

  if (hinge_mode) {
    if (h_.kind() != MapKind::SoftmaxRegion)
      throw Error("SplitProblem: hinge mode expects a softmax-region map");
    const Index p = h_.output_dim();
    if (static_cast<Index>(range_.size()) != p)
      throw Error("SplitProblem: hinge mode expects one range set per region");
    for (Index j = 0; j < p; ++j) {
      auto [bound, target] =
          hinge_data_for(range_[static_cast<std::size_t>(j)].set, j, p);
      hinge_bounds_.push_back(bound);
      hinge_targets_.push_back(target);
    }
    form_ = ProximityForm::Hinge;
  } else if (phi_.is_euclidean() && zeta_.is_euclidean()) {
    form_ = ProximityForm::Euclidean;
  } else {
    form_ = ProximityForm::Bregman;
  }
}

SplitProblem SplitProblem::with_form(ProximityForm form) const {
  if (form == ProximityForm::Hinge && form_ != ProximityForm::Hinge)
    throw Error("with_form: hinge form requires hinge-mode construction");
  SplitProblem copy = *this;
  copy.form_ = form;
  return copy;
}

bool SplitProblem::is_split_feasible(const Vector& x, double tol) const {
  for (const auto& ws : domain_)
    if (!ws.set.contains(x, tol)) return false;
  if (!range_.empty()) {
    const Vector hx = h_.eval(x);
    for (const auto& ws : range_)
      if (!ws.set.contains(hx, tol)) return false;
  }
  return true;
}

namespace {

double hinge_residual(const SplitProblem& pb, const Vector& hx,
                      std::size_t j) {
  // Signed residual h_j - clamp(h_j): positive above a cap, negative below
  // a target bound.
  const double d = pb.hinge_bound(j);
  if (pb.hinge_is_target(j)) return -std::max(d - hx[static_cast<Index>(j)], 0.0);
  return std::max(hx[static_cast<Index>(j)] - d, 0.0);
}

}  // namespace

ProximityEvaluation eval_f(const SplitProblem& pb, const Vector& x) {
  if (x.size() != pb.input_dim())
    throw DimensionMismatch("eval_f: bad point dimension");
  if (!x.allFinite()) throw Error("eval_f: non-finite point");

  ProximityEvaluation out;
  out.h_of_x = pb.map().eval(x);
  const Vector& hx = out.h_of_x;
  out.gradient = Vector::Zero(pb.input_dim());

  const bool bregman = pb.form() == ProximityForm::Bregman;
  if (bregman && !pb.domain_generator().in_domain(x))
    throw DomainViolation("eval_f: x outside domain generator support");
  if (bregman && !pb.range_constraints().empty() &&
      !pb.range_generator().in_domain(hx))
    throw DomainViolation("eval_f: h(x) outside range generator support");

  Vector domain_pull = Vector::Zero(pb.input_dim());
  for (const auto& ws : pb.domain_constraints()) {
    Vector proj = bregman ? bregman_project_set(pb.domain_generator(), ws.set, x)
                          : ws.set.project(x);
    if (bregman)
      out.value += ws.weight * divergence(pb.domain_generator(), proj, x);
    else
      out.value += 0.5 * ws.weight * (x - proj).squaredNorm();
    domain_pull += ws.weight * (x - proj);
    out.domain_projections.push_back(std::move(proj));
  }
  if (bregman)
    out.gradient += pb.domain_generator().hess_apply(x, domain_pull);
  else
    out.gradient += domain_pull;

  if (!pb.range_constraints().empty()) {
    Vector range_pull = Vector::Zero(pb.output_dim());
    if (pb.form() == ProximityForm::Hinge) {
      for (std::size_t j = 0; j < pb.range_constraints().size(); ++j) {
        const double w = pb.range_constraints()[j].weight;
        const double r = hinge_residual(pb, hx, j);
        out.value += 0.5 * w * r * r;
        range_pull[static_cast<Index>(j)] = w * r;
        Vector proj = hx;
        proj[static_cast<Index>(j)] -= r;
        out.range_projections.push_back(std::move(proj));
      }
    } else {
      for (const auto& ws : pb.range_constraints()) {
        Vector proj = bregman
                          ? bregman_project_set(pb.range_generator(), ws.set, hx)
                          : ws.set.project(hx);
        if (bregman)
          out.value += ws.weight * divergence(pb.range_generator(), proj, hx);
        else
          out.value += 0.5 * ws.weight * (hx - proj).squaredNorm();
        range_pull += ws.weight * (hx - proj);
        out.range_projections.push_back(std::move(proj));
      }
      if (bregman)
        range_pull = pb.range_generator().hess_apply(hx, range_pull);
    }
    const Matrix J = pb.map().jacobian(x);
    out.gradient += J.transpose() * range_pull;
  }
  return out;
}

double value_f(const SplitProblem& pb, const Vector& x) {
  if (x.size() != pb.input_dim())
    throw DimensionMismatch("value_f: bad point dimension");
  if (!x.allFinite()) throw Error("value_f: non-finite point");

  const bool bregman = pb.form() == ProximityForm::Bregman;
  if (bregman && !pb.domain_generator().in_domain(x))
    throw DomainViolation("value_f: x outside domain generator support");

  double value = 0.0;
  for (const auto& ws : pb.domain_constraints()) {
    if (bregman) {
      const Vector proj = bregman_project_set(pb.domain_generator(), ws.set, x);
      value += ws.weight * divergence(pb.domain_generator(), proj, x);
    } else {
      value += 0.5 * ws.weight * (x - ws.set.project(x)).squaredNorm();
    }
  }
  if (pb.range_constraints().empty()) return value;

  const Vector hx = pb.map().eval(x);
  if (bregman && !pb.range_generator().in_domain(hx))
    throw DomainViolation("value_f: h(x) outside range generator support");
  if (pb.form() == ProximityForm::Hinge) {
    for (std::size_t j = 0; j < pb.range_constraints().size(); ++j) {
      const double r = hinge_residual(pb, hx, j);
      value += 0.5 * pb.range_constraints()[j].weight * r * r;
    }
  } else {
    for (const auto& ws : pb.range_constraints()) {
      if (bregman) {
        const Vector proj = bregman_project_set(pb.range_generator(), ws.set, hx);
        value += ws.weight * divergence(pb.range_generator(), proj, hx);
      } else {
        value += 0.5 * ws.weight * (hx - ws.set.project(hx)).squaredNorm();
      }
    }
  }
  return value;
}

double surrogate_value(const SplitProblem& pb, const ProximityEvaluation& at_xk,
                       const Vector& x) {
  const bool bregman = pb.form() == ProximityForm::Bregman;
  double value = 0.0;
  for (std::size_t i = 0; i < pb.domain_constraints().size(); ++i) {
    const double v = pb.domain_constraints()[i].weight;
    const Vector& proj = at_xk.domain_projections[i];
    value += bregman ? v * divergence(pb.domain_generator(), proj, x)
                     : 0.5 * v * (x - proj).squaredNorm();
  }
  if (!pb.range_constraints().empty()) {
    const Vector hx = pb.map().eval(x);
    for (std::size_t j = 0; j < pb.range_constraints().size(); ++j) {
      const double w = pb.range_constraints()[j].weight;
      const Vector& proj = at_xk.range_projections[j];
      value += bregman ? w * divergence(pb.range_generator(), proj, hx)
                       : 0.5 * w * (hx - proj).squaredNorm();
    }
  }
  return value;
}

HessianOperator HessianOperator::scaled_identity(Index n, double v) {
  if (!(v > 0.0)) throw NotPositiveDefinite("HessianOperator: v must be positive");
  return HessianOperator(ScaledIdentity{n, v});
}

HessianOperator HessianOperator::diagonal(Vector d) {
  if ((d.array() <= 0.0).any())
    throw NotPositiveDefinite("HessianOperator: diagonal must be positive");
  return HessianOperator(Diagonal{std::move(d)});
}

HessianOperator HessianOperator::woodbury(double v, double w, Matrix J) {
  return HessianOperator(WoodburyData{v, w, std::move(J)});
}

HessianOperator HessianOperator::woodbury_diag(Vector d, Vector w_diag,
                                               Matrix J) {
  return HessianOperator(WoodburyDiagData{std::move(d), std::move(w_diag),
                                          std::move(J)});
}

HessianOperator HessianOperator::dense_factor(Matrix H) {
  SpdFactorization factor(H);
  return HessianOperator(DenseData{std::move(H), std::move(factor)});
}

Vector HessianOperator::solve(const Vector& g) const {
  return std::visit(
      [&](const auto& impl) -> Vector {
        using T = std::decay_t<decltype(impl)>;
        if constexpr (std::is_same_v<T, ScaledIdentity>) {
          return g / impl.v;
        } else if constexpr (std::is_same_v<T, Diagonal>) {
          return g.cwiseQuotient(impl.d);
        } else if constexpr (std::is_same_v<T, WoodburyData>) {
          return woodbury_apply(impl.v, impl.w, impl.J, g);
        } else if constexpr (std::is_same_v<T, WoodburyDiagData>) {
          return woodbury_apply_diag(impl.d, impl.w, impl.J, g);
        } else {
          return impl.factor.solve(g);
        }
      },
      impl_);
}

Matrix HessianOperator::dense() const {
  return std::visit(
      [&](const auto& impl) -> Matrix {
        using T = std::decay_t<decltype(impl)>;
        if constexpr (std::is_same_v<T, ScaledIdentity>) {
          return impl.v * Matrix::Identity(impl.n, impl.n);
        } else if constexpr (std::is_same_v<T, Diagonal>) {
          return impl.d.asDiagonal();
        } else if constexpr (std::is_same_v<T, WoodburyData>) {
          const Index n = impl.J.cols();
          return impl.v * Matrix::Identity(n, n) +
                 impl.w * impl.J.transpose() * impl.J;
        } else if constexpr (std::is_same_v<T, WoodburyDiagData>) {
          Matrix H = impl.J.transpose() * impl.w.asDiagonal() * impl.J;
          H += Matrix(impl.d.asDiagonal());
          return H;
        } else {
          return impl.H;
        }
      },
      impl_);
}

HessianOperator approx_hessian(const SplitProblem& pb, const Vector& x,
                               const Matrix* jacobian) {
  const Index n = pb.input_dim();
  const Index p = pb.output_dim();
  const double v = pb.domain_weight();
  const double w = pb.range_weight();
  const bool bregman = pb.form() == ProximityForm::Bregman;

  if (!bregman) {
    if (w == 0.0 || pb.range_constraints().empty())
      return HessianOperator::scaled_identity(n, v);
    Matrix J = jacobian ? *jacobian : pb.map().jacobian(x);
    if (p < n && v > 0.0)
      return HessianOperator::woodbury(v, w, std::move(J));
    Matrix H = w * (J.transpose() * J);
    H.diagonal().array() += v;
    return HessianOperator::dense_factor(std::move(H));
  }

  const BregmanGenerator& phi = pb.domain_generator();
  const BregmanGenerator& zeta = pb.range_generator();
  const bool separable = phi.is_separable() && zeta.is_separable();
  if (w == 0.0 || pb.range_constraints().empty()) {
    if (phi.is_separable())
      return HessianOperator::diagonal(v * phi.hess_diag(x));
    return HessianOperator::dense_factor(v * phi.hess_dense(x));
  }

  Matrix J = jacobian ? *jacobian : pb.map().jacobian(x);
  const Vector hx = pb.map().eval(x);
  if (separable) {
    Vector d = v * phi.hess_diag(x);
    Vector wz = w * zeta.hess_diag(hx);
    if (p < n && (d.array() > 0.0).all())
      return HessianOperator::woodbury_diag(std::move(d), std::move(wz),
                                            std::move(J));
    Matrix H = J.transpose() * wz.asDiagonal() * J;
    H += Matrix(d.asDiagonal());
    return HessianOperator::dense_factor(std::move(H));
  }
  Matrix H = v * phi.hess_dense(x) +
             w * (J.transpose() * zeta.hess_dense(hx) * J);
  return HessianOperator::dense_factor(std::move(H));
}

}  // namespace sfp

#include <cmath>
#include <numbers>
#include <string>

#include "gsqg/errors.hpp"
#include "gsqg/format.hpp"
#include "gsqg/functional.hpp"
#include "gsqg/kernels.hpp"

namespace gsqg::functional {

PatchGeometry::PatchGeometry(double alpha, double d, Mode mode, int folds, double eps)
    : alpha_(alpha), d_(d), mode_(mode), folds_(folds), eps_(eps) {
  if (!(alpha > 0.0 && alpha < 2.0)) {
    throw DomainError("alpha=" + format_double(alpha) + " outside the admissible domain (0,2)");
  }
  if (!(d > 0.0) || !std::isfinite(d)) throw DomainError("d must be a positive finite distance");
  if (mode == Mode::corotating && folds < 2) throw DomainError("co-rotating families need m >= 2");
  riesz_ = kernels::riesz_constant(alpha);
  if (mode == Mode::corotating) {
    for (int i = 1; i < folds; ++i) {
      const double th = 2.0 * std::numbers::pi * i / folds;
      images_.push_back({th, d * (1.0 - std::cos(th)), -d * std::sin(th), 1.0});
    }
  } else {
    images_.push_back({std::numbers::pi, 2.0 * d, 0.0, -1.0});
  }
  if (!std::isfinite(eps) || !(std::abs(eps) < eps_limit())) {
    throw DomainError("|eps|=" + format_double(std::abs(eps)) + " must be below " + format_double(eps_limit()) +
                      " so that the patches stay apart");
  }
}

PatchGeometry PatchGeometry::corotating(double alpha, double d, int m, double eps) {
  return PatchGeometry(alpha, d, Mode::corotating, m, eps);
}

PatchGeometry PatchGeometry::travelling(double alpha, double d, double eps) {
  return PatchGeometry(alpha, d, Mode::travelling, 2, eps);
}

PatchGeometry PatchGeometry::with_eps(double eps) const {
  return PatchGeometry(alpha_, d_, mode_, folds_, eps);
}

double PatchGeometry::delta() const noexcept { return eps_ * std::pow(std::abs(eps_), alpha_); }

double PatchGeometry::eps_limit() const noexcept {
  // Half the distance between neighbouring centres.
  return mode_ == Mode::travelling ? d_ : d_ * std::sin(std::numbers::pi / folds_);
}

double PatchGeometry::ground_speed() const noexcept {
  if (mode_ == Mode::travelling) {
    return alpha_ * riesz_ / (2.0 * std::pow(2.0 * d_, 1.0 + alpha_));
  }
  double s = 0.0;
  for (int i = 1; i < folds_; ++i) {
    const double th = 2.0 * std::numbers::pi * i / folds_;
    const double c = std::cos(th) - 1.0;
    const double a = c * c + std::sin(th) * std::sin(th);
    s += alpha_ * riesz_ * c / (2.0 * std::pow(a, 1.0 + 0.5 * alpha_));
  }
  return s / std::pow(d_, 2.0 + alpha_);
}

BoundaryShape::BoundaryShape(PatchGeometry geometry, spectral::FourierCosSeries f)
    : geometry_(std::move(geometry)), f_(std::move(f)) {
  const int n = std::max(64, 8 * (f_.truncation() + 1));
  for (int i = 0; i < n; ++i) {
    if (!(radius(2.0 * std::numbers::pi * i / n) > 0.0)) {
      throw DegenerateBoundary("R = 1 + delta f is not positive on the boundary");
    }
  }
}

double BoundaryShape::radius(double x) const noexcept { return 1.0 + geometry_.delta() * f_.value(x); }

}  // namespace gsqg::functional

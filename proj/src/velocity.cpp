// Direct contour-dynamics velocity on arbitrary closed polylines.  Shares no
// code with the polar-form residual, so it serves as an independent check.

#include <cmath>
#include <numbers>
#include <string>

#include "gsqg/errors.hpp"
#include "gsqg/functional.hpp"
#include "gsqg/kernels.hpp"

namespace gsqg::functional {
namespace {

double cross(const Vec2& o, const Vec2& a, const Vec2& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

bool segments_cross(const Vec2& p1, const Vec2& p2, const Vec2& q1, const Vec2& q2) {
  const double d1 = cross(q1, q2, p1), d2 = cross(q1, q2, p2);
  const double d3 = cross(p1, p2, q1), d4 = cross(p1, p2, q2);
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0)) && d1 != 0 && d2 != 0 && d3 != 0 && d4 != 0;
}

void check_curve(const ClosedCurve& c) {
  if (c.nodes.size() < 8) throw DomainError("a closed curve needs at least 8 nodes");
  for (const Vec2& p : c.nodes) {
    if (!std::isfinite(p[0]) || !std::isfinite(p[1])) throw DomainError("curve nodes must be finite");
  }
}

}  // namespace

std::vector<Vec2> curve_tangents(const ClosedCurve& curve) {
  check_curve(curve);
  // Fourier differentiation matrix on N equispaced parameter values:
  //   D_kj = (1/2) (-1)^{k-j} cot((k-j) h / 2)  (N even),  csc(...) for N odd.
  const int n = static_cast<int>(curve.nodes.size());
  const double h = 2.0 * std::numbers::pi / n;
  std::vector<double> row(n, 0.0);
  for (int p = 1; p < n; ++p) {
    const double t = 0.5 * p * h;
    const double sgn = (p % 2 == 0) ? 1.0 : -1.0;
    row[p] = 0.5 * sgn * (n % 2 == 0 ? std::cos(t) / std::sin(t) : 1.0 / std::sin(t));
  }
  // D annihilates constants; differentiating about the centroid keeps the
  // rounding error relative to the curve size rather than its position.
  double cx = 0.0, cy = 0.0;
  for (const Vec2& p : curve.nodes) {
    cx += p[0];
    cy += p[1];
  }
  cx /= n;
  cy /= n;
  std::vector<Vec2> out(n, Vec2{0.0, 0.0});
  for (int k = 0; k < n; ++k) {
    double tx = 0.0, ty = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j == k) continue;
      const double w = row[(k - j + n) % n];
      tx += w * (curve.nodes[j][0] - cx);
      ty += w * (curve.nodes[j][1] - cy);
    }
    out[k] = {tx, ty};
  }
  return out;
}

bool self_intersects(const ClosedCurve& curve) {
  const auto& z = curve.nodes;
  const size_t n = z.size();
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;  // adjacent through the wrap
      if (segments_cross(z[i], z[(i + 1) % n], z[j], z[(j + 1) % n])) return true;
    }
  }
  return false;
}

bool curves_intersect(const ClosedCurve& a, const ClosedCurve& b) {
  const size_t na = a.nodes.size(), nb = b.nodes.size();
  for (size_t i = 0; i < na; ++i) {
    const Vec2 p1 = a.point(i), p2 = a.point((i + 1) % na);
    for (size_t j = 0; j < nb; ++j) {
      const Vec2 q1 = b.point(j);
      if (p1 == q1) return true;
      if (segments_cross(p1, p2, q1, b.point((j + 1) % nb))) return true;
    }
  }
  return false;
}

std::vector<Vec2> boundary_velocity(std::span<const ClosedCurve> curves, double alpha, int index,
                                    double tangent_gauge) {
  const double C = kernels::riesz_constant(alpha);
  if (index < 0 || index >= static_cast<int>(curves.size())) throw DomainError("curve index out of range");
  for (const auto& c : curves) check_curve(c);
  for (size_t a = 0; a < curves.size(); ++a) {
    if (self_intersects(curves[a])) throw DegenerateBoundary("curve " + std::to_string(a) + " crosses itself");
    for (size_t b = a + 1; b < curves.size(); ++b) {
      if (curves_intersect(curves[a], curves[b])) {
        throw DegenerateBoundary("curves " + std::to_string(a) + " and " + std::to_string(b) + " intersect");
      }
    }
  }
  std::vector<std::vector<Vec2>> tangents;
  for (const auto& c : curves) tangents.push_back(curve_tangents(c));

  const ClosedCurve& own = curves[index];
  const bool subtract = alpha >= 1.0;
  std::vector<Vec2> out(own.nodes.size(), Vec2{0.0, 0.0});
  for (size_t i = 0; i < own.nodes.size(); ++i) {
    const Vec2 x = own.nodes[i];
    double vx = 0.0, vy = 0.0;
    for (size_t c = 0; c < curves.size(); ++c) {
      const auto& z = curves[c].nodes;
      const auto& t = tangents[c];
      const bool self = static_cast<int>(c) == index;
      const double sx = self && subtract ? tangent_gauge * t[i][0] : 0.0;
      const double sy = self && subtract ? tangent_gauge * t[i][1] : 0.0;
      // x - z_k = (x_local - z_local) + (centre_own - centre_c)
      const double ox = own.centre[0] - curves[c].centre[0], oy = own.centre[1] - curves[c].centre[1];
      double ax = 0.0, ay = 0.0;
      for (size_t k = 0; k < z.size(); ++k) {
        if (self && k == i) continue;  // punctured rule; the regularized integrand vanishes there
        const double dx = (x[0] - z[k][0]) + ox, dy = (x[1] - z[k][1]) + oy;
        const double w = std::pow(dx * dx + dy * dy, -0.5 * alpha);
        ax += (t[k][0] - sx) * w;
        ay += (t[k][1] - sy) * w;
      }
      const double pre = curves[c].strength * C / static_cast<double>(z.size());
      vx += pre * ax;
      vy += pre * ay;
    }
    out[i] = {vx, vy};
  }
  return out;
}

std::vector<Vec2> field_velocity(std::span<const ClosedCurve> curves, double alpha, std::span<const Vec2> points) {
  const double C = kernels::riesz_constant(alpha);
  for (const auto& c : curves) check_curve(c);
  std::vector<std::vector<Vec2>> tangents;
  for (const auto& c : curves) tangents.push_back(curve_tangents(c));
  std::vector<Vec2> out;
  out.reserve(points.size());
  for (const Vec2& x : points) {
    double vx = 0.0, vy = 0.0;
    for (size_t c = 0; c < curves.size(); ++c) {
      const auto& z = curves[c].nodes;
      double ax = 0.0, ay = 0.0;
      for (size_t k = 0; k < z.size(); ++k) {
        const Vec2 p = curves[c].point(k);
        const double dx = x[0] - p[0], dy = x[1] - p[1];
        const double r2 = dx * dx + dy * dy;
        if (r2 == 0.0) throw DomainError("field point lies on a curve node");
        const double w = std::pow(r2, -0.5 * alpha);
        ax += tangents[c][k][0] * w;
        ay += tangents[c][k][1] * w;
      }
      const double pre = curves[c].strength * C / static_cast<double>(z.size());
      vx += pre * ax;
      vy += pre * ay;
    }
    out.push_back({vx, vy});
  }
  return out;
}

}  // namespace gsqg::functional

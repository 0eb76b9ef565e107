#include "gsqg/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "gsqg/errors.hpp"

namespace gsqg::diagnostics {

using functional::Mode;

Vec2 PatchFamily::rigid_velocity(const Vec2& p) const {
  if (mode == Mode::travelling) return {0.0, speed};
  return {speed * p[1], -speed * p[0]};
}

PatchFamily reconstruct(const functional::PatchGeometry& family, const solver::BranchRecord& record, int nodes) {
  if (nodes < 8) throw DomainError("reconstruction needs at least 8 nodes");
  if (record.eps == 0.0) throw DomainError("eps = 0 is a point-vortex configuration, not a patch");
  const auto geo = family.with_eps(record.eps);
  const double eps = record.eps, delta = geo.delta(), d = geo.d();
  const double strength = 1.0 / (eps * eps);

  PatchFamily out{{}, {}, {}, geo.mode(), record.speed};
  std::vector<Vec2> z(nodes);
  out.angles.resize(nodes);
  for (int n = 0; n < nodes; ++n) {
    const double x = 2.0 * std::numbers::pi * n / nodes;
    const double r = eps * (1.0 + delta * record.f.value(x));
    out.angles[n] = x;
    z[n] = {r * std::cos(x), r * std::sin(x)};
  }
  if (geo.mode() == Mode::corotating) {
    for (int i = 0; i < geo.folds(); ++i) {
      const double th = 2.0 * std::numbers::pi * i / geo.folds();
      const double c = std::cos(th), s = std::sin(th);
      functional::ClosedCurve curve{{}, {-c * d, -s * d}, strength};
      curve.nodes.reserve(nodes);
      for (const Vec2& p : z) curve.nodes.push_back({c * p[0] - s * p[1], s * p[0] + c * p[1]});
      out.centres.push_back(curve.centre);
      out.curves.push_back(std::move(curve));
    }
  } else {
    functional::ClosedCurve a{z, {0.0, 0.0}, strength}, b{{}, {2.0 * d, 0.0}, -strength};
    for (const Vec2& p : z) b.nodes.push_back({-p[0], -p[1]});
    out.curves = {std::move(a), std::move(b)};
    out.centres = {{0.0, 0.0}, {2.0 * d, 0.0}};
  }
  return out;
}

CurvatureProfile curvature_profile(const functional::PatchGeometry& family, const solver::BranchRecord& record,
                                   int nodes) {
  if (nodes < 8) throw DomainError("curvature profile needs at least 8 nodes");
  const double delta = family.with_eps(record.eps).delta();
  CurvatureProfile out;
  out.scaled.resize(nodes);
  for (int n = 0; n < nodes; ++n) {
    const double x = 2.0 * std::numbers::pi * n / nodes;
    const double R = 1.0 + delta * record.f.value(x);
    const double R1 = delta * record.f.derivative(x);
    const double R2 = delta * record.f.second_derivative(x);
    out.scaled[n] = (R * R + 2.0 * R1 * R1 - R * R2) / std::pow(R * R + R1 * R1, 1.5);
  }
  out.min = *std::min_element(out.scaled.begin(), out.scaled.end());
  for (double k : out.scaled) out.max_deviation = std::max(out.max_deviation, std::abs(k - 1.0));
  return out;
}

ExponentFit exponent_fit(std::span<const double> eps, std::span<const double> speed, double ground_speed) {
  if (eps.size() != speed.size()) throw DomainError("eps and speed lists differ in length");
  std::vector<std::pair<double, double>> pts;
  for (size_t i = 0; i < eps.size(); ++i) {
    const double gap = std::abs(speed[i] - ground_speed);
    if (eps[i] != 0.0 && gap > 1e-13) pts.emplace_back(std::log(std::abs(eps[i])), std::log(gap));
  }
  if (pts.size() < 4) throw DomainError("exponent fit needs at least 4 points with |speed - speed*| > 1e-13");
  std::sort(pts.begin(), pts.end());
  if (pts.size() > 8) pts = std::vector<std::pair<double, double>>(pts.begin() + 3, pts.end() - 3);
  const double n = static_cast<double>(pts.size());
  double mx = 0.0, my = 0.0;
  for (auto [x, y] : pts) {
    mx += x;
    my += y;
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (auto [x, y] : pts) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
  }
  if (!(sxx > 0.0)) throw DomainError("exponent fit needs distinct eps values");
  const double p = sxy / sxx;
  return {p, my - p * mx, static_cast<int>(pts.size())};
}

SpectralDecay spectral_decay(const spectral::FourierCosSeries& f, double threshold) {
  SpectralDecay out;
  std::vector<std::pair<double, double>> pts;
  for (int j = 2; j <= f.truncation(); ++j) {
    const double a = std::abs(f.coeff(j));
    if (a > threshold) {
      out.last_significant_mode = j;
      pts.emplace_back(j, std::log(a));
    }
  }
  out.resolved = 2 * out.last_significant_mode < f.truncation();
  if (pts.size() >= 2) {
    double mx = 0.0, my = 0.0;
    for (auto [x, y] : pts) {
      mx += x;
      my += y;
    }
    mx /= pts.size();
    my /= pts.size();
    double sxx = 0.0, sxy = 0.0;
    for (auto [x, y] : pts) {
      sxx += (x - mx) * (x - mx);
      sxy += (x - mx) * (y - my);
    }
    out.tail_ratio = std::exp(sxy / sxx);
  }
  return out;
}

bool has_intersections(const PatchFamily& patches) {
  for (size_t a = 0; a < patches.curves.size(); ++a) {
    if (functional::self_intersects(patches.curves[a])) return true;
    for (size_t b = a + 1; b < patches.curves.size(); ++b) {
      if (functional::curves_intersect(patches.curves[a], patches.curves[b])) return true;
    }
  }
  return false;
}

NormalVelocityReport normal_velocity_residual(const functional::PatchGeometry& family,
                                              const solver::BranchRecord& record, int nodes) {
  const PatchFamily pf = reconstruct(family, record, nodes);
  NormalVelocityReport out;
  double worst = 0.0;
  for (size_t c = 0; c < pf.curves.size(); ++c) {
    const auto v = functional::boundary_velocity(pf.curves, family.alpha(), static_cast<int>(c));
    const auto t = functional::curve_tangents(pf.curves[c]);
    for (size_t k = 0; k < v.size(); ++k) {
      const Vec2 u = pf.rigid_velocity(pf.curves[c].point(k));
      const double tn = std::hypot(t[k][0], t[k][1]);
      const double nx = t[k][1] / tn, ny = -t[k][0] / tn;  // outward for a ccw curve
      worst = std::max(worst, std::abs((v[k][0] - u[0]) * nx + (v[k][1] - u[1]) * ny));
      out.max_rigid_speed = std::max(out.max_rigid_speed, std::hypot(u[0], u[1]));
    }
  }
  out.residual = worst / out.max_rigid_speed;
  return out;
}

}  // namespace gsqg::diagnostics

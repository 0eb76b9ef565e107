#pragma once
// Boundary functionals of the gSQG patch problem in polar form
//   R(x) = 1 + delta f(x),  delta = eps |eps|^alpha,  z(x) = eps R(x) (cos x, sin x).
// The residual is the normal velocity in the steady frame divided by eps R:
//   co-rotating  G = V_self + V_int - Omega * (eps R' - d R' cos x / R + d sin x)
//   travelling   H = V_self + V_int - W     * (sin x - R' cos x / R)
// Both are odd in x for even f.

#include <array>
#include <span>
#include <vector>

#include "gsqg/spectral.hpp"

namespace gsqg::functional {

enum class Mode { corotating, travelling };

/// One of the other patches, seen from the reference patch: parameter shift
/// `angle`, centre offset (px, py) and relative strength.
struct Image {
  double angle;
  double px, py;
  double strength;
};

class PatchGeometry {
 public:
  /// m-fold co-rotating family, centres on the circle of radius d.
  static PatchGeometry corotating(double alpha, double d, int m, double eps = 0.0);
  /// Counter-rotating pair with centres 2d apart, translating along +e2.
  static PatchGeometry travelling(double alpha, double d, double eps = 0.0);

  PatchGeometry with_eps(double eps) const;

  double alpha() const noexcept { return alpha_; }
  double d() const noexcept { return d_; }
  Mode mode() const noexcept { return mode_; }
  /// m for co-rotating families, 2 for the travelling pair.
  int folds() const noexcept { return folds_; }
  double eps() const noexcept { return eps_; }
  /// eps |eps|^alpha.
  double delta() const noexcept;
  double riesz() const noexcept { return riesz_; }
  const std::vector<Image>& images() const noexcept { return images_; }
  /// Point-vortex speed: Omega* (co-rotating) or W* (travelling).
  double ground_speed() const noexcept;
  /// Largest |eps| for which the unperturbed disks stay apart.
  double eps_limit() const noexcept;

 private:
  PatchGeometry(double alpha, double d, Mode mode, int folds, double eps);
  double alpha_, d_;
  Mode mode_;
  int folds_;
  double eps_;
  double riesz_;
  std::vector<Image> images_;
};

/// Geometry plus the even shape perturbation f.  Rejects R <= 0.
class BoundaryShape {
 public:
  BoundaryShape(PatchGeometry geometry, spectral::FourierCosSeries f);
  const PatchGeometry& geometry() const noexcept { return geometry_; }
  const spectral::FourierCosSeries& f() const noexcept { return f_; }
  /// R(x) = 1 + delta f(x).
  double radius(double x) const noexcept;

 private:
  PatchGeometry geometry_;
  spectral::FourierCosSeries f_;
};

enum class SingularRule {
  /// Product integration with the exact finite-part weights of |2 sin(s/2)|^{-alpha}.
  corrected,
  /// Rectangle rule on the half-offset nodes (O(h^{3-alpha}) for the self term).
  plain,
};

struct QuadratureScheme {
  int outer_nodes = 256;  ///< N, collocation grid in x (unshifted)
  int inner_nodes = 256;  ///< M, integration grid in y, half-offset from x
  SingularRule rule = SingularRule::corrected;
};

struct FunctionalValue {
  spectral::FourierSinSeries coeffs;  ///< b_1..b_J of the residual, J = f.truncation()
  std::vector<double> grid;           ///< residual at x_n = 2 pi n / N
  double parity_leakage = 0.0;        ///< largest cosine coefficient of the grid residual
  std::vector<double> self;           ///< V_self on the grid
  std::vector<double> interaction;    ///< V_int on the grid
  std::vector<double> speed_term;     ///< S on the grid; the residual carries -speed * S
};

/// Reusable evaluator; caches quadrature weights and trigonometric tables for
/// one (alpha, images, N, M, rule).  Accepts shapes of any eps != 0 with the
/// same family parameters.
class ResidualOperator {
 public:
  ResidualOperator(const PatchGeometry& family, const QuadratureScheme& scheme);

  /// Full residual at the given speed.  With exploit_parity only x in [0, pi]
  /// is computed and the odd extension is used (leakage then reads zero).
  FunctionalValue evaluate(const BoundaryShape& shape, double speed, bool exploit_parity = false) const;
  /// Analytic directional derivative in f along h, speed held fixed.
  FunctionalValue derivative(const BoundaryShape& shape, double speed, const spectral::FourierCosSeries& h,
                             bool exploit_parity = false) const;

  const QuadratureScheme& scheme() const noexcept { return scheme_; }

 private:
  struct Samples;
  Samples sample(const BoundaryShape& shape, const spectral::FourierCosSeries* h) const;
  FunctionalValue assemble(const BoundaryShape& shape, double speed, const spectral::FourierCosSeries* h,
                           bool exploit_parity) const;
  void check(const BoundaryShape& shape) const;

  PatchGeometry family_;
  QuadratureScheme scheme_;
  std::vector<double> sin_s_, cos_s_, sig2_, weight_;
  std::vector<std::vector<double>> sin_img_, cos_img_;  // sin/cos(s_m - angle_i)
};

/// Co-rotating residual G(eps, Omega, f).  eps = 0 is rejected: use eval_G_limit.
FunctionalValue eval_G(const BoundaryShape& shape, double omega, const QuadratureScheme& scheme = {});
/// Travelling residual H(eps, W, f).
FunctionalValue eval_H(const BoundaryShape& shape, double w, const QuadratureScheme& scheme = {});

/// Closed form at eps = 0 (alpha in [1,2)):
///   sum_j gamma_j j a_j sin(jx) + (Omega* - Omega) d sin x        (co-rotating)
///   sum_j gamma_j j a_j sin(jx) + (W* - W) sin x                  (travelling)
spectral::FourierSinSeries eval_G_limit(double omega, const spectral::FourierCosSeries& f,
                                        const PatchGeometry& geometry);
spectral::FourierSinSeries eval_H_limit(double w, const spectral::FourierCosSeries& f,
                                        const PatchGeometry& geometry);

struct GateauxMethod {
  enum class Kind { analytic, finite_difference };
  Kind kind = Kind::analytic;
  double step = 1e-6;  ///< central-difference step for finite_difference
};

/// Directional derivative d/dt residual(f + t h) at t = 0, speed held fixed.
FunctionalValue gateaux(const BoundaryShape& shape, double speed, const spectral::FourierCosSeries& h,
                        const QuadratureScheme& scheme = {}, GateauxMethod method = {});

// ------------------------------------------------------------ velocity oracle

using Vec2 = std::array<double, 2>;

/// Closed counter-clockwise curve sampled at uniformly spaced parameter values,
/// carrying patch amplitude `strength`.  Nodes are stored relative to `centre`
/// so that differences along one small curve keep full relative precision.
struct ClosedCurve {
  std::vector<Vec2> nodes;  ///< offsets from centre
  Vec2 centre{0.0, 0.0};
  double strength = 1.0;

  Vec2 point(size_t k) const { return {centre[0] + nodes[k][0], centre[1] + nodes[k][1]}; }
};

/// dz/dtau at the nodes by trigonometric interpolation of the samples.
std::vector<Vec2> curve_tangents(const ClosedCurve& curve);

/// True if the polyline crosses itself.
bool self_intersects(const ClosedCurve& curve);
/// True if the two polylines cross or share a node.
bool curves_intersect(const ClosedCurve& a, const ClosedCurve& b);

/// Velocity (C_alpha / 2 pi) sum_c strength_c \oint dxi / |x - xi|^alpha at the
/// nodes of curves[index].  For alpha >= 1 the own-curve integrand is
/// regularized by subtracting tangent_gauge * z'(sigma), which changes only the
/// tangential component.  Crossing or coincident curves are rejected.
std::vector<Vec2> boundary_velocity(std::span<const ClosedCurve> curves, double alpha, int index,
                                    double tangent_gauge = 1.0);
/// Same velocity at points away from every curve.
std::vector<Vec2> field_velocity(std::span<const ClosedCurve> curves, double alpha, std::span<const Vec2> points);

}  // namespace gsqg::functional

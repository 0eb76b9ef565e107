#pragma once
// Physical post-processing of converged branch records.

#include <optional>
#include <span>
#include <vector>

#include "gsqg/functional.hpp"
#include "gsqg/solver.hpp"

namespace gsqg::diagnostics {

using functional::Vec2;

/// All patches of a solution in the plane, in the frame where the rotation
/// centre is the origin (co-rotating) or the pair translates along +e2.
struct PatchFamily {
  std::vector<functional::ClosedCurve> curves;  ///< curve 0 is the reference patch
  std::vector<Vec2> centres;
  std::vector<double> angles;  ///< parameter values of the nodes
  functional::Mode mode;
  double speed;

  /// Velocity of the rigid motion (rotation about the origin, or W e2) at a point.
  Vec2 rigid_velocity(const Vec2& p) const;
};

/// Co-rotating: D_0 = (-d,0) + z(x) and D_i = Q_{2 pi i/m} D_0, strengths 1/eps^2.
/// Travelling: D_0 = z(x) with +1/eps^2, D_T = 2 d e1 - z(x) with -1/eps^2.
PatchFamily reconstruct(const functional::PatchGeometry& family, const solver::BranchRecord& record, int nodes);

struct CurvatureProfile {
  std::vector<double> scaled;  ///< eps * kappa at the nodes
  double min = 0.0;
  double max_deviation = 0.0;  ///< max |eps kappa - 1|
};

/// eps kappa = (R^2 + 2R'^2 - R R'') / (R^2 + R'^2)^{3/2}.
CurvatureProfile curvature_profile(const functional::PatchGeometry& family, const solver::BranchRecord& record,
                                   int nodes);

struct ExponentFit {
  double exponent;
  double log_prefactor;
  int points_used;
};

/// Least-squares slope of log|speed - speed*| against log eps.  Points with
/// |speed - speed*| <= 1e-13 are ignored; above 8 points the 3 smallest and 3
/// largest eps are discarded.  Needs 4 usable points.
ExponentFit exponent_fit(std::span<const double> eps, std::span<const double> speed, double ground_speed);

struct SpectralDecay {
  int last_significant_mode = 0;  ///< largest j with |a_j| > threshold (0 if none)
  std::optional<double> tail_ratio;  ///< geometric rate fitted over the significant modes
  bool resolved = true;              ///< last significant mode < J/2
};

SpectralDecay spectral_decay(const spectral::FourierCosSeries& f, double threshold = 1e-12);

struct NormalVelocityReport {
  double residual = 0.0;  ///< max |(v - U)·n| / max |U|
  double max_rigid_speed = 0.0;
};

/// Normal velocity of the reconstructed family in the co-moving frame, from the
/// direct contour-dynamics velocity.  Throws DegenerateBoundary on crossing curves.
NormalVelocityReport normal_velocity_residual(const functional::PatchGeometry& family,
                                              const solver::BranchRecord& record, int nodes);

/// True if any reconstructed curve crosses itself or another one.
bool has_intersections(const PatchFamily& patches);

}  // namespace gsqg::diagnostics

#pragma once
// Newton continuation in eps for the even shape perturbation f, with the speed
// (Omega or W) eliminated through the first sine coefficient.

#include <optional>
#include <string>
#include <vector>

#include "gsqg/functional.hpp"
#include "gsqg/spectral.hpp"

namespace gsqg::solver {

struct SolverConfig {
  int truncation = 32;                                   ///< J, unknowns a_2..a_J
  functional::QuadratureScheme quadrature{256, 256};     ///< N >= 4(J+1)
  double tolerance = 1e-10;                              ///< on ||(b_2..b_J)||_2
  int max_iterations = 25;
  double fd_step = 1e-6;                                 ///< central-difference Jacobian step
  std::vector<double> schedule;                          ///< eps values, |eps| increasing

  /// Throws DomainError on an inconsistent configuration.
  void validate() const;
};

/// Point-vortex angular velocity of m patches on the circle of radius d.
double omega_star(double alpha, double d, int m);
/// Point-vortex translation speed of a +/- pair at distance 2d.
double w_star(double alpha, double d);

struct SpeedElimination {
  double speed;
  spectral::FourierSinSeries residual;  ///< b_1 = 0 by construction
  double speed_coefficient;             ///< first sine coefficient of S
};

/// speed = b_1(V) / b_1(S), residual = V - speed S.
SpeedElimination eliminate_speed(const functional::BoundaryShape& shape, const functional::QuadratureScheme& scheme);

struct BranchRecord {
  double eps = 0.0;
  spectral::FourierCosSeries f;
  double speed = 0.0;
  double residual = 0.0;  ///< ||(b_2..b_J)||_2 at convergence
  int iterations = 0;
  std::vector<double> residual_history;
  double first_sine = 0.0;       ///< b_1 of the residual at the returned speed
  double parity_leakage = 0.0;   ///< cosine content of the full-grid residual
};

/// Solves residual(eps, speed, f) = 0 from the initial guess.  eps = 0 returns
/// the trivial solution (f = 0, point-vortex speed).  Throws DivergenceError.
BranchRecord newton_solve(const functional::PatchGeometry& family, double eps,
                          const spectral::FourierCosSeries& initial, const SolverConfig& config);

struct DivergenceInfo {
  double eps;
  std::string message;
  std::vector<double> residual_history;
};

struct Branch {
  std::vector<BranchRecord> records;
  std::optional<DivergenceInfo> failure;
  /// Largest eps reached before the first failure (or the last eps if none).
  double last_converged_eps() const noexcept;
};

/// Runs the schedule, using the previous solution as predictor, and stops at the
/// first divergence.
Branch continue_branch(const functional::PatchGeometry& family, const SolverConfig& config);

/// Residual norm of a record, recomputed at its stored speed (b_1..b_J).
double verify_record(const functional::PatchGeometry& family, const BranchRecord& record,
                     const functional::QuadratureScheme& scheme);

/// (eps, f) -> (-eps, f(-.)) with the same speed; the residual field holds the
/// re-verified residual of the reflected pair.
BranchRecord reflect_solution(const functional::PatchGeometry& family, const BranchRecord& record,
                              const functional::QuadratureScheme& scheme);

}  // namespace gsqg::solver

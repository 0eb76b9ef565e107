#include "gsqg/solver.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <string>

#include "gsqg/errors.hpp"
#include "gsqg/format.hpp"
#include "gsqg/kernels.hpp"

namespace gsqg::solver {

using functional::BoundaryShape;
using functional::PatchGeometry;
using spectral::FourierCosSeries;

void SolverConfig::validate() const {
  if (truncation < 2) throw DomainError("truncation J must be at least 2");
  if (quadrature.outer_nodes < 4 * (truncation + 1)) {
    throw AliasingError("outer grid N=" + std::to_string(quadrature.outer_nodes) + " must be >= 4(J+1)=" +
                        std::to_string(4 * (truncation + 1)));
  }
  if (quadrature.inner_nodes < 8) throw DomainError("inner grid M must be at least 8");
  if (!(tolerance > 0.0)) throw DomainError("tolerance must be positive");
  if (max_iterations < 1) throw DomainError("max_iterations must be positive");
  if (!(fd_step > 0.0)) throw DomainError("fd_step must be positive");
  for (size_t i = 0; i < schedule.size(); ++i) {
    if (!std::isfinite(schedule[i])) throw DomainError("eps schedule entries must be finite");
    if (i > 0 && !(std::abs(schedule[i]) > std::abs(schedule[i - 1]))) {
      throw DomainError("eps schedule must be strictly increasing in |eps|");
    }
  }
  if (!schedule.empty() && std::abs(schedule.front()) > 0.01) {
    throw DomainError("eps schedule must start at |eps| <= 0.01, got " + format_double(schedule.front()));
  }
}

double omega_star(double alpha, double d, int m) {
  return PatchGeometry::corotating(alpha, d, m).ground_speed();
}

double w_star(double alpha, double d) { return PatchGeometry::travelling(alpha, d).ground_speed(); }

namespace {

struct Eliminated {
  double speed;
  spectral::FourierSinSeries residual;
  double speed_coefficient;
  double leakage;
};

Eliminated eliminate(const functional::ResidualOperator& op, const BoundaryShape& shape, bool parity) {
  const auto v = op.evaluate(shape, 0.0, parity);
  const int J = shape.f().truncation();
  const auto s = spectral::analyze_odd(v.speed_term, J).series;
  const double s1 = s.coeff(1);
  if (!(std::abs(s1) > 1e-14)) throw SingularElimination("first sine coefficient of the speed term vanishes");
  const double speed = v.coeffs.coeff(1) / s1;
  auto r = v.coeffs - speed * s;
  r.set(1, 0.0);
  return {speed, std::move(r), s1, v.parity_leakage};
}

std::vector<double> unknowns(const FourierCosSeries& f) {
  return {f.coefficients().begin(), f.coefficients().end()};
}

}  // namespace

SpeedElimination eliminate_speed(const BoundaryShape& shape, const functional::QuadratureScheme& scheme) {
  const functional::ResidualOperator op(shape.geometry(), scheme);
  auto e = eliminate(op, shape, false);
  return {e.speed, std::move(e.residual), e.speed_coefficient};
}

BranchRecord newton_solve(const PatchGeometry& family, double eps, const FourierCosSeries& initial,
                          const SolverConfig& config) {
  config.validate();
  const int J = config.truncation;
  BranchRecord rec;
  rec.eps = eps;
  if (eps == 0.0) {
    rec.f = FourierCosSeries(J);
    rec.speed = family.ground_speed();
    rec.residual_history = {0.0};
    return rec;
  }
  const PatchGeometry geo = family.with_eps(eps);
  const functional::ResidualOperator op(geo, config.quadrature);

  // Column scaling by the inverse linearized multipliers (when defined).
  std::vector<double> scale(static_cast<size_t>(J - 1), 1.0);
  if (geo.alpha() >= 1.0) {
    for (int j = 2; j <= J; ++j) scale[j - 2] = 1.0 / (kernels::gamma_multiplier(geo.alpha(), j).value * j);
  }

  auto residual_of = [&](const std::vector<double>& a) {
    const BoundaryShape shape(geo, FourierCosSeries(J, a));
    return eliminate(op, shape, true);
  };
  auto as_vector = [J](const spectral::FourierSinSeries& r) {
    Eigen::VectorXd v(J - 1);
    for (int j = 2; j <= J; ++j) v(j - 2) = r.coeff(j);
    return v;
  };
  auto fail = [&](const std::string& why) -> DivergenceError {
    return DivergenceError("Newton failed at eps=" + format_double(eps) + ": " + why, eps, rec.residual_history);
  };

  std::vector<double> a = unknowns(initial.resized(J));
  Eliminated cur{};
  try {
    cur = residual_of(a);
  } catch (const DegenerateBoundary& e) {
    throw fail(e.what());
  }
  double res = cur.residual.norm_from_second();
  rec.residual_history.push_back(res);
  const double res0 = res;
  int it = 0;
  while (!(res <= config.tolerance)) {
    if (it >= config.max_iterations) throw fail("no convergence within " + std::to_string(it) + " iterations");
    ++it;
    const double t = config.fd_step;
    Eigen::MatrixXd jac(J - 1, J - 1);
    try {
      for (int c = 0; c < J - 1; ++c) {
        std::vector<double> ap = a, am = a;
        ap[c] += t;
        am[c] -= t;
        jac.col(c) = (as_vector(residual_of(ap).residual) - as_vector(residual_of(am).residual)) / (2.0 * t) *
                     scale[c];
      }
    } catch (const std::runtime_error& e) {
      throw fail(e.what());
    }
    const Eigen::VectorXd z = jac.colPivHouseholderQr().solve(-as_vector(cur.residual));
    if (!z.allFinite()) throw fail("singular Jacobian");
    for (int c = 0; c < J - 1; ++c) a[c] += scale[c] * z(c);
    try {
      cur = residual_of(a);
    } catch (const std::runtime_error& e) {
      throw fail(e.what());
    }
    res = cur.residual.norm_from_second();
    rec.residual_history.push_back(res);
    if (!std::isfinite(res) || res > 1e3 * std::max(res0, config.tolerance)) throw fail("residual blew up");
  }

  rec.f = FourierCosSeries(J, a);
  rec.speed = cur.speed;
  rec.residual = res;
  rec.iterations = it;
  // Full-grid re-evaluation at the returned speed for the parity/elimination checks.
  const auto full = op.evaluate(BoundaryShape(geo, rec.f), rec.speed, false);
  rec.first_sine = full.coeffs.coeff(1);
  rec.parity_leakage = full.parity_leakage;
  return rec;
}

double Branch::last_converged_eps() const noexcept { return records.empty() ? 0.0 : records.back().eps; }

Branch continue_branch(const PatchGeometry& family, const SolverConfig& config) {
  config.validate();
  Branch branch;
  FourierCosSeries guess(config.truncation);
  for (double eps : config.schedule) {
    try {
      branch.records.push_back(newton_solve(family, eps, guess, config));
      guess = branch.records.back().f;
    } catch (const DivergenceError& e) {
      branch.failure = DivergenceInfo{eps, e.what(), e.history()};
      break;
    } catch (const DomainError& e) {
      // eps beyond the geometric limit of the family
      branch.failure = DivergenceInfo{eps, e.what(), {}};
      break;
    }
  }
  return branch;
}

double verify_record(const PatchGeometry& family, const BranchRecord& record,
                     const functional::QuadratureScheme& scheme) {
  if (record.eps == 0.0) {
    return functional::eval_G_limit(record.speed, record.f, family).norm();
  }
  const PatchGeometry geo = family.with_eps(record.eps);
  const functional::ResidualOperator op(geo, scheme);
  return op.evaluate(BoundaryShape(geo, record.f), record.speed).coeffs.norm();
}

BranchRecord reflect_solution(const PatchGeometry& family, const BranchRecord& record,
                              const functional::QuadratureScheme& scheme) {
  BranchRecord out = record;
  out.eps = -record.eps;
  out.f = record.f.reflected();
  out.iterations = 0;
  out.residual_history.clear();
  out.residual = verify_record(family, out, scheme);
  out.residual_history.push_back(out.residual);
  return out;
}

}  // namespace gsqg::solver

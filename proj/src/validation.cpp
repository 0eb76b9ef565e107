#include "gsqg/validation.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include "gsqg/cli.hpp"
#include "gsqg/diagnostics.hpp"
#include "gsqg/format.hpp"
#include "gsqg/functional.hpp"
#include "gsqg/kernels.hpp"
#include "gsqg/solver.hpp"

namespace fs = std::filesystem;

namespace gsqg::validation {
namespace {

using functional::PatchGeometry;
using spectral::FourierCosSeries;
constexpr double kPi = std::numbers::pi;

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// Running worst-case tracker for a family of sub-checks.
struct Tally {
  bool ok = true;
  std::vector<std::string> failures;
  void check(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      failures.push_back(what);
    }
  }
  std::string summary(const std::string& passed_text) const {
    if (ok) return passed_text;
    std::string s;
    for (size_t i = 0; i < failures.size() && i < 4; ++i) s += (i ? "; " : "") + failures[i];
    if (failures.size() > 4) s += "; +" + std::to_string(failures.size() - 4) + " more";
    return s;
  }
};

// beta_j by double-exponential quadrature of its defining integral.
double beta_by_quadrature(double alpha, int j) {
  boost::math::quadrature::tanh_sinh<double> ts;
  auto g = [alpha, j](double y) {
    const double s = std::sin(0.5 * y);
    if (s <= 1e-100) return 0.0;  // the integrand vanishes like y^{2-alpha} at both ends
    return (1.0 - std::cos(j * y)) / std::pow(s, alpha);
  };
  return ts.integrate(g, 0.0, 2.0 * kPi);
}

struct BranchCase {
  std::string label;
  PatchGeometry family;
};

std::vector<BranchCase> branch_cases() {
  return {{"corot a=1 m=2", PatchGeometry::corotating(1.0, 1.0, 2)},
          {"corot a=1 m=3", PatchGeometry::corotating(1.0, 1.0, 3)},
          {"corot a=1.5 m=2", PatchGeometry::corotating(1.5, 1.0, 2)},
          {"trav a=1", PatchGeometry::travelling(1.0, 1.0)},
          {"trav a=1.5", PatchGeometry::travelling(1.5, 1.0)}};
}

solver::SolverConfig acceptance_config() {
  solver::SolverConfig c;  // J=32, N=M=256, tol 1e-10
  for (int i = 0; i < 10; ++i) c.schedule.push_back(5e-3 * std::pow(10.0, i / 9.0));
  c.schedule.back() = 5e-2;
  return c;
}

struct Context {
  std::vector<BranchCase> cases = branch_cases();
  solver::SolverConfig config = acceptance_config();
  std::vector<solver::Branch> branches;

  const std::vector<solver::Branch>& all() {
    if (branches.empty()) {
      for (const auto& c : cases) branches.push_back(solver::continue_branch(c.family, config));
    }
    return branches;
  }
};

CriterionResult c1_constants() {
  Tally t;
  io::Json m;
  const double c1 = kernels::riesz_constant(1.0);
  t.check(std::abs(c1 - 1.0) <= 1e-14, "C_1=" + format_double(c1));
  for (double a : {0.5, 1.5}) {
    const double ref = boost::math::tgamma(a / 2) / (std::pow(2.0, 1 - a) * boost::math::tgamma(1 - a / 2));
    const double e = rel(kernels::riesz_constant(a), ref);
    t.check(e <= 1e-14, "C_" + format_double(a) + " rel err " + sci(e));
    m["C_alpha_rel_err"].push_back(e);
  }
  double worst_beta = 0.0;
  for (int j = 1; j <= 16; ++j) {
    long double s = 0.0L;
    for (int i = 1; i <= j; ++i) s += 8.0L / (2 * i - 1);
    worst_beta = std::max(worst_beta, rel(kernels::beta_multiplier(1.0, j), static_cast<double>(s)));
  }
  t.check(worst_beta <= 1e-14, "beta_j(1) rel err " + sci(worst_beta));
  m["beta_alpha1_rel_err"] = worst_beta;

  struct Ref {
    std::string name;
    double value, expected;
  };
  const double c15 = boost::math::tgamma(0.75) / (std::pow(2.0, -0.5) * boost::math::tgamma(0.25));
  const std::vector<Ref> refs = {
      {"Omega*(1,1,2)", solver::omega_star(1.0, 1.0, 2), -0.125},
      {"Omega*(1,1,3)", solver::omega_star(1.0, 1.0, 3), -1.0 / (2.0 * std::sqrt(3.0))},
      {"W*(1,1)", solver::w_star(1.0, 1.0), 0.125},
      {"Omega*(1.5,1,2)", solver::omega_star(1.5, 1.0, 2), -1.5 * c15 / std::pow(2.0, 3.5)},
      {"W*(1.5,1)", solver::w_star(1.5, 1.0), 1.5 * c15 / (2.0 * std::pow(2.0, 2.5))},
      {"Omega*(1,2,2)", solver::omega_star(1.0, 2.0, 2), -0.125 / 8.0},
      {"W*(1,2)", solver::w_star(1.0, 2.0), 0.125 / 4.0},
  };
  double worst = 0.0;
  for (const auto& r : refs) {
    const double e = rel(r.value, r.expected);
    worst = std::max(worst, e);
    t.check(e <= 1e-14, r.name + " rel err " + sci(e));
  }
  m["speed_rel_err"] = worst;
  return {1, "constants", t.ok, t.summary("C_alpha, beta_j(1), Omega*, W* within 1e-14 (worst speed err " + sci(worst) + ")"), m};
}

CriterionResult c2_multipliers() {
  Tally t;
  io::Json m;
  double worst = 0.0;
  for (double a : {0.5, 1.0, 1.5}) {
    std::vector<double> quad(17);
    for (int j = 1; j <= 16; ++j) {
      quad[j] = beta_by_quadrature(a, j);
      const double e = rel(kernels::beta_multiplier(a, j), quad[j]);
      worst = std::max(worst, e);
      t.check(e <= 1e-6, "beta_" + std::to_string(j) + "(" + format_double(a) + ") rel err " + sci(e));
    }
    if (a >= 1.0) {
      const double C = kernels::riesz_constant(a);
      for (int j = 2; j <= 16; ++j) {
        const double ref = std::pow(2.0, -1.0 - a) * C * (quad[j] - quad[1]) / kPi;
        const double e = rel(kernels::gamma_multiplier(a, j).value, ref);
        worst = std::max(worst, e);
        t.check(e <= 1e-6, "gamma_" + std::to_string(j) + "(" + format_double(a) + ") rel err " + sci(e));
      }
      for (int j = 3; j <= 64; ++j) {
        t.check(kernels::gamma_multiplier(a, j).value > kernels::gamma_multiplier(a, j - 1).value,
                "gamma not increasing at j=" + std::to_string(j));
      }
    }
  }
  m["worst_quadrature_rel_err"] = worst;
  const double g2 = kernels::gamma_multiplier(1.0, 2).value;
  const double target = 8.0 / (3.0 * kPi);
  m["gamma2_alpha1"] = g2;
  m["gamma2_alpha1_expected"] = target;
  t.check(rel(g2, target) <= 1e-12, "gamma_2(1)=" + format_double(g2) + " (=2/(3pi)) vs required 8/(3pi)=" +
                                        format_double(target));
  return {2, "multipliers", t.ok,
          t.summary("quadrature agreement " + sci(worst) + ", gamma_j increasing, gamma_2(1)=8/(3pi)"), m};
}

CriterionResult c3_bifurcation_point() {
  Tally t;
  double worst = 0.0;
  for (double a : {1.0, 1.5}) {
    for (int mm : {2, 3}) {
      const auto g = PatchGeometry::corotating(a, 1.0, mm);
      const double n = functional::eval_G_limit(g.ground_speed(), FourierCosSeries(16), g).norm();
      worst = std::max(worst, n);
      t.check(n <= 1e-13, "G(0,Omega*,0) norm " + sci(n));
    }
    const auto g = PatchGeometry::travelling(a, 1.0);
    const double n = functional::eval_H_limit(g.ground_speed(), FourierCosSeries(16), g).norm();
    worst = std::max(worst, n);
    t.check(n <= 1e-13, "H(0,W*,0) norm " + sci(n));
  }
  return {3, "bifurcation point", t.ok, t.summary("worst norm " + sci(worst)), io::Json{{"worst_norm", worst}}};
}

CriterionResult c4_linearization() {
  Tally t;
  double worst_fd = 0.0, worst_limit = 0.0;
  const int J = 8;
  const double eps = 1e-3, step = 1e-6;
  for (double a : {1.0, 1.5}) {
    for (auto fam : {PatchGeometry::corotating(a, 1.0, 2), PatchGeometry::corotating(a, 1.0, 3),
                     PatchGeometry::travelling(a, 1.0)}) {
      const auto geo = fam.with_eps(eps);
      const functional::ResidualOperator op(geo, {128, 128});
      const double speed = fam.ground_speed();
      const auto base = op.evaluate(functional::BoundaryShape(geo, FourierCosSeries(J)), speed);
      for (int j = 2; j <= J; ++j) {
        FourierCosSeries h(J);
        h.set(j, 1.0);
        const auto pert = op.evaluate(functional::BoundaryShape(geo, step * h), speed);
        const double fd = (pert.coeffs.coeff(j) - base.coeffs.coeff(j)) / step;
        const double mult = kernels::gamma_multiplier(a, j).value * j;
        const double e = rel(fd, mult);
        worst_fd = std::max(worst_fd, e);
        t.check(e <= 5e-3, "FD j=" + std::to_string(j) + " rel err " + sci(e));

        const auto lim0 = fam.mode() == functional::Mode::corotating
                              ? functional::eval_G_limit(speed, FourierCosSeries(J), fam)
                              : functional::eval_H_limit(speed, FourierCosSeries(J), fam);
        const auto lim1 = fam.mode() == functional::Mode::corotating ? functional::eval_G_limit(speed, h, fam)
                                                                     : functional::eval_H_limit(speed, h, fam);
        const double el = rel(lim1.coeff(j) - lim0.coeff(j), mult);
        worst_limit = std::max(worst_limit, el);
        t.check(el <= 1e-10, "eps=0 form j=" + std::to_string(j) + " rel err " + sci(el));
      }
    }
  }
  return {4, "linearization", t.ok,
          t.summary("FD vs gamma_j j worst " + sci(worst_fd) + ", eps=0 form worst " + sci(worst_limit)),
          io::Json{{"worst_fd_rel_err", worst_fd}, {"worst_limit_rel_err", worst_limit}}};
}

CriterionResult c5_branches(Context& ctx) {
  Tally t;
  io::Json m = io::Json::array();
  const auto& branches = ctx.all();
  for (size_t b = 0; b < branches.size(); ++b) {
    const auto& br = branches[b];
    const auto& cs = ctx.cases[b];
    io::Json row;
    row["case"] = cs.label;
    row["converged_points"] = br.records.size();
    t.check(!br.failure && br.records.size() == ctx.config.schedule.size(),
            cs.label + " stopped at eps=" + (br.failure ? format_double(br.failure->eps) : std::string("?")));
    double worst_res = 0.0, min_norm = 1e300;
    std::vector<double> eps, speed;
    for (const auto& r : br.records) {
      worst_res = std::max(worst_res, r.residual);
      min_norm = std::min(min_norm, spectral::space_norm(r.f, 0));
      eps.push_back(r.eps);
      speed.push_back(r.speed);
    }
    row["worst_residual"] = worst_res;
    row["min_shape_norm"] = min_norm;
    t.check(worst_res <= 1e-9, cs.label + " residual " + sci(worst_res));
    t.check(min_norm > 0.0, cs.label + " trivial shape");
    try {
      const auto fit = diagnostics::exponent_fit(eps, speed, cs.family.ground_speed());
      row["fitted_exponent"] = fit.exponent;
      t.check(std::abs(fit.exponent - cs.family.alpha()) <= 0.15,
              cs.label + " speed exponent " + sci(fit.exponent) + " vs alpha=" + format_double(cs.family.alpha()));
    } catch (const std::exception& e) {
      t.check(false, cs.label + " exponent fit: " + e.what());
    }
    m.push_back(row);
  }
  return {5, "branches", t.ok, t.summary("all branches converged with residual <= 1e-9 and exponent ~ alpha"), m};
}

CriterionResult c6_velocity_oracle(Context& ctx) {
  Tally t;
  io::Json m = io::Json::array();
  const auto& branches = ctx.all();
  double worst = 0.0;
  for (size_t b = 0; b < branches.size(); ++b) {
    const auto& cs = ctx.cases[b];
    auto fine = ctx.config;
    fine.quadrature.outer_nodes *= 2;
    fine.quadrature.inner_nodes *= 2;
    io::Json row;
    row["case"] = cs.label;
    for (const auto& r : branches[b].records) {
      const int n = ctx.config.quadrature.outer_nodes;
      const double coarse = diagnostics::normal_velocity_residual(cs.family, r, n).residual;
      double refined = coarse;
      try {
        const auto rf = solver::newton_solve(cs.family, r.eps, r.f, fine);
        refined = diagnostics::normal_velocity_residual(cs.family, rf, 2 * n).residual;
      } catch (const std::exception& e) {
        t.check(false, cs.label + " refined solve failed: " + e.what());
      }
      worst = std::max(worst, coarse);
      row["coarse"].push_back(coarse);
      row["refined"].push_back(refined);
      t.check(coarse <= 1e-3, cs.label + " eps=" + sci(r.eps) + " residual " + sci(coarse));
      t.check(refined < coarse, cs.label + " eps=" + sci(r.eps) + " no decrease " + sci(coarse) + "->" + sci(refined));
    }
    m.push_back(row);
  }
  return {6, "velocity oracle", t.ok,
          t.summary("normalized normal velocity <= " + sci(worst) + ", decreasing under N,M doubling"), m};
}

CriterionResult c7_geometry(Context& ctx) {
  Tally t;
  io::Json m = io::Json::array();
  const auto& branches = ctx.all();
  for (size_t b = 0; b < branches.size(); ++b) {
    const auto& cs = ctx.cases[b];
    io::Json row;
    row["case"] = cs.label;
    double prev = -1.0;
    for (const auto& r : branches[b].records) {
      const auto k = diagnostics::curvature_profile(cs.family, r, ctx.config.quadrature.outer_nodes);
      const auto dec = diagnostics::spectral_decay(r.f);
      row["min_scaled_curvature"].push_back(k.min);
      row["max_curvature_deviation"].push_back(k.max_deviation);
      row["last_significant_mode"].push_back(dec.last_significant_mode);
      t.check(k.min > 0.0, cs.label + " non-convex at eps=" + sci(r.eps));
      if (prev >= 0.0) {
        t.check(k.max_deviation > prev, cs.label + " curvature deviation not monotone at eps=" + sci(r.eps));
      }
      prev = k.max_deviation;
      t.check(2 * dec.last_significant_mode < r.f.truncation(),
              cs.label + " last mode " + std::to_string(dec.last_significant_mode));
    }
    m.push_back(row);
  }
  return {7, "geometry", t.ok, t.summary("convex, curvature deviation shrinks with eps, spectrally resolved"), m};
}

CriterionResult c8_symmetry(Context& ctx) {
  Tally t;
  io::Json m;
  const auto& branches = ctx.all();
  double worst_leak = 0.0, worst_reflect = 0.0;
  for (size_t b = 0; b < branches.size(); ++b) {
    const auto& cs = ctx.cases[b];
    for (const auto& r : branches[b].records) {
      worst_leak = std::max(worst_leak, r.parity_leakage);
      t.check(r.parity_leakage <= 1e-10, cs.label + " leakage " + sci(r.parity_leakage));
      const auto once = solver::reflect_solution(cs.family, r, ctx.config.quadrature);
      worst_reflect = std::max(worst_reflect, once.residual);
      t.check(once.residual <= 2.0 * ctx.config.tolerance,
              cs.label + " reflected residual " + sci(once.residual) + " at eps=" + sci(-r.eps));
      const auto twice = solver::reflect_solution(cs.family, once, ctx.config.quadrature);
      t.check(twice.eps == r.eps && twice.f == r.f && twice.speed == r.speed, cs.label + " double reflection");
    }
  }
  m["worst_leakage"] = worst_leak;
  m["worst_reflected_residual"] = worst_reflect;
  return {8, "symmetry", t.ok, t.summary("leakage " + sci(worst_leak) + ", reflections re-verify"), m};
}

std::map<std::string, std::string> read_tree(const fs::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    std::ifstream f(e.path(), std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    files[e.path().filename().string()] = ss.str();
  }
  return files;
}

CriterionResult c9_determinism(const Options& opt) {
  fs::path base = opt.scratch_dir.empty() ? fs::temp_directory_path() / "gsqg_determinism" : fs::path(opt.scratch_dir);
  const fs::path dir = base / "run";
  std::error_code ec;
  fs::remove_all(dir, ec);
  const std::vector<std::string> args = {"corotating", "--alpha", "1.0",  "--d",   "1.0",
                                         "--m",        "2",       "--eps", "0.005:0.02:3",
                                         "--out",      dir.string()};
  std::ostringstream log, err;
  const int rc1 = cli::run(args, log, err);
  const auto first = rc1 == 0 ? read_tree(dir) : std::map<std::string, std::string>{};
  fs::remove_all(dir, ec);
  const int rc2 = cli::run(args, log, err);
  const auto second = rc2 == 0 ? read_tree(dir) : std::map<std::string, std::string>{};
  fs::remove_all(base, ec);
  const bool ok = rc1 == 0 && rc2 == 0 && !first.empty() && first == second;
  return {9, "determinism", ok,
          ok ? std::to_string(first.size()) + " output files byte-identical across two runs"
             : "runs differ or failed (exit " + std::to_string(rc1) + "/" + std::to_string(rc2) + ")",
          io::Json{{"files", first.size()}}};
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const Options& options) {
  std::vector<CriterionResult> out;
  Context ctx;
  auto emit = [&](CriterionResult r) {
    if (options.on_result) options.on_result(r);
    out.push_back(std::move(r));
  };
  emit(c1_constants());
  emit(c2_multipliers());
  emit(c3_bifurcation_point());
  emit(c4_linearization());
  emit(c5_branches(ctx));
  emit(c6_velocity_oracle(ctx));
  emit(c7_geometry(ctx));
  emit(c8_symmetry(ctx));
  emit(c9_determinism(options));
  return out;
}

std::string format_line(const CriterionResult& r) {
  return std::string(r.passed ? "PASS" : "FAIL") + " C" + std::to_string(r.id) + " " + r.name + ": " + r.detail;
}

io::Json to_json(const std::vector<CriterionResult>& results) {
  io::Json j;
  io::Json arr = io::Json::array();
  bool all = true;
  for (const auto& r : results) {
    all = all && r.passed;
    arr.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}, {"metrics", r.metrics}});
  }
  j["all_passed"] = all;
  j["criteria"] = std::move(arr);
  return j;
}

}  // namespace gsqg::validation

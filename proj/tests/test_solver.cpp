#include <doctest.h>

#include <cmath>

#include "gsqg/errors.hpp"
#include "gsqg/functional.hpp"
#include "gsqg/solver.hpp"

using namespace gsqg;
using namespace gsqg::solver;
using functional::PatchGeometry;
using spectral::FourierCosSeries;

namespace {

SolverConfig small_config() {
  SolverConfig c;
  c.truncation = 16;
  c.quadrature = {128, 128};
  return c;
}

// Same physical patch seen from the opposite side: (eps, f) -> (-eps, -f(. + pi)).
FourierCosSeries half_turn(const FourierCosSeries& f) {
  FourierCosSeries g(f.truncation());
  for (int j = 2; j <= f.truncation(); ++j) g.set(j, (j % 2 == 0 ? -1.0 : 1.0) * f.coeff(j));
  return g;
}

double distance(const FourierCosSeries& a, const FourierCosSeries& b) {
  double s = 0.0;
  for (int j = 2; j <= a.truncation(); ++j) s += std::pow(a.coeff(j) - b.coeff(j), 2);
  return std::sqrt(s);
}

}  // namespace

TEST_CASE("config validation") {
  SolverConfig c;
  CHECK_NOTHROW(c.validate());
  c.quadrature = {64, 256};
  CHECK_THROWS_AS(c.validate(), AliasingError);
  c = SolverConfig{};
  c.schedule = {0.01, 0.005};
  CHECK_THROWS_AS(c.validate(), DomainError);
  c.schedule = {0.02, 0.03};
  CHECK_THROWS_AS(c.validate(), DomainError);
  c.schedule = {-0.005, 0.01, -0.02};
  CHECK_NOTHROW(c.validate());
  c.tolerance = -1.0;
  CHECK_THROWS_AS(c.validate(), DomainError);
}

TEST_CASE("ground speeds") {
  CHECK(omega_star(1.0, 1.0, 2) == doctest::Approx(-0.125));
  CHECK(w_star(1.5, 1.0) == doctest::Approx(0.063372960006307943).epsilon(1e-14));
  CHECK(omega_star(1.5, 1.0, 3) == doctest::Approx(-0.15726715871347519).epsilon(1e-14));
}

TEST_CASE("speed elimination removes the first sine mode") {
  FourierCosSeries f(16);
  f.set(2, 0.4);
  f.set(3, -0.1);
  for (auto g : {PatchGeometry::corotating(1.5, 1.0, 3, 0.05), PatchGeometry::travelling(1.0, 1.0, -0.05)}) {
    const auto e = eliminate_speed(functional::BoundaryShape(g, f), {128, 128});
    CHECK(std::abs(e.residual.coeff(1)) <= 1e-14);
    CHECK(std::abs(e.speed_coefficient) > 0.5);
  }
}

TEST_CASE("eps = 0 is the point-vortex solution") {
  const auto g = PatchGeometry::corotating(1.2, 1.5, 4);
  const auto r = newton_solve(g, 0.0, FourierCosSeries(16), small_config());
  CHECK(r.f.is_zero());
  CHECK(r.speed == omega_star(1.2, 1.5, 4));
  CHECK(r.residual == 0.0);
}

TEST_CASE("Newton converges quadratically") {
  for (double a : {1.0, 1.5}) {
    for (auto g : {PatchGeometry::corotating(a, 1.0, 2), PatchGeometry::travelling(a, 1.0)}) {
      const auto r = newton_solve(g, 0.03, FourierCosSeries(16), small_config());
      CHECK(r.residual <= 1e-10);
      CHECK(r.iterations <= 8);
      CHECK(r.parity_leakage < 1e-10);
      CHECK(std::abs(r.first_sine) < 1e-12);
      CHECK(verify_record(g, r, {128, 128}) <= 1e-10);
      // Contraction e_{k+1} <= C e_k^2 once in the asymptotic regime.
      const auto& h = r.residual_history;
      REQUIRE(h.size() >= 3);
      for (size_t k = 1; k + 1 < h.size(); ++k) {
        if (h[k] < 1e-3 && h[k + 1] > 1e-13) CHECK(h[k + 1] <= 100.0 * h[k] * h[k]);
      }
      CHECK(std::abs(r.speed - g.ground_speed()) < 0.05 * std::abs(g.ground_speed()));
    }
  }
}

TEST_CASE("solutions are insensitive to truncation") {
  const auto g = PatchGeometry::corotating(1.5, 1.0, 3);
  auto c16 = small_config();
  SolverConfig c32;
  c32.quadrature = {256, 256};
  const auto r16 = newton_solve(g, 0.04, FourierCosSeries(16), c16);
  const auto r32 = newton_solve(g, 0.04, FourierCosSeries(32), c32);
  CHECK(std::abs(r16.speed - r32.speed) < 1e-8);
  CHECK(distance(r16.f.resized(32), r32.f) < 1e-8);
}

TEST_CASE("continuation follows the schedule") {
  auto c = small_config();
  c.schedule = {0.005, 0.01, 0.02, 0.04};
  const auto b = continue_branch(PatchGeometry::corotating(1.0, 1.0, 2), c);
  REQUIRE(b.records.size() == 4);
  CHECK_FALSE(b.failure);
  CHECK(b.last_converged_eps() == 0.04);
  for (size_t i = 1; i < b.records.size(); ++i) {
    CHECK(std::abs(b.records[i].f.coeff(2)) > std::abs(b.records[i - 1].f.coeff(2)));
  }
}

TEST_CASE("divergence stops the branch and is reported") {
  SolverConfig c;
  c.truncation = 8;
  c.quadrature = {64, 64};
  c.max_iterations = 6;
  const auto g = PatchGeometry::corotating(1.0, 1.0, 2);
  c.schedule = {0.01, 0.2, 0.9999};
  const auto b = continue_branch(g, c);
  REQUIRE(b.failure);
  CHECK(b.failure->eps == 0.9999);
  CHECK_FALSE(b.failure->message.empty());
  CHECK(b.last_converged_eps() == b.records.back().eps);
  CHECK(b.records.size() == 2);
  CHECK_THROWS_AS(newton_solve(g, 0.9999, b.records.back().f, c), std::exception);
}

TEST_CASE("reflection") {
  const SolverConfig c = small_config();
  for (double a : {1.0, 1.5}) {
    const auto g = PatchGeometry::corotating(a, 1.0, 2);
    const auto r = newton_solve(g, 0.03, FourierCosSeries(16), c);
    const auto once = reflect_solution(g, r, c.quadrature);
    const auto twice = reflect_solution(g, once, c.quadrature);
    CHECK(twice.eps == r.eps);
    CHECK(twice.f == r.f);
    CHECK(twice.speed == r.speed);
    CHECK(once.residual == verify_record(g, once, c.quadrature));
    // The half-turn image of the same patch is an exact solution at -eps.
    BranchRecord h = r;
    h.eps = -r.eps;
    h.f = half_turn(r.f);
    CHECK(verify_record(g, h, c.quadrature) <= 1e-10);
    // Solving from scratch at -eps lands on it.
    const auto s = newton_solve(g, -0.03, FourierCosSeries(16), c);
    CHECK(distance(s.f, h.f) < 1e-9);
    CHECK(s.speed == doctest::Approx(r.speed).epsilon(1e-10));
  }
}

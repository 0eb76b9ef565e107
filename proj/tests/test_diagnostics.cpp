#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "gsqg/diagnostics.hpp"
#include "gsqg/errors.hpp"

using namespace gsqg;
using namespace gsqg::diagnostics;
using functional::PatchGeometry;
using solver::BranchRecord;
using spectral::FourierCosSeries;
using std::numbers::pi;

namespace {

BranchRecord solved(const PatchGeometry& g, double eps) {
  solver::SolverConfig c;
  c.truncation = 16;
  c.quadrature = {128, 128};
  return solver::newton_solve(g, eps, FourierCosSeries(16), c);
}

}  // namespace

TEST_CASE("exponent fit recovers a power law") {
  std::vector<double> eps, sp;
  for (int i = 0; i < 12; ++i) {
    eps.push_back(0.005 * std::pow(10.0, i / 11.0));
    sp.push_back(-0.125 + 0.7 * std::pow(eps.back(), 1.5));
  }
  const auto f = exponent_fit(eps, sp, -0.125);
  CHECK(f.exponent == doctest::Approx(1.5).epsilon(1e-10));
  CHECK(f.log_prefactor == doctest::Approx(std::log(0.7)).epsilon(1e-8));
  CHECK(f.points_used == 6);

  std::mt19937 rng(42);
  std::uniform_real_distribution<double> noise(-0.01, 0.01);
  for (size_t i = 0; i < sp.size(); ++i) sp[i] = -0.125 + 0.7 * std::pow(eps[i], 2.0) * (1 + noise(rng));
  CHECK(exponent_fit(eps, sp, -0.125).exponent == doctest::Approx(2.0).epsilon(0.025));
}

TEST_CASE("exponent fit rejects insufficient data") {
  const std::vector<double> eps = {0.01, 0.02, 0.03, 0.04, 0.05};
  const std::vector<double> flat(5, 1.0);
  CHECK_THROWS_AS(exponent_fit(eps, flat, 1.0), DomainError);
  CHECK_THROWS_AS(exponent_fit(std::vector<double>{0.01, 0.02, 0.03}, std::vector<double>{1, 2, 3}, 0.0), DomainError);
  CHECK_THROWS_AS(exponent_fit(eps, std::vector<double>{1, 2}, 0.0), DomainError);
}

TEST_CASE("spectral decay") {
  FourierCosSeries f(32);
  for (int j = 2; j <= 32; ++j) f.set(j, std::pow(2.0, -j));
  const auto d = spectral_decay(f, 1e-6);
  CHECK(d.last_significant_mode == 19);
  REQUIRE(d.tail_ratio);
  CHECK(*d.tail_ratio == doctest::Approx(0.5).epsilon(1e-10));
  CHECK_FALSE(d.resolved);
  CHECK(spectral_decay(f, 1e-3).resolved);
  const auto z = spectral_decay(FourierCosSeries(8));
  CHECK(z.last_significant_mode == 0);
  CHECK(z.resolved);
}

TEST_CASE("a disk has unit scaled curvature") {
  BranchRecord r;
  r.eps = 0.1;
  r.f = FourierCosSeries(8);
  const auto c = curvature_profile(PatchGeometry::corotating(1.0, 1.0, 2), r, 64);
  CHECK(c.min == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(c.max_deviation < 1e-14);
}

TEST_CASE("reconstruction places the patches symmetrically") {
  const auto g = PatchGeometry::corotating(1.5, 2.0, 3);
  const auto r = solved(g, 0.03);
  const auto p = reconstruct(g, r, 64);
  REQUIRE(p.curves.size() == 3);
  for (int i = 0; i < 3; ++i) {
    const double th = 2 * pi * i / 3;
    CHECK(p.centres[i][0] == doctest::Approx(-2.0 * std::cos(th)));
    CHECK(p.centres[i][1] == doctest::Approx(-2.0 * std::sin(th)));
    CHECK(p.curves[i].strength == doctest::Approx(1.0 / (0.03 * 0.03)));
  }
  // Rotating patch 0 by 2 pi/3 gives patch 1.
  const auto q0 = p.curves[0].point(5), q1 = p.curves[1].point(5);
  const double c = std::cos(2 * pi / 3), s = std::sin(2 * pi / 3);
  CHECK(c * q0[0] - s * q0[1] == doctest::Approx(q1[0]).epsilon(1e-13));
  CHECK(s * q0[0] + c * q0[1] == doctest::Approx(q1[1]).epsilon(1e-13));
  CHECK_FALSE(has_intersections(p));
  const auto v = p.rigid_velocity({1.0, 0.0});
  CHECK(v[0] == 0.0);
  CHECK(v[1] == doctest::Approx(-r.speed));

  const auto t = PatchGeometry::travelling(1.0, 1.0);
  const auto pt = reconstruct(t, solved(t, 0.03), 64);
  REQUIRE(pt.curves.size() == 2);
  CHECK(pt.curves[0].strength == -pt.curves[1].strength);
  const auto a = pt.curves[0].point(7), b = pt.curves[1].point(7);
  CHECK(a[0] + b[0] == doctest::Approx(2.0));
  CHECK(a[1] + b[1] == doctest::Approx(0.0));
  CHECK(pt.rigid_velocity({3.0, 4.0})[1] == pt.speed);
}

TEST_CASE("converged solutions are steady under direct contour dynamics") {
  for (double a : {1.0, 1.5}) {
    for (auto g : {PatchGeometry::corotating(a, 1.0, 2), PatchGeometry::travelling(a, 1.0)}) {
      const auto r = solved(g, 0.04);
      const auto rep = normal_velocity_residual(g, r, 128);
      CHECK(rep.residual <= 1e-3);
      CHECK(rep.max_rigid_speed > 0.0);
      const auto c = curvature_profile(g, r, 128);
      CHECK(c.min > 0.0);
      CHECK(c.max_deviation < 0.5);
      CHECK(spectral_decay(r.f).resolved);
    }
  }
}

TEST_CASE("reconstruction rejects eps = 0") {
  BranchRecord r;
  r.f = FourierCosSeries(4);
  CHECK_THROWS_AS(reconstruct(PatchGeometry::corotating(1.0, 1.0, 2), r, 32), DomainError);
}

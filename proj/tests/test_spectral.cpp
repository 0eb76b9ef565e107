#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "gsqg/errors.hpp"
#include "gsqg/spectral.hpp"

using namespace gsqg;
using namespace gsqg::spectral;

TEST_CASE("zero series synthesizes to zeros") {
  const auto v = synthesize(FourierCosSeries(8), PeriodicGrid(64));
  for (double x : v) CHECK(x == 0.0);
}

TEST_CASE("single cosine mode samples cos(2x)") {
  FourierCosSeries f(2);
  f.set(2, 1.0);
  const PeriodicGrid g(12);
  const auto v = synthesize(f, g);
  for (int n = 0; n < 12; ++n) CHECK(v[n] == doctest::Approx(std::cos(2 * g.node(n))).epsilon(1e-15));
}

TEST_CASE("grid coarser than 4(J+1) is rejected") {
  FourierCosSeries f(2);
  f.set(2, 1.0);
  CHECK_THROWS_AS(synthesize(f, PeriodicGrid(8)), AliasingError);
}

TEST_CASE("synthesize/analyze round trip") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const int J = 24;
  FourierCosSeries f(J);
  FourierSinSeries g(J);
  for (int j = 1; j <= J; ++j) {
    if (j >= 2) f.set(j, u(rng) / j);
    g.set(j, u(rng) / j);
  }
  const PeriodicGrid grid(4 * (J + 1));
  const auto fe = analyze_even(synthesize(f, grid), J);
  const auto go = analyze_odd(synthesize(g, grid), J);
  for (int j = 1; j <= J; ++j) {
    CHECK(std::abs(fe.series.coeff(j) - f.coeff(j)) < 1e-13);
    CHECK(std::abs(go.series.coeff(j) - g.coeff(j)) < 1e-13);
  }
  CHECK(fe.leakage < 1e-13);
  CHECK(go.leakage < 1e-13);
  CHECK(fe.excluded_modes < 1e-13);
}

TEST_CASE("odd samples analyzed as even report their leakage") {
  const PeriodicGrid grid(64);
  std::vector<double> s(64);
  for (int n = 0; n < 64; ++n) s[n] = std::sin(3 * grid.node(n));
  const auto a = analyze(s, Parity::even, 8);
  CHECK(a.leakage == doctest::Approx(1.0).epsilon(1e-13));
  const auto& series = std::get<FourierCosSeries>(a.series);
  for (int j = 2; j <= 8; ++j) CHECK(std::abs(series.coeff(j)) < 1e-14);
}

TEST_CASE("analysis of an odd function is parity clean") {
  const PeriodicGrid grid(128);
  std::vector<double> s(128);
  for (int n = 0; n < 128; ++n) s[n] = std::sin(grid.node(n)) * std::exp(std::cos(grid.node(n)));
  const auto a = analyze_odd(s, 20);
  CHECK(a.leakage < 1e-14);
  CHECK(a.series.coeff(1) > 0.0);
}

TEST_CASE("half-offset grid nodes") {
  const PeriodicGrid g(8, true);
  CHECK(g.node(0) == doctest::Approx(std::numbers::pi / 8));
  CHECK(g.spacing() == doctest::Approx(std::numbers::pi / 4));
  const auto v = synthesize(FourierSinSeries(std::vector<double>{1.0}.size(), {1.0}), PeriodicGrid(8, true));
  CHECK(v[0] == doctest::Approx(std::sin(std::numbers::pi / 8)));
}

TEST_CASE("space norms") {
  FourierCosSeries f(4);
  f.set(2, 1.0);
  CHECK(space_norm(f, 0) == doctest::Approx(1.0));
  CHECK(space_norm(f, 1) == doctest::Approx(2.0));
  CHECK(space_norm(f, 1, NormWeight::log()) == doctest::Approx(2.0 * std::log(3.0)));
  CHECK(space_norm(f, 1, NormWeight::fractional(1.5)) == doctest::Approx(2.0 * std::sqrt(2.0)));
  FourierSinSeries g(3);
  g.set(1, 3.0);
  g.set(3, 4.0);
  CHECK(space_norm(g, 0) == doctest::Approx(5.0));
  CHECK(g.norm() == doctest::Approx(5.0));
  CHECK(g.norm_from_second() == doctest::Approx(4.0));
  CHECK_THROWS_AS(NormWeight::fractional(0.5), DomainError);
  CHECK_THROWS_AS(space_norm(f, -1), DomainError);
}

TEST_CASE("series validation and arithmetic") {
  FourierCosSeries f(5);
  CHECK_THROWS_AS(f.set(1, 1.0), DomainError);
  CHECK_THROWS_AS(f.set(6, 1.0), DomainError);
  CHECK_THROWS_AS(f.set(3, std::nan("")), DomainError);
  CHECK_THROWS_AS(FourierCosSeries(1), DomainError);
  CHECK_THROWS_AS(FourierCosSeries(4, {1.0, 2.0}), DomainError);
  f.set(3, 2.0);
  CHECK(f.coeff(40) == 0.0);
  CHECK(f.reflected() == f);
  const auto g = f + 0.5 * f;
  CHECK(g.coeff(3) == 3.0);
  const auto r = f.resized(8);
  CHECK(r.truncation() == 8);
  CHECK(r.coeff(3) == 2.0);
  CHECK(f.value(0.3) == doctest::Approx(2.0 * std::cos(0.9)));
  CHECK(f.derivative(0.3) == doctest::Approx(-6.0 * std::sin(0.9)));
  CHECK(f.second_derivative(0.3) == doctest::Approx(-18.0 * std::cos(0.9)));
}

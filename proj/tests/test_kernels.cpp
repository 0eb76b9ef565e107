#include <doctest.h>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <numbers>
#include <sstream>

#include "gsqg/errors.hpp"
#include "gsqg/kernels.hpp"

using namespace gsqg;
using namespace gsqg::kernels;
using std::numbers::pi;

namespace {
double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }
}  // namespace

TEST_CASE("Riesz constant") {
  CHECK(std::abs(riesz_constant(1.0) - 1.0) <= 1e-15);
  // Reference values from 30-digit evaluation of the Gamma-ratio definition.
  CHECK(rel(riesz_constant(0.5), 2.0920992401062033) < 1e-14);
  CHECK(rel(riesz_constant(1.5), 0.47798879748612500) < 1e-14);
  for (double a : {0.0, 2.0, 2.5, -1.0}) CHECK_THROWS_AS(riesz_constant(a), DomainError);
}

TEST_CASE("Gamma function") {
  // Reference values from 30-digit evaluation.
  CHECK(rel(gamma_function(0.25), 3.6256099082219083) < 1e-14);
  CHECK(rel(gamma_function(1.75), 0.91906252684888323) < 1e-14);
  CHECK(rel(gamma_function(-1.5), 2.3632718012073547) < 1e-14);
  for (double x : {0.1, 0.3, 0.45, 0.7}) {
    CHECK(rel(gamma_function(x) * gamma_function(1.0 - x), pi / std::sin(pi * x)) < 1e-14);
  }
  // Euler's integral by double-exponential quadrature.
  boost::math::quadrature::exp_sinh<double> es;
  const double x = 3.3;
  const double euler = es.integrate([x](double t) { return std::pow(t, x - 1.0) * std::exp(-t); });
  CHECK(rel(gamma_function(x), euler) < 1e-12);
  CHECK_THROWS_AS(gamma_function(-2.0), DomainError);
  CHECK_THROWS_AS(gamma_function(0.0), DomainError);
}

TEST_CASE("beta multipliers at alpha = 1") {
  CHECK(beta_multiplier(1.0, 1) == doctest::Approx(8.0).epsilon(1e-15));
  CHECK(beta_multiplier(1.0, 2) == doctest::Approx(32.0 / 3.0).epsilon(1e-15));
  CHECK(beta_multiplier(1.0, 3) == doctest::Approx(184.0 / 15.0).epsilon(1e-15));
}

TEST_CASE("beta multipliers against quadrature references") {
  // 30-digit adaptive quadrature of the defining integral.
  struct Case {
    double alpha;
    int j;
    double value;
  };
  const Case cases[] = {{0.5, 1, 6.9921534781123195},  {0.5, 2, 7.9910325464140794},
                        {0.5, 16, 9.6020573481166668}, {1.5, 1, 9.5851218778847377},
                        {1.5, 2, 15.33619500461558},   {1.5, 3, 19.809251880961791},
                        {1.5, 16, 51.929422110730286}, {1.2, 3, 14.638352362936346},
                        {1.2, 16, 27.213235625253454}};
  for (const auto& c : cases) {
    CAPTURE(c.alpha);
    CAPTURE(c.j);
    CHECK(rel(beta_multiplier(c.alpha, c.j), c.value) < 1e-13);
  }
  boost::math::quadrature::tanh_sinh<double> ts;
  for (double a : {0.3, 0.99, 1.01, 1.7}) {
    for (int j : {1, 5, 11}) {
      const double q = ts.integrate(
          [a, j](double y) {
            const double s = std::sin(y / 2);
            return s > 1e-100 ? (1 - std::cos(j * y)) / std::pow(s, a) : 0.0;
          },
          0.0, 2 * pi);
      CHECK(rel(beta_multiplier(a, j), q) < 1e-9);
    }
  }
}

TEST_CASE("beta is continuous through alpha = 1") {
  for (int j : {1, 4, 30}) {
    CHECK(rel(beta_multiplier(1.0 + 1e-9, j), beta_multiplier(1.0, j)) < 1e-7);
    CHECK(rel(beta_multiplier(1.0 - 1e-9, j), beta_multiplier(1.0, j)) < 1e-7);
  }
}

TEST_CASE("gamma multipliers") {
  CHECK(rel(gamma_multiplier(1.0, 2).value, 2.0 / (3.0 * pi)) < 1e-15);
  CHECK(rel(gamma_multiplier(1.0, 3).value, 16.0 / (15.0 * pi)) < 1e-15);
  // gamma_j j from quadrature of the linearized operator (30 digits).
  struct Case {
    double alpha;
    int j;
    double value;
  };
  const Case cases[] = {{1.0, 5, 2.5060587864628599},  {1.5, 2, 0.3093654015156564},
                        {1.5, 3, 0.8249744040417504},  {1.5, 5, 2.3330724096203348},
                        {1.2, 2, 0.39103022176098967}, {1.2, 5, 2.5354232293326202}};
  for (const auto& c : cases) {
    CAPTURE(c.alpha);
    CAPTURE(c.j);
    CHECK(rel(gamma_multiplier(c.alpha, c.j).value * c.j, c.value) < 1e-12);
  }
  CHECK(rel(gamma_multiplier(1.0 + 1e-9, 7).value, gamma_multiplier(1.0, 7).value) < 1e-7);
  CHECK_THROWS_AS(gamma_multiplier(0.5, 3), DomainError);
  CHECK_THROWS_AS(gamma_multiplier(1.0, 1), DomainError);
  CHECK_THROWS_AS(gamma_multiplier(2.0, 3), DomainError);
}

TEST_CASE("gamma multipliers increase and follow their growth law") {
  for (double a : {1.0, 1.2, 1.5, 1.9}) {
    CAPTURE(a);
    for (int j = 3; j <= 64; ++j) CHECK(gamma_multiplier(a, j).value > gamma_multiplier(a, j - 1).value);
    if (a > 1.0) {
      // gamma_j / j^{alpha-1} = A + B j^{1-alpha} + ...: successive differences
      // over doublings of j shrink by 2^{1-alpha}.
      const double p1 = gamma_multiplier(a, 1000).asymptotic_proxy, p2 = gamma_multiplier(a, 2000).asymptotic_proxy,
                   p3 = gamma_multiplier(a, 4000).asymptotic_proxy;
      CHECK((p3 - p2) / (p2 - p1) == doctest::Approx(std::pow(2.0, 1.0 - a)).epsilon(0.02));
    }
  }
  // gamma_j / ln j -> 1/pi at alpha = 1, from below.
  double prev = gamma_multiplier(1.0, 10).asymptotic_proxy;
  for (int j : {100, 1000, 10000, 100000}) {
    const double p = gamma_multiplier(1.0, j).asymptotic_proxy;
    CHECK(p > prev);
    CHECK(p < 1.0 / pi);
    prev = p;
  }
}

TEST_CASE("multiplier table and CSV") {
  const MultiplierTable t(1.0, 16);
  CHECK(t.beta(1) == 8.0);
  CHECK(t.gamma(2) == gamma_multiplier(1.0, 2).value);
  std::ostringstream os;
  t.write_csv(os);
  std::istringstream is(os.str());
  std::string header, first;
  std::getline(is, header);
  std::getline(is, first);
  CHECK(header == "j,beta_j,gamma_j");
  CHECK(first == "1,8,");
  const MultiplierTable low(0.5, 4);
  CHECK_FALSE(low.has_gamma());
  CHECK_THROWS_AS(low.gamma(2), DomainError);
  CHECK_THROWS_AS(t.beta(17), DomainError);
}

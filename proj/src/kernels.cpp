#include "gsqg/kernels.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <string>

#include "gsqg/errors.hpp"
#include "gsqg/format.hpp"

namespace gsqg::kernels {
namespace {

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 2.0)) {
    throw DomainError("alpha=" + format_double(alpha) + " outside the admissible domain (0,2)");
  }
}

// Sum_{k=k0}^{j-1} Gamma(k+a/2) / Gamma(k+2-a/2), accumulated through the ratio
// r_k = Gamma(k+a/2)/Gamma(k+1-a/2), which obeys r_{k+1} = r_k (k+a/2)/(k+1-a/2).
// This is the telescoped form of the Gamma-ratio closed form and stays accurate
// through alpha = 1, where the closed form has a removable 0/0.
double ratio_sum(double alpha, int k0, int j) {
  const double h = 0.5 * alpha;
  double r = std::tgamma(h) / std::tgamma(1.0 - h);
  double sum = 0.0;
  for (int k = 0; k < j; ++k) {
    if (k >= k0) sum += r / (k + 1.0 - h);
    r *= (k + h) / (k + 1.0 - h);
  }
  return sum;
}

}  // namespace

double gamma_function(double x) {
  if (!std::isfinite(x)) throw DomainError("Gamma argument must be finite");
  if (x <= 0.0 && x == std::floor(x)) throw DomainError("Gamma has a pole at " + format_double(x));
  return std::tgamma(x);
}

double riesz_constant(double alpha) {
  check_alpha(alpha);
  return std::tgamma(0.5 * alpha) / (std::pow(2.0, 1.0 - alpha) * std::tgamma(1.0 - 0.5 * alpha));
}

double beta_multiplier(double alpha, int j) {
  check_alpha(alpha);
  if (j < 1) throw DomainError("beta_j needs j >= 1");
  if (alpha == 1.0) {
    double s = 0.0;
    for (int i = 1; i <= j; ++i) s += 8.0 / (2.0 * i - 1.0);
    return s;
  }
  const double h = 0.5 * alpha;
  const double pref =
      std::pow(2.0, alpha + 1.0) * std::numbers::pi * std::tgamma(2.0 - alpha) / (std::tgamma(h) * std::tgamma(1.0 - h));
  return pref * ratio_sum(alpha, 0, j);
}

GammaMultiplier gamma_multiplier(double alpha, int j) {
  if (!(alpha >= 1.0 && alpha < 2.0)) {
    throw DomainError("gamma_j is defined for alpha in [1,2); got alpha=" + format_double(alpha));
  }
  if (j < 2) throw DomainError("gamma_j needs j >= 2");
  double value;
  if (alpha == 1.0) {
    double s = 0.0;
    for (int i = 2; i <= j; ++i) s += 1.0 / (2.0 * i - 1.0);
    value = 2.0 / std::numbers::pi * s;
  } else {
    const double h = 0.5 * alpha;
    const double g = std::tgamma(1.0 - h);
    value = std::pow(2.0, alpha - 1.0) * std::tgamma(2.0 - alpha) / (g * g) * ratio_sum(alpha, 1, j);
  }
  const double proxy = alpha == 1.0 ? value / std::log(static_cast<double>(j))
                                    : value / std::pow(static_cast<double>(j), alpha - 1.0);
  return {value, proxy};
}

MultiplierTable::MultiplierTable(double alpha, int truncation) : alpha_(alpha), truncation_(truncation) {
  check_alpha(alpha);
  if (truncation < 1) throw DomainError("multiplier table needs J >= 1");
  beta_.reserve(static_cast<size_t>(truncation));
  for (int j = 1; j <= truncation; ++j) beta_.push_back(beta_multiplier(alpha, j));
  if (alpha >= 1.0) {
    for (int j = 2; j <= truncation; ++j) gamma_.push_back(gamma_multiplier(alpha, j).value);
  }
}

double MultiplierTable::beta(int j) const {
  if (j < 1 || j > truncation_) throw DomainError("beta index outside [1, J]");
  return beta_[static_cast<size_t>(j - 1)];
}

double MultiplierTable::gamma(int j) const {
  if (!has_gamma()) throw DomainError("gamma_j undefined for alpha < 1");
  if (j < 2 || j > truncation_) throw DomainError("gamma index outside [2, J]");
  return gamma_[static_cast<size_t>(j - 2)];
}

void MultiplierTable::write_csv(std::ostream& os) const {
  os << "j,beta_j,gamma_j\n";
  for (int j = 1; j <= truncation_; ++j) {
    os << j << ',' << format_double(beta(j)) << ',';
    if (has_gamma() && j >= 2) os << format_double(gamma(j));
    os << '\n';
  }
}

}  // namespace gsqg::kernels

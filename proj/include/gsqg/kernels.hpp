#pragma once
// Riesz-kernel constants and the Fourier multipliers of the linearized
// contour-dynamics operator.

#include <iosfwd>
#include <vector>

namespace gsqg::kernels {

/// Euler Gamma function (std::tgamma), rejecting poles and non-finite input.
double gamma_function(double x);

/// C_alpha = Gamma(alpha/2) / (2^{1-alpha} Gamma(1 - alpha/2)),  alpha in (0,2).
double riesz_constant(double alpha);

/// beta_j = int_0^{2pi} (1 - cos(j y)) / sin(y/2)^alpha dy,  alpha in (0,2), j >= 1.
double beta_multiplier(double alpha, int j);

struct GammaMultiplier {
  double value;
  /// gamma_j / ln j at alpha = 1, gamma_j / j^{alpha-1} otherwise.
  double asymptotic_proxy;
};

/// Multiplier gamma_j with  d/df G(0,Omega,0)[cos(j.)] = gamma_j j sin(j.),
/// alpha in [1,2), j >= 2.
GammaMultiplier gamma_multiplier(double alpha, int j);

/// beta_j for j = 1..J and gamma_j for j = 2..J (gamma only when alpha in [1,2)).
class MultiplierTable {
 public:
  MultiplierTable(double alpha, int truncation);

  double alpha() const noexcept { return alpha_; }
  int truncation() const noexcept { return truncation_; }
  bool has_gamma() const noexcept { return !gamma_.empty(); }
  double beta(int j) const;
  double gamma(int j) const;

  /// Columns j, beta_j, gamma_j; gamma_j is left empty where undefined.
  void write_csv(std::ostream& os) const;

 private:
  double alpha_;
  int truncation_;
  std::vector<double> beta_;   // beta_[j-1]
  std::vector<double> gamma_;  // gamma_[j-2]
};

}  // namespace gsqg::kernels

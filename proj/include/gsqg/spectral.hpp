#pragma once
// Even/odd Fourier series on the torus, uniform grids and the discrete transforms
// between them.  Every transform is a direct sum over an exact index table, so
// results are reproducible bit for bit.

#include <span>
#include <variant>
#include <vector>

namespace gsqg::spectral {

inline constexpr int kDefaultTruncation = 64;
inline constexpr int kDefaultGridSize = 512;

/// f(x) = sum_{j=2}^{J} a_j cos(j x).  Modes 0 and 1 are excluded by construction.
class FourierCosSeries {
 public:
  FourierCosSeries() : FourierCosSeries(kDefaultTruncation) {}
  explicit FourierCosSeries(int truncation);
  /// coeffs holds a_2..a_J (size J-1).
  FourierCosSeries(int truncation, std::vector<double> coeffs);

  int truncation() const noexcept { return truncation_; }
  /// a_j; zero for any j outside [2, J].
  double coeff(int j) const noexcept;
  void set(int j, double value);
  std::span<const double> coefficients() const noexcept { return a_; }

  double value(double x) const noexcept;
  double derivative(double x) const noexcept;
  double second_derivative(double x) const noexcept;
  bool is_zero() const noexcept;

  /// Same series re-truncated at a new J (extra modes are zero, dropped modes are lost).
  FourierCosSeries resized(int truncation) const;
  /// x -> f(-x).  Identity for a cosine series; kept explicit for call sites.
  FourierCosSeries reflected() const { return *this; }

  FourierCosSeries& operator+=(const FourierCosSeries& o);
  FourierCosSeries& operator*=(double s);
  friend FourierCosSeries operator+(FourierCosSeries a, const FourierCosSeries& b) { return a += b; }
  friend FourierCosSeries operator*(double s, FourierCosSeries a) { return a *= s; }
  friend bool operator==(const FourierCosSeries&, const FourierCosSeries&) = default;

 private:
  int truncation_;
  std::vector<double> a_;  // a_[j-2]
};

/// g(x) = sum_{j=1}^{J} b_j sin(j x).
class FourierSinSeries {
 public:
  FourierSinSeries() : FourierSinSeries(kDefaultTruncation) {}
  explicit FourierSinSeries(int truncation);
  /// coeffs holds b_1..b_J (size J).
  FourierSinSeries(int truncation, std::vector<double> coeffs);

  int truncation() const noexcept { return truncation_; }
  double coeff(int j) const noexcept;
  void set(int j, double value);
  std::span<const double> coefficients() const noexcept { return b_; }

  double value(double x) const noexcept;
  /// Euclidean norm of (b_1..b_J).
  double norm() const noexcept;
  /// Euclidean norm of (b_2..b_J): the equations the Newton solver drives to zero.
  double norm_from_second() const noexcept;

  FourierSinSeries& operator+=(const FourierSinSeries& o);
  FourierSinSeries& operator-=(const FourierSinSeries& o);
  FourierSinSeries& operator*=(double s);
  friend FourierSinSeries operator+(FourierSinSeries a, const FourierSinSeries& b) { return a += b; }
  friend FourierSinSeries operator-(FourierSinSeries a, const FourierSinSeries& b) { return a -= b; }
  friend FourierSinSeries operator*(double s, FourierSinSeries a) { return a *= s; }
  friend bool operator==(const FourierSinSeries&, const FourierSinSeries&) = default;

 private:
  int truncation_;
  std::vector<double> b_;  // b_[j-1]
};

/// x_n = 2 pi n / N, or (n + 1/2) 2 pi / N when half_offset.
class PeriodicGrid {
 public:
  explicit PeriodicGrid(int size, bool half_offset = false);
  int size() const noexcept { return size_; }
  bool half_offset() const noexcept { return half_offset_; }
  double spacing() const noexcept;
  double node(int n) const noexcept;
  std::vector<double> nodes() const;

 private:
  int size_;
  bool half_offset_;
};

enum class Parity { even, odd };

/// Samples a series on a grid.  Throws AliasingError unless N >= 4(J+1).
std::vector<double> synthesize(const FourierCosSeries& f, const PeriodicGrid& grid);
std::vector<double> synthesize(const FourierSinSeries& g, const PeriodicGrid& grid);

struct EvenAnalysis {
  FourierCosSeries series;
  double leakage;         // max |sine coefficient| found in the samples
  double excluded_modes;  // max(|a_0|, |a_1|), which a FourierCosSeries cannot hold
};

struct OddAnalysis {
  FourierSinSeries series;
  double leakage;  // max |cosine coefficient| (including the mean)
};

/// Discrete projection of samples on the unshifted grid of size samples.size().
EvenAnalysis analyze_even(std::span<const double> samples, int truncation);
OddAnalysis analyze_odd(std::span<const double> samples, int truncation);

struct Analysis {
  std::variant<FourierCosSeries, FourierSinSeries> series;
  double leakage;
};
Analysis analyze(std::span<const double> samples, Parity parity, int truncation);

/// Weight of the space norm: plain |j|^k, log(1+j) or j^{alpha-1}.
struct NormWeight {
  enum class Kind { plain, log, fractional };
  Kind kind = Kind::plain;
  double alpha = 0.0;

  static NormWeight plain() { return {}; }
  static NormWeight log() { return {Kind::log, 0.0}; }
  static NormWeight fractional(double alpha);
  double operator()(int j) const;
};

/// ( sum_j (weight(j) j^k |c_j|)^2 )^{1/2}
double space_norm(const FourierCosSeries& f, int k, NormWeight weight = NormWeight::plain());
double space_norm(const FourierSinSeries& g, int k, NormWeight weight = NormWeight::plain());

}  // namespace gsqg::spectral

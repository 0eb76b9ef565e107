#include "gsqg/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "gsqg/errors.hpp"

namespace gsqg::spectral {
namespace {

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw DomainError(std::string(what) + " must be finite");
}

// sin/cos of 2 pi i / (2N), i in [0, 2N).  Indices are reduced exactly, so
// symmetric nodes receive bitwise symmetric values.
struct TrigTable {
  explicit TrigTable(int n) : period(2 * n), s(period), c(period) {
    for (int i = 0; i < period; ++i) {
      const double t = std::numbers::pi * i / n;
      s[i] = std::sin(t);
      c[i] = std::cos(t);
    }
    // Exact zeros/ones at the quarter points.
    s[0] = 0.0;
    c[0] = 1.0;
    if (period % 2 == 0) {
      s[period / 2] = 0.0;
      c[period / 2] = -1.0;
    }
    if (period % 4 == 0) {
      s[period / 4] = 1.0;
      c[period / 4] = 0.0;
      s[3 * period / 4] = -1.0;
      c[3 * period / 4] = 0.0;
    }
  }
  // Phase index of k * x_n.
  int index(int k, int n, bool half_offset) const {
    const long long twice = 2LL * n + (half_offset ? 1 : 0);
    return static_cast<int>((static_cast<long long>(k) * twice) % period);
  }
  int period;
  std::vector<double> s, c;
};

void check_grid(int truncation, const PeriodicGrid& grid) {
  if (grid.size() < 4 * (truncation + 1)) {
    throw AliasingError("grid of " + std::to_string(grid.size()) + " nodes cannot resolve truncation J=" +
                        std::to_string(truncation) + " (need N >= 4(J+1))");
  }
}

}  // namespace

// ---------------------------------------------------------------- cosine series

FourierCosSeries::FourierCosSeries(int truncation) : truncation_(truncation) {
  if (truncation < 2) throw DomainError("cosine truncation J must be at least 2");
  a_.assign(static_cast<size_t>(truncation - 1), 0.0);
}

FourierCosSeries::FourierCosSeries(int truncation, std::vector<double> coeffs)
    : FourierCosSeries(truncation) {
  if (coeffs.size() != a_.size()) throw DomainError("cosine coefficient count must equal J-1");
  for (double v : coeffs) require_finite(v, "cosine coefficient");
  a_ = std::move(coeffs);
}

double FourierCosSeries::coeff(int j) const noexcept {
  return (j < 2 || j > truncation_) ? 0.0 : a_[static_cast<size_t>(j - 2)];
}

void FourierCosSeries::set(int j, double value) {
  if (j < 2 || j > truncation_) throw DomainError("cosine mode " + std::to_string(j) + " outside [2, J]");
  require_finite(value, "cosine coefficient");
  a_[static_cast<size_t>(j - 2)] = value;
}

double FourierCosSeries::value(double x) const noexcept {
  double v = 0.0;
  for (int j = 2; j <= truncation_; ++j) v += a_[j - 2] * std::cos(j * x);
  return v;
}

double FourierCosSeries::derivative(double x) const noexcept {
  double v = 0.0;
  for (int j = 2; j <= truncation_; ++j) v -= j * a_[j - 2] * std::sin(j * x);
  return v;
}

double FourierCosSeries::second_derivative(double x) const noexcept {
  double v = 0.0;
  for (int j = 2; j <= truncation_; ++j) v -= double(j) * j * a_[j - 2] * std::cos(j * x);
  return v;
}

bool FourierCosSeries::is_zero() const noexcept {
  return std::all_of(a_.begin(), a_.end(), [](double v) { return v == 0.0; });
}

FourierCosSeries FourierCosSeries::resized(int truncation) const {
  FourierCosSeries out(truncation);
  for (int j = 2; j <= std::min(truncation, truncation_); ++j) out.a_[j - 2] = a_[j - 2];
  return out;
}

FourierCosSeries& FourierCosSeries::operator+=(const FourierCosSeries& o) {
  if (o.truncation_ != truncation_) throw DomainError("cosine series truncations differ");
  for (size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
  return *this;
}

FourierCosSeries& FourierCosSeries::operator*=(double s) {
  for (double& v : a_) v *= s;
  return *this;
}

// ------------------------------------------------------------------ sine series

FourierSinSeries::FourierSinSeries(int truncation) : truncation_(truncation) {
  if (truncation < 1) throw DomainError("sine truncation J must be at least 1");
  b_.assign(static_cast<size_t>(truncation), 0.0);
}

FourierSinSeries::FourierSinSeries(int truncation, std::vector<double> coeffs)
    : FourierSinSeries(truncation) {
  if (coeffs.size() != b_.size()) throw DomainError("sine coefficient count must equal J");
  for (double v : coeffs) require_finite(v, "sine coefficient");
  b_ = std::move(coeffs);
}

double FourierSinSeries::coeff(int j) const noexcept {
  return (j < 1 || j > truncation_) ? 0.0 : b_[static_cast<size_t>(j - 1)];
}

void FourierSinSeries::set(int j, double value) {
  if (j < 1 || j > truncation_) throw DomainError("sine mode " + std::to_string(j) + " outside [1, J]");
  require_finite(value, "sine coefficient");
  b_[static_cast<size_t>(j - 1)] = value;
}

double FourierSinSeries::value(double x) const noexcept {
  double v = 0.0;
  for (int j = 1; j <= truncation_; ++j) v += b_[j - 1] * std::sin(j * x);
  return v;
}

double FourierSinSeries::norm() const noexcept {
  double s = 0.0;
  for (double v : b_) s += v * v;
  return std::sqrt(s);
}

double FourierSinSeries::norm_from_second() const noexcept {
  double s = 0.0;
  for (size_t i = 1; i < b_.size(); ++i) s += b_[i] * b_[i];
  return std::sqrt(s);
}

FourierSinSeries& FourierSinSeries::operator+=(const FourierSinSeries& o) {
  if (o.truncation_ != truncation_) throw DomainError("sine series truncations differ");
  for (size_t i = 0; i < b_.size(); ++i) b_[i] += o.b_[i];
  return *this;
}

FourierSinSeries& FourierSinSeries::operator-=(const FourierSinSeries& o) {
  if (o.truncation_ != truncation_) throw DomainError("sine series truncations differ");
  for (size_t i = 0; i < b_.size(); ++i) b_[i] -= o.b_[i];
  return *this;
}

FourierSinSeries& FourierSinSeries::operator*=(double s) {
  for (double& v : b_) v *= s;
  return *this;
}

// ------------------------------------------------------------------------- grid

PeriodicGrid::PeriodicGrid(int size, bool half_offset) : size_(size), half_offset_(half_offset) {
  if (size < 1) throw DomainError("grid size must be positive");
}

double PeriodicGrid::spacing() const noexcept { return 2.0 * std::numbers::pi / size_; }

double PeriodicGrid::node(int n) const noexcept {
  return (n + (half_offset_ ? 0.5 : 0.0)) * spacing();
}

std::vector<double> PeriodicGrid::nodes() const {
  std::vector<double> x(static_cast<size_t>(size_));
  for (int n = 0; n < size_; ++n) x[n] = node(n);
  return x;
}

// ------------------------------------------------------------------- transforms

std::vector<double> synthesize(const FourierCosSeries& f, const PeriodicGrid& grid) {
  check_grid(f.truncation(), grid);
  const TrigTable t(grid.size());
  std::vector<double> out(static_cast<size_t>(grid.size()), 0.0);
  for (int n = 0; n < grid.size(); ++n) {
    double v = 0.0;
    for (int j = 2; j <= f.truncation(); ++j) v += f.coeff(j) * t.c[t.index(j, n, grid.half_offset())];
    out[n] = v;
  }
  return out;
}

std::vector<double> synthesize(const FourierSinSeries& g, const PeriodicGrid& grid) {
  check_grid(g.truncation(), grid);
  const TrigTable t(grid.size());
  std::vector<double> out(static_cast<size_t>(grid.size()), 0.0);
  for (int n = 0; n < grid.size(); ++n) {
    double v = 0.0;
    for (int j = 1; j <= g.truncation(); ++j) v += g.coeff(j) * t.s[t.index(j, n, grid.half_offset())];
    out[n] = v;
  }
  return out;
}

namespace {

struct RawDft {
  std::vector<double> a;  // a_0..a_{N/2}
  std::vector<double> b;  // b_0..b_{N/2}, b_0 = 0
};

RawDft raw_dft(std::span<const double> s) {
  const int n = static_cast<int>(s.size());
  const TrigTable t(n);
  const int kmax = n / 2;
  RawDft r{std::vector<double>(kmax + 1, 0.0), std::vector<double>(kmax + 1, 0.0)};
  for (int k = 0; k <= kmax; ++k) {
    double ca = 0.0, sb = 0.0;
    for (int i = 0; i < n; ++i) {
      const int idx = t.index(k, i, false);
      ca += s[i] * t.c[idx];
      sb += s[i] * t.s[idx];
    }
    const bool edge = (k == 0) || (2 * k == n);
    r.a[k] = ca * (edge ? 1.0 : 2.0) / n;
    r.b[k] = edge ? 0.0 : sb * 2.0 / n;
  }
  return r;
}

void check_samples(std::span<const double> s, int truncation) {
  for (double v : s) require_finite(v, "sample");
  if (static_cast<int>(s.size()) < 2 * (truncation + 1)) {
    throw AliasingError("too few samples (" + std::to_string(s.size()) + ") for truncation J=" +
                        std::to_string(truncation));
  }
}

}  // namespace

EvenAnalysis analyze_even(std::span<const double> samples, int truncation) {
  check_samples(samples, truncation);
  const RawDft r = raw_dft(samples);
  EvenAnalysis out{FourierCosSeries(truncation), 0.0, 0.0};
  for (int j = 2; j <= truncation; ++j) out.series.set(j, r.a[j]);
  for (double v : r.b) out.leakage = std::max(out.leakage, std::abs(v));
  out.excluded_modes = std::max(std::abs(r.a[0]), r.a.size() > 1 ? std::abs(r.a[1]) : 0.0);
  return out;
}

OddAnalysis analyze_odd(std::span<const double> samples, int truncation) {
  check_samples(samples, truncation);
  const RawDft r = raw_dft(samples);
  OddAnalysis out{FourierSinSeries(truncation), 0.0};
  for (int j = 1; j <= truncation; ++j) out.series.set(j, r.b[j]);
  for (double v : r.a) out.leakage = std::max(out.leakage, std::abs(v));
  return out;
}

Analysis analyze(std::span<const double> samples, Parity parity, int truncation) {
  if (parity == Parity::even) {
    auto e = analyze_even(samples, truncation);
    return {std::move(e.series), e.leakage};
  }
  auto o = analyze_odd(samples, truncation);
  return {std::move(o.series), o.leakage};
}

// ------------------------------------------------------------------------ norms

NormWeight NormWeight::fractional(double alpha) {
  if (!(alpha > 1.0 && alpha < 2.0)) throw DomainError("fractional norm weight needs alpha in (1,2)");
  return {Kind::fractional, alpha};
}

double NormWeight::operator()(int j) const {
  switch (kind) {
    case Kind::log: return std::log1p(static_cast<double>(j));
    case Kind::fractional: return std::pow(static_cast<double>(j), alpha - 1.0);
    case Kind::plain: break;
  }
  return 1.0;
}

namespace {
template <class Series>
double weighted_norm(const Series& s, int first, int k, const NormWeight& w) {
  if (k < 0) throw DomainError("norm order k must be non-negative");
  double acc = 0.0;
  for (int j = first; j <= s.truncation(); ++j) {
    const double term = w(j) * std::pow(static_cast<double>(j), k) * std::abs(s.coeff(j));
    acc += term * term;
  }
  return std::sqrt(acc);
}
}  // namespace

double space_norm(const FourierCosSeries& f, int k, NormWeight weight) { return weighted_norm(f, 2, k, weight); }
double space_norm(const FourierSinSeries& g, int k, NormWeight weight) { return weighted_norm(g, 1, k, weight); }

}  // namespace gsqg::spectral

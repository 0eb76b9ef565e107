#include "gsqg/functional.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "gsqg/errors.hpp"
#include "gsqg/kernels.hpp"

namespace gsqg::functional {
namespace {

constexpr double kPi = std::numbers::pi;

// Values of f and f' (and of a direction h) at a set of nodes.
void sample_series(const spectral::FourierCosSeries& f, const std::vector<double>& x, std::vector<double>& v,
                   std::vector<double>& dv) {
  v.assign(x.size(), 0.0);
  dv.assign(x.size(), 0.0);
  for (size_t i = 0; i < x.size(); ++i) {
    double s = 0.0, ds = 0.0;
    for (int j = 2; j <= f.truncation(); ++j) {
      const double a = f.coeff(j);
      if (a == 0.0) continue;
      s += a * std::cos(j * x[i]);
      ds -= j * a * std::sin(j * x[i]);
    }
    v[i] = s;
    dv[i] = ds;
  }
}

}  // namespace

struct ResidualOperator::Samples {
  std::vector<double> x, cx, sx;        // outer nodes
  std::vector<double> F, Fp, H, Hp;     // f, f' (and h, h') at outer nodes
  bool aligned = false;                 // inner nodes of every x_n lie on one fine grid
  std::vector<double> y, Ft, Ftp, Ht, Htp, cy, sy;  // fine grid (aligned) values
};

ResidualOperator::ResidualOperator(const PatchGeometry& family, const QuadratureScheme& scheme)
    : family_(family), scheme_(scheme) {
  const int m = scheme.inner_nodes;
  if (m < 8) throw DomainError("inner quadrature needs at least 8 nodes");
  if (scheme.outer_nodes < 4) throw DomainError("outer grid needs at least 4 nodes");
  const double h = 2.0 * kPi / m;
  const double alpha = family.alpha();
  sin_s_.resize(m);
  cos_s_.resize(m);
  sig2_.resize(m);
  weight_.assign(m, 0.0);
  for (int k = 0; k < m; ++k) {
    const double s = -(k + 0.5) * h;  // s = x - y
    sin_s_[k] = std::sin(s);
    cos_s_[k] = std::cos(s);
    sig2_[k] = 2.0 * std::sin(0.5 * s);
  }
  if (scheme.rule == SingularRule::plain) {
    for (int k = 0; k < m; ++k) weight_[k] = std::pow(std::abs(sig2_[k]), -alpha) / m;
  } else {
    // Product-integration weights: exact for trigonometric polynomials of degree
    // < M/2, using the finite-part moments
    //   mean_s (cos(ks) - 1) |2 sin(s/2)|^{-alpha} = -2^{-alpha} beta_k / (2 pi).
    const int kmax = (m - 1) / 2;
    if (kmax >= 1) {
      const kernels::MultiplierTable table(alpha, kmax);
      // cos(k (j + 1/2) h) through an exact phase index modulo 2M.
      std::vector<double> ctab(2 * m);
      for (int i = 0; i < 2 * m; ++i) ctab[i] = std::cos(kPi * i / m);
      for (int k = 1; k <= kmax; ++k) {
        const double mu = -std::pow(2.0, -alpha) * table.beta(k) / (2.0 * kPi);
        for (int j = 0; j < m; ++j) {
          const long long phase = (static_cast<long long>(k) * (2 * j + 1)) % (2 * m);
          weight_[j] += 2.0 * mu * ctab[phase];
        }
      }
      for (double& w : weight_) w /= m;
    }
  }
  for (const Image& img : family.images()) {
    std::vector<double> si(m), ci(m);
    for (int k = 0; k < m; ++k) {
      const double s = -(k + 0.5) * h - img.angle;
      si[k] = std::sin(s);
      ci[k] = std::cos(s);
    }
    sin_img_.push_back(std::move(si));
    cos_img_.push_back(std::move(ci));
  }
}

void ResidualOperator::check(const BoundaryShape& shape) const {
  const PatchGeometry& g = shape.geometry();
  if (g.alpha() != family_.alpha() || g.d() != family_.d() || g.mode() != family_.mode() ||
      g.folds() != family_.folds()) {
    throw DomainError("shape belongs to a different patch family than the operator");
  }
  if (g.eps() == 0.0) throw DomainError("eps = 0 is singular here; use eval_G_limit / eval_H_limit");
  if (scheme_.outer_nodes < 4 * (shape.f().truncation() + 1)) {
    throw AliasingError("outer grid N=" + std::to_string(scheme_.outer_nodes) +
                        " too small for J=" + std::to_string(shape.f().truncation()) + " (need N >= 4(J+1))");
  }
}

ResidualOperator::Samples ResidualOperator::sample(const BoundaryShape& shape,
                                                   const spectral::FourierCosSeries* h) const {
  const int n = scheme_.outer_nodes, m = scheme_.inner_nodes;
  Samples s;
  s.x.resize(n);
  s.cx.resize(n);
  s.sx.resize(n);
  for (int i = 0; i < n; ++i) {
    s.x[i] = 2.0 * kPi * i / n;
    s.cx[i] = std::cos(s.x[i]);
    s.sx[i] = std::sin(s.x[i]);
  }
  sample_series(shape.f(), s.x, s.F, s.Fp);
  if (h) sample_series(*h, s.x, s.H, s.Hp);
  s.aligned = (m % n == 0);
  if (s.aligned) {
    s.y.resize(m);
    for (int k = 0; k < m; ++k) s.y[k] = (k + 0.5) * 2.0 * kPi / m;
    sample_series(shape.f(), s.y, s.Ft, s.Ftp);
    if (h) sample_series(*h, s.y, s.Ht, s.Htp);
    s.cy.resize(m);
    s.sy.resize(m);
    for (int k = 0; k < m; ++k) {
      s.cy[k] = std::cos(s.y[k]);
      s.sy[k] = std::sin(s.y[k]);
    }
  }
  return s;
}

FunctionalValue ResidualOperator::evaluate(const BoundaryShape& shape, double speed, bool exploit_parity) const {
  check(shape);
  return assemble(shape, speed, nullptr, exploit_parity);
}

FunctionalValue ResidualOperator::derivative(const BoundaryShape& shape, double speed,
                                             const spectral::FourierCosSeries& h, bool exploit_parity) const {
  check(shape);
  return assemble(shape, speed, &h, exploit_parity);
}

FunctionalValue ResidualOperator::assemble(const BoundaryShape& shape, double speed,
                                           const spectral::FourierCosSeries* hdir, bool exploit_parity) const {
  const PatchGeometry& geo = shape.geometry();
  const int n = scheme_.outer_nodes, m = scheme_.inner_nodes;
  const double alpha = geo.alpha(), ha = 0.5 * alpha;
  const double eps = geo.eps(), delta = geo.delta(), epa = std::pow(std::abs(eps), alpha);  // delta / eps
  const double C = geo.riesz(), d = geo.d();
  const bool lin = hdir != nullptr;
  const Samples s = sample(shape, hdir);
  const int step = s.aligned ? m / n : 0;

  std::vector<double> self(n, 0.0), inter(n, 0.0), spd(n, 0.0);
  std::vector<double> Ft(m), Ftp(m), Ht(m), Htp(m), cy(m), sy(m), yy(m);

  const bool half = exploit_parity && n % 2 == 0;
  const int last = half ? n / 2 : n - 1;
  for (int i = 0; i <= last; ++i) {
    // Inner samples for this outer node: y_k = x_i + (k + 1/2) 2pi/M.
    if (s.aligned) {
      const int off = i * step;
      for (int k = 0; k < m; ++k) {
        const int idx = (off + k) % m;
        Ft[k] = s.Ft[idx];
        Ftp[k] = s.Ftp[idx];
        cy[k] = s.cy[idx];
        sy[k] = s.sy[idx];
        if (lin) {
          Ht[k] = s.Ht[idx];
          Htp[k] = s.Htp[idx];
        }
      }
    } else {
      for (int k = 0; k < m; ++k) yy[k] = s.x[i] + (k + 0.5) * 2.0 * kPi / m;
      std::vector<double> a, b;
      sample_series(shape.f(), yy, a, b);
      std::copy(a.begin(), a.end(), Ft.begin());
      std::copy(b.begin(), b.end(), Ftp.begin());
      if (lin) {
        sample_series(*hdir, yy, a, b);
        std::copy(a.begin(), a.end(), Ht.begin());
        std::copy(b.begin(), b.end(), Htp.begin());
      }
      for (int k = 0; k < m; ++k) {
        cy[k] = std::cos(yy[k]);
        sy[k] = std::sin(yy[k]);
      }
    }

    const double F = s.F[i], Fp = s.Fp[i];
    const double H = lin ? s.H[i] : 0.0, Hp = lin ? s.Hp[i] : 0.0;
    const double R = 1.0 + delta * F;
    if (!(R > 0.0)) throw DegenerateBoundary("R = 1 + delta f is not positive on the outer grid");

    // Self-induced term, with R R~ P^{-alpha/2} - 1 computed as expm1 of a sum
    // of log1p's so that the O(1/delta) prefactor costs no digits:
    //   g = sin s (R R~ P^{-a/2} - 1)/delta + [delta f' f~' sin s + (R f~' - f' R~) cos s] P^{-a/2},
    //   P = R R~ + delta^2 ((f - f~)/(2 sin(s/2)))^2.
    double acc = 0.0, dacc = 0.0;
    for (int k = 0; k < m; ++k) {
      const double ft = Ft[k], ftp = Ftp[k];
      const double Rt = 1.0 + delta * ft;
      if (!(Rt > 0.0)) throw DegenerateBoundary("R = 1 + delta f is not positive on the inner grid");
      const double rr1 = delta * (F + ft) + delta * delta * F * ft;
      const double rr = 1.0 + rr1;
      const double q = (F - ft) / sig2_[k];
      const double dq2 = delta * delta * q * q;
      const double E = std::expm1((1.0 - ha) * std::log1p(rr1) - ha * std::log1p(dq2 / rr));
      const double Pp = (1.0 + E) / rr;  // P^{-alpha/2}
      const double bracket = delta * Fp * ftp * sin_s_[k] + (R * ftp - Fp * Rt) * cos_s_[k];
      acc += weight_[k] * (sin_s_[k] * (E / delta) + bracket * Pp);
      if (lin) {
        const double ht = Ht[k], htp = Htp[k];
        const double P = rr + dq2;
        const double qh = (H - ht) / sig2_[k];
        const double drr = H * Rt + R * ht;  // d(R R~)/delta
        const double dP = delta * drr + 2.0 * delta * delta * q * qh;
        const double dEd = drr * Pp - ha * rr * Pp / P * (drr + 2.0 * delta * q * qh);
        const double dbracket = delta * (Hp * ftp + Fp * htp) * sin_s_[k] +
                                (delta * H * ftp + R * htp - Hp * Rt - delta * Fp * ht) * cos_s_[k];
        const double dPp = -ha * Pp / P * dP;
        dacc += weight_[k] * (sin_s_[k] * dEd + dbracket * Pp + bracket * dPp);
      }
    }
    if (lin) {
      self[i] = C * (-delta * H / (R * R) * acc + dacc / R);
    } else {
      self[i] = C * acc / R;
    }

    // Interaction terms.  The leading sin(s - theta) |P_i|^{-alpha} piece has zero
    // mean on the uniform grid and is removed before dividing by eps.
    for (size_t im = 0; im < family_.images().size(); ++im) {
      const Image& img = family_.images()[im];
      const double A = img.px * img.px + img.py * img.py;
      const double Apow = std::pow(A, -ha);
      const double ct = std::cos(img.angle), st = std::sin(img.angle);
      const double* si = sin_img_[im].data();
      const double* ci = cos_img_[im].data();
      double iacc = 0.0, diacc = 0.0;
      for (int k = 0; k < m; ++k) {
        const double ft = Ft[k], ftp = Ftp[k];
        const double Rt = 1.0 + delta * ft;
        const double eyx = cy[k] * ct - sy[k] * st, eyy = sy[k] * ct + cy[k] * st;  // e(y + theta)
        const double wx = R * s.cx[i] - Rt * eyx, wy = R * s.sx[i] - Rt * eyy;
        const double b = -2.0 * (wx * img.px + wy * img.py) + eps * (wx * wx + wy * wy);
        const double lb = std::log1p(eps * b / A);
        const double rr1 = delta * (F + ft) + delta * delta * F * ft;
        const double rr = 1.0 + rr1;
        const double E = std::expm1(std::log1p(rr1) - ha * lb);
        const double Kf = (1.0 + E) / rr;  // (|dist|^2 / |P_i|^2)^{-alpha/2}
        const double bracket = delta * Fp * ftp * si[k] + (R * ftp - Fp * Rt) * ci[k];
        iacc += si[k] * (E / eps) + epa * bracket * Kf;
        if (lin) {
          const double ht = Ht[k], htp = Htp[k];
          const double D = A + eps * b;
          const double drr = H * Rt + R * ht;
          const double dwx = delta * (H * s.cx[i] - ht * eyx), dwy = delta * (H * s.sx[i] - ht * eyy);
          const double db = -2.0 * (dwx * img.px + dwy * img.py) + 2.0 * eps * (wx * dwx + wy * dwy);
          const double dEe = (1.0 + E) * (epa * drr / rr - ha * db / D);
          const double dKf = -ha * Kf * eps * db / D;
          const double dbracket = delta * (Hp * ftp + Fp * htp) * si[k] +
                                  (delta * H * ftp + R * htp - Hp * Rt - delta * Fp * ht) * ci[k];
          diacc += si[k] * dEe + epa * (dbracket * Kf + bracket * dKf);
        }
      }
      const double pre = img.strength * C * Apow / m;
      if (lin) {
        inter[i] += pre * (-delta * H / (R * R) * iacc + diacc / R);
      } else {
        inter[i] += pre * iacc / R;
      }
    }

    // Speed term S(x).
    const double cx = s.cx[i];
    if (geo.mode() == Mode::corotating) {
      spd[i] = lin ? eps * delta * Hp - d * delta * cx * (Hp / R - Fp * delta * H / (R * R))
                   : eps * delta * Fp - d * delta * Fp * cx / R + d * s.sx[i];
    } else {
      spd[i] = lin ? -delta * cx * (Hp / R - Fp * delta * H / (R * R)) : s.sx[i] - delta * Fp * cx / R;
    }
  }
  if (half) {
    for (int i = 1; i < n / 2; ++i) {
      self[n - i] = -self[i];
      inter[n - i] = -inter[i];
      spd[n - i] = -spd[i];
    }
  }

  FunctionalValue out;
  out.grid.resize(n);
  for (int i = 0; i < n; ++i) out.grid[i] = self[i] + inter[i] - speed * spd[i];
  auto an = spectral::analyze_odd(out.grid, shape.f().truncation());
  out.coeffs = std::move(an.series);
  out.parity_leakage = an.leakage;
  out.self = std::move(self);
  out.interaction = std::move(inter);
  out.speed_term = std::move(spd);
  return out;
}

FunctionalValue eval_G(const BoundaryShape& shape, double omega, const QuadratureScheme& scheme) {
  if (shape.geometry().mode() != Mode::corotating) throw DomainError("eval_G needs a co-rotating geometry");
  return ResidualOperator(shape.geometry(), scheme).evaluate(shape, omega);
}

FunctionalValue eval_H(const BoundaryShape& shape, double w, const QuadratureScheme& scheme) {
  if (shape.geometry().mode() != Mode::travelling) throw DomainError("eval_H needs a travelling geometry");
  return ResidualOperator(shape.geometry(), scheme).evaluate(shape, w);
}

namespace {

spectral::FourierSinSeries limit_series(double speed, const spectral::FourierCosSeries& f,
                                        const PatchGeometry& geometry) {
  const double alpha = geometry.alpha();
  if (!(alpha >= 1.0 && alpha < 2.0)) throw DomainError("the eps = 0 closed form needs alpha in [1,2)");
  spectral::FourierSinSeries out(f.truncation());
  for (int j = 2; j <= f.truncation(); ++j) {
    if (f.coeff(j) != 0.0) out.set(j, kernels::gamma_multiplier(alpha, j).value * j * f.coeff(j));
  }
  const double scale = geometry.mode() == Mode::corotating ? geometry.d() : 1.0;
  out.set(1, (geometry.ground_speed() - speed) * scale);
  return out;
}

}  // namespace

spectral::FourierSinSeries eval_G_limit(double omega, const spectral::FourierCosSeries& f,
                                        const PatchGeometry& geometry) {
  if (geometry.mode() != Mode::corotating) throw DomainError("eval_G_limit needs a co-rotating geometry");
  return limit_series(omega, f, geometry);
}

spectral::FourierSinSeries eval_H_limit(double w, const spectral::FourierCosSeries& f,
                                        const PatchGeometry& geometry) {
  if (geometry.mode() != Mode::travelling) throw DomainError("eval_H_limit needs a travelling geometry");
  return limit_series(w, f, geometry);
}

FunctionalValue gateaux(const BoundaryShape& shape, double speed, const spectral::FourierCosSeries& h,
                        const QuadratureScheme& scheme, GateauxMethod method) {
  const ResidualOperator op(shape.geometry(), scheme);
  if (method.kind == GateauxMethod::Kind::analytic) return op.derivative(shape, speed, h);
  if (!(method.step > 0.0)) throw DomainError("finite-difference step must be positive");
  if (h.truncation() != shape.f().truncation()) throw DomainError("direction and shape truncations differ");
  const double t = method.step;
  const BoundaryShape plus(shape.geometry(), shape.f() + t * h);
  const BoundaryShape minus(shape.geometry(), shape.f() + (-t) * h);
  FunctionalValue a = op.evaluate(plus, speed), b = op.evaluate(minus, speed);
  FunctionalValue out;
  const double inv = 0.5 / t;
  auto diff = [inv](const std::vector<double>& p, const std::vector<double>& q) {
    std::vector<double> r(p.size());
    for (size_t i = 0; i < p.size(); ++i) r[i] = (p[i] - q[i]) * inv;
    return r;
  };
  out.grid = diff(a.grid, b.grid);
  out.self = diff(a.self, b.self);
  out.interaction = diff(a.interaction, b.interaction);
  out.speed_term = diff(a.speed_term, b.speed_term);
  auto an = spectral::analyze_odd(out.grid, shape.f().truncation());
  out.coeffs = std::move(an.series);
  out.parity_leakage = an.leakage;
  return out;
}

}  // namespace gsqg::functional

#pragma once

#include <array>
#include <cmath>

#include "sympair/algebra.hpp"
#include "sympair/errors.hpp"
#include "sympair/jets.hpp"
#include "sympair/numerics.hpp"

namespace sympair {

// Interval [lo, hi] helper for the support certificates.
struct Interval {
  double lo = 0.0, hi = 0.0;
  Interval operator+(const Interval& o) const { return {lo + o.lo, hi + o.hi}; }
  Interval operator-(const Interval& o) const { return {lo - o.hi, hi - o.lo}; }
  Interval operator*(const Interval& o) const {
    double a = lo * o.lo, b = lo * o.hi, c = hi * o.lo, d = hi * o.hi;
    return {std::min(std::min(a, b), std::min(c, d)), std::max(std::max(a, b), std::max(c, d))};
  }
  Interval square() const {
    double a = lo * lo, b = hi * hi;
    if (lo <= 0.0 && hi >= 0.0) return {0.0, std::max(a, b)};
    return {std::min(a, b), std::max(a, b)};
  }
  Interval scale(double s) const { return s >= 0 ? Interval{s * lo, s * hi} : Interval{s * hi, s * lo}; }
};

struct SupportCertificate {
  Interval Q, S, S0;
  bool in_U = false;         // Q != 0 or S0 != 0 throughout the ball
  bool in_Um = false;        // S0 > 0
  bool in_U3 = false;        // S > 0 and Q > -2 sqrt(S)
  bool in_varpi_U3 = false;  // S > 0 and Q < 2 sqrt(S)
  bool s0_negative = false;  // S0 < 0 (ball meets only the a2 chart)
};

// Smooth bump supported on the closed omega-norm ball of radius r about X0:
//   f(X) = g(s), s = |X - X0|^2 / r^2, g(s) = exp(1 - 1/(1 - s)) for s < 1.
class Bump {
 public:
  Bump(const BlockVector& center, double radius) : c_(center), r_(radius) {
    if (!(radius > 0.0)) throw Error(Errc::BadInput, "bump radius must be positive");
    cert_ = certify();
  }

  const BlockVector& center() const { return c_; }
  double radius() const { return r_; }
  const SupportCertificate& certificate() const { return cert_; }

  // support box, coordinate order (Y00, Y01, Y10, Y11, Z00, Z01, Z10, Z11)
  std::array<double, 8> box_lo() const {
    auto c = coords(c_);
    std::array<double, 8> v;
    for (int i = 0; i < 8; ++i) v[i] = c[i] - r_;
    return v;
  }
  std::array<double, 8> box_hi() const {
    auto c = coords(c_);
    std::array<double, 8> v;
    for (int i = 0; i < 8; ++i) v[i] = c[i] + r_;
    return v;
  }
  double box_volume() const { return std::pow(2.0 * r_, 8); }
  double ball_volume() const {
    // vol(B^8) = pi^4 / 24 * r^8
    return std::pow(M_PI, 4) / 24.0 * std::pow(r_, 8);
  }

  static std::array<double, 8> coords(const BlockVector& X) {
    return {X.Y.a00, X.Y.a01, X.Y.a10, X.Y.a11, X.Z.a00, X.Z.a01, X.Z.a10, X.Z.a11};
  }
  static BlockVector from_coords(const double* x) {
    return {{x[0], x[1], x[2], x[3]}, {x[4], x[5], x[6], x[7]}};
  }

  double s_of(const BlockVector& X) const { return (X - c_).norm2() / (r_ * r_); }

  double value(const BlockVector& X) const {
    double s = s_of(X);
    if (s >= s_cut) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - s));
  }

  // g, g', g'', g''', g'''' at s (zero beyond the cut; the true values there
  // are below exp(-100))
  std::array<double, 5> profile(double s) const {
    std::array<double, 5> d{};
    if (s >= s_cut || s < 0.0) return d;
    double u = 1.0 - s;
    double g = std::exp(1.0 - 1.0 / u);
    double u2 = u * u, u3 = u2 * u, u4 = u3 * u, u5 = u4 * u;
    double u6 = u5 * u, u7 = u6 * u, u8 = u7 * u;
    d[0] = g;
    d[1] = -g / u2;
    d[2] = g * (1.0 / u4 - 2.0 / u3);
    d[3] = g * (-1.0 / u6 + 6.0 / u5 - 6.0 / u4);
    d[4] = g * (1.0 / u8 - 12.0 / u7 + 36.0 / u6 - 24.0 / u5);
    return d;
  }

  // the constant-coefficient invariant operators applied to the bump, in
  // closed form: the profile chain rule collapses because every mixed partial
  // in d(Q), d(S) hits four distinct coordinates
  double partial_q(const BlockVector& X) const {
    double s = s_of(X);
    if (s >= s_cut) return 0.0;
    auto d = profile(s);
    Mat2 dy = X.Y - c_.Y, dz = X.Z - c_.Z;
    double tr = (dy * dz).trace();
    double r4 = std::pow(r_, 4);
    return 16.0 / r4 * d[2] * tr;
  }
  double partial_s(const BlockVector& X) const {
    double s = s_of(X);
    if (s >= s_cut) return 0.0;
    auto d = profile(s);
    Mat2 dy = X.Y - c_.Y, dz = X.Z - c_.Z;
    double r8 = std::pow(r_, 8);
    return 256.0 / r8 * d[4] * dy.det() * dz.det();
  }

  // order-4 jet of the bump at X, through the jet of s and the profile chain
  Jet8 jet(const BlockVector& X) const {
    double s0 = s_of(X);
    if (s0 >= s_cut) return Jet8(0.0);
    auto xc = coords(X);
    auto cc = coords(c_);
    Jet8 s(0.0);
    for (int i = 0; i < 8; ++i) {
      Jet8 d = Jet8::variable(i, xc[i]) - Jet8(cc[i]);
      s += d * d;
    }
    s = s * (1.0 / (r_ * r_));
    auto d = profile(s0);
    return s.compose({d[0], d[1], d[2], d[3], d[4]});
  }

 private:
  static constexpr double s_cut = 0.99;  // exp(-100) beyond; below any tolerance here

  SupportCertificate certify() const {
    SupportCertificate c;
    double nx = c_.norm();
    Interval q0{invariants(c_).Q, invariants(c_).Q};
    double qslack = nx * r_ + 0.5 * r_ * r_;
    c.Q = {q0.lo - qslack, q0.hi + qslack};
    auto det_interval = [this](const Mat2& m) {
      double d = m.det();
      double slack = m.norm() * r_ + 0.5 * r_ * r_;
      return Interval{d - slack, d + slack};
    };
    c.S = det_interval(c_.Y) * det_interval(c_.Z);
    c.S0 = c.Q.square() - c.S.scale(4.0);
    c.in_Um = c.S0.lo > 0.0;
    c.s0_negative = c.S0.hi < 0.0;
    bool s_pos = c.S.lo > 0.0;
    c.in_U3 = s_pos && (c.Q.lo + 2.0 * std::sqrt(std::max(c.S.lo, 0.0)) > 0.0);
    c.in_varpi_U3 = s_pos && (2.0 * std::sqrt(std::max(c.S.lo, 0.0)) - c.Q.hi > 0.0);
    c.in_U = (c.Q.lo > 0.0 || c.Q.hi < 0.0) || (c.S0.lo > 0.0 || c.S0.hi < 0.0) || c.in_U3 ||
             c.in_varpi_U3;
    return c;
  }

  BlockVector c_;
  double r_;
  SupportCertificate cert_;
};

// Secondary certificate: scan a low-discrepancy sample of the ball and report
// the worst-case values of the membership inequalities.
struct SampledMargins {
  double min_abs_q_or_s0 = 1e300;  // min over ball of max(|Q|, |S0|)
  double min_s0 = 1e300;
  double max_s0 = -1e300;
  double min_s = 1e300;
  double min_u3 = 1e300;        // Q + 2 sqrt(S) where S > 0
  double min_varpi_u3 = 1e300;  // 2 sqrt(S) - Q where S > 0
};

inline SampledMargins sample_margins(const Bump& b, int n_points = 100000) {
  SampledMargins m;
  auto cc = Bump::coords(b.center());
  double pt[8];
  for (int i = 0; i < n_points; ++i) {
    halton_point(static_cast<std::uint64_t>(i), 8, pt);
    // map the Halton cube point into the ball via ball rejection
    double x[8];
    double r2 = 0.0;
    for (int d = 0; d < 8; ++d) {
      x[d] = 2.0 * pt[d] - 1.0;
      r2 += x[d] * x[d];
    }
    if (r2 > 1.0) continue;
    for (int d = 0; d < 8; ++d) x[d] = cc[d] + b.radius() * x[d];
    OrbitInvariants inv = invariants(Bump::from_coords(x));
    m.min_abs_q_or_s0 = std::min(m.min_abs_q_or_s0, std::max(std::abs(inv.Q), std::abs(inv.S0)));
    m.min_s0 = std::min(m.min_s0, inv.S0);
    m.max_s0 = std::max(m.max_s0, inv.S0);
    m.min_s = std::min(m.min_s, inv.S);
    if (inv.S > 0.0) {
      double sq = std::sqrt(inv.S);
      m.min_u3 = std::min(m.min_u3, inv.Q + 2.0 * sq);
      m.min_varpi_u3 = std::min(m.min_varpi_u3, 2.0 * sq - inv.Q);
    }
  }
  return m;
}

}  // namespace sympair

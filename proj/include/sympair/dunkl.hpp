#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <utility>
#include <vector>

#include "sympair/algebra.hpp"
#include "sympair/errors.hpp"
#include "sympair/numerics.hpp"

namespace sympair {

// Exact rational scalar on int64 with 128-bit intermediates.
struct Rational {
  long long num = 0;
  long long den = 1;

  Rational() = default;
  Rational(long long n) : num(n), den(1) {}
  Rational(long long n, long long d) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den == 0) throw Error(Errc::DivisionFailure, "rational with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  static Rational from128(__int128 n, __int128 d) {
    if (d == 0) throw Error(Errc::DivisionFailure, "rational with zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    __int128 a = n < 0 ? -n : n, b = d;
    while (b != 0) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    if (a > 1) {
      n /= a;
      d /= a;
    }
    const __int128 lim = (__int128)1 << 62;
    if (n >= lim || n <= -lim || d >= lim)
      throw Error(Errc::DivisionFailure, "rational overflow");
    Rational r;
    r.num = static_cast<long long>(n);
    r.den = static_cast<long long>(d);
    return r;
  }

  bool is_zero() const { return num == 0; }
  Rational operator+(const Rational& o) const {
    return from128((__int128)num * o.den + (__int128)o.num * den, (__int128)den * o.den);
  }
  Rational operator-(const Rational& o) const {
    return from128((__int128)num * o.den - (__int128)o.num * den, (__int128)den * o.den);
  }
  Rational operator*(const Rational& o) const {
    return from128((__int128)num * o.num, (__int128)den * o.den);
  }
  Rational operator/(const Rational& o) const {
    if (o.num == 0) throw Error(Errc::DivisionFailure, "division by zero rational");
    return from128((__int128)num * o.den, (__int128)den * o.num);
  }
  Rational operator-() const {
    Rational r = *this;
    r.num = -r.num;
    return r;
  }
  bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
};

// Sparse exact-coefficient polynomial in the Cartan coordinates (x1, x2).
class BivariatePolynomial {
 public:
  using Key = std::pair<int, int>;  // exponents (i, j)

  BivariatePolynomial() = default;
  static BivariatePolynomial constant(Rational c) {
    BivariatePolynomial p;
    p.set(0, 0, c);
    return p;
  }
  static BivariatePolynomial monomial(int i, int j, Rational c = Rational(1)) {
    BivariatePolynomial p;
    p.set(i, j, c);
    return p;
  }

  void set(int i, int j, Rational c) {
    if (c.is_zero())
      terms_.erase({i, j});
    else
      terms_[{i, j}] = c;
  }
  Rational coeff(int i, int j) const {
    auto it = terms_.find({i, j});
    return it == terms_.end() ? Rational(0) : it->second;
  }
  const std::map<Key, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const {
    int d = 0;
    for (auto& [k, c] : terms_) d = std::max(d, k.first + k.second);
    return d;
  }

  BivariatePolynomial operator+(const BivariatePolynomial& o) const {
    BivariatePolynomial r = *this;
    for (auto& [k, c] : o.terms_) r.set(k.first, k.second, r.coeff(k.first, k.second) + c);
    return r;
  }
  BivariatePolynomial operator-(const BivariatePolynomial& o) const {
    BivariatePolynomial r = *this;
    for (auto& [k, c] : o.terms_) r.set(k.first, k.second, r.coeff(k.first, k.second) - c);
    return r;
  }
  BivariatePolynomial operator*(const Rational& s) const {
    BivariatePolynomial r;
    if (s.is_zero()) return r;
    for (auto& [k, c] : terms_) r.terms_[k] = c * s;
    return r;
  }
  BivariatePolynomial operator*(const BivariatePolynomial& o) const {
    BivariatePolynomial r;
    for (auto& [k1, c1] : terms_)
      for (auto& [k2, c2] : o.terms_) {
        Key k{k1.first + k2.first, k1.second + k2.second};
        Rational c = r.coeff(k.first, k.second) + c1 * c2;
        r.set(k.first, k.second, c);
      }
    return r;
  }
  bool operator==(const BivariatePolynomial& o) const { return terms_ == o.terms_; }

  BivariatePolynomial derivative(int var) const {
    BivariatePolynomial r;
    for (auto& [k, c] : terms_) {
      int e = (var == 0) ? k.first : k.second;
      if (e == 0) continue;
      Key nk = (var == 0) ? Key{k.first - 1, k.second} : Key{k.first, k.second - 1};
      r.set(nk.first, nk.second, r.coeff(nk.first, nk.second) + c * Rational(e));
    }
    return r;
  }

  // exponent-level substitutions for the rank-2 reflections
  BivariatePolynomial reflect_x1() const {  // (x1, x2) -> (-x1, x2)
    BivariatePolynomial r;
    for (auto& [k, c] : terms_) r.set(k.first, k.second, (k.first % 2) ? -c : c);
    return r;
  }
  BivariatePolynomial reflect_x2() const {
    BivariatePolynomial r;
    for (auto& [k, c] : terms_) r.set(k.first, k.second, (k.second % 2) ? -c : c);
    return r;
  }
  BivariatePolynomial swap_vars() const {  // (x1, x2) -> (x2, x1)
    BivariatePolynomial r;
    for (auto& [k, c] : terms_) r.set(k.second, k.first, c);
    return r;
  }
  BivariatePolynomial antiswap_vars() const {  // (x1, x2) -> (-x2, -x1)
    BivariatePolynomial r;
    for (auto& [k, c] : terms_) r.set(k.second, k.first, ((k.first + k.second) % 2) ? -c : c);
    return r;
  }

  // exact division by x1, by (x1 - x2), or by (x1 + x2)
  BivariatePolynomial divide_x1() const {
    BivariatePolynomial r;
    for (auto& [k, c] : terms_) {
      if (k.first == 0) throw Error(Errc::DivisionFailure, "not divisible by x1");
      r.set(k.first - 1, k.second, c);
    }
    return r;
  }
  BivariatePolynomial divide_x2() const {
    BivariatePolynomial r;
    for (auto& [k, c] : terms_) {
      if (k.second == 0) throw Error(Errc::DivisionFailure, "not divisible by x2");
      r.set(k.first, k.second - 1, c);
    }
    return r;
  }
  BivariatePolynomial divide_linear(bool plus) const {  // by x1 + x2 (plus) or x1 - x2
    BivariatePolynomial q, rem = *this;
    while (!rem.is_zero()) {
      // lex-leading term with x1 > x2
      auto it = std::prev(rem.terms_.end());
      auto [i, j] = it->first;
      Rational c = it->second;
      if (i == 0) throw Error(Errc::DivisionFailure, "linear-form division left a remainder");
      q.set(i - 1, j, q.coeff(i - 1, j) + c);
      rem.set(i, j, Rational(0));
      Rational tail = plus ? c : -c;
      rem.set(i - 1, j + 1, rem.coeff(i - 1, j + 1) - tail);
    }
    return q;
  }

  double eval(double x1, double x2) const {
    double s = 0.0;
    for (auto& [k, c] : terms_) s += c.to_double() * std::pow(x1, k.first) * std::pow(x2, k.second);
    return s;
  }

 private:
  std::map<Key, Rational> terms_;
};

// Multiplicities on the four positive roots; Weyl symmetry identifies the two
// mult-1 roots and the two mult-2 roots.
struct MultiplicityFunction {
  Rational k_alpha{1, 2};
  Rational k_beta{1, 1};
  static MultiplicityFunction geometric() { return {Rational(1, 2), Rational(1)}; }
  MultiplicityFunction one_minus() const {
    return {Rational(1) - k_alpha, Rational(1) - k_beta};
  }
};

// Root data for the rank-2 system in Cartan coordinates: alpha1 = 2 x1,
// alpha2 = 2 x2, beta1 = x1 - x2, beta2 = x1 + x2.
struct RootDatum2 {
  // pairings alpha_i(h_{alpha_i}) = 4, beta_j(h_{beta_j}) = 2
  static constexpr double alpha_coroot_pairing = 4.0;
  static constexpr double beta_coroot_pairing = 2.0;
};

// T_xi(k) = d_xi + sum_alpha k_alpha alpha(xi) (1 - r_alpha)/alpha, exact.
inline BivariatePolynomial dunkl_apply(const std::array<Rational, 2>& xi,
                                       const MultiplicityFunction& k,
                                       const BivariatePolynomial& p) {
  BivariatePolynomial out = p.derivative(0) * xi[0] + p.derivative(1) * xi[1];
  // alpha1 = 2 x1: alpha1(xi) = 2 xi1; (1 - r)p is divisible by 2 x1
  if (!k.k_alpha.is_zero()) {
    if (!xi[0].is_zero()) {
      BivariatePolynomial d = (p - p.reflect_x1()).divide_x1();
      out = out + d * (k.k_alpha * xi[0]);  // (2 xi1) / 2 cancels
    }
    if (!xi[1].is_zero()) {
      BivariatePolynomial d = (p - p.reflect_x2()).divide_x2();
      out = out + d * (k.k_alpha * xi[1]);
    }
  }
  if (!k.k_beta.is_zero()) {
    Rational b1 = xi[0] - xi[1];
    if (!b1.is_zero()) {
      BivariatePolynomial d = (p - p.swap_vars()).divide_linear(false);
      out = out + d * (k.k_beta * b1);
    }
    Rational b2 = xi[0] + xi[1];
    if (!b2.is_zero()) {
      BivariatePolynomial d = (p - p.antiswap_vars()).divide_linear(true);
      out = out + d * (k.k_beta * b2);
    }
  }
  return out;
}

inline bool is_weyl_invariant(const BivariatePolynomial& p) {
  return p == p.reflect_x1() && p == p.reflect_x2() && p == p.swap_vars();
}

enum class KShift { Geometric, OneMinus };
enum class RadialSelector { QRestriction, SRestriction };

// Composite Dunkl operator for Res_a(Q) = (h_a1^2 + h_a2^2)/4 or
// Res_a(S) = h_a1^2 h_a2^2 / 16, i.e. T_{e1}^2 + T_{e2}^2 and T_{e1}^2 T_{e2}^2.
inline BivariatePolynomial radial_q_s(KShift shift, RadialSelector sel,
                                      const BivariatePolynomial& target,
                                      const MultiplicityFunction& kin =
                                          MultiplicityFunction::geometric()) {
  if (!is_weyl_invariant(target))
    throw Error(Errc::NotInvariant, "target must be invariant under the rank-2 Weyl group");
  MultiplicityFunction k = (shift == KShift::Geometric) ? kin : kin.one_minus();
  std::array<Rational, 2> e1{Rational(1), Rational(0)};
  std::array<Rational, 2> e2{Rational(0), Rational(1)};
  auto t1sq = [&](const BivariatePolynomial& p) {
    return dunkl_apply(e1, k, dunkl_apply(e1, k, p));
  };
  auto t2sq = [&](const BivariatePolynomial& p) {
    return dunkl_apply(e2, k, dunkl_apply(e2, k, p));
  };
  if (sel == RadialSelector::QRestriction) return t1sq(target) + t2sq(target);
  return t1sq(t2sq(target));
}

// ---------------------------------------------------------------------------
// Numeric side: Dunkl operators on smooth functions, radial parts with finite
// differences, and the conjugation identity check.

using RealFn2 = std::function<double(double, double)>;
using CplxFn2 = std::function<cplx(double, double)>;

namespace fd {

// centered 9-node finite-difference weights for derivative order m, cached
inline const std::vector<double>& stencil_offsets() {
  static const std::vector<double> off = {-4, -3, -2, -1, 0, 1, 2, 3, 4};
  return off;
}

inline std::vector<double> weights_for(int m) {
  static std::vector<std::vector<double>> cache = [] {
    std::vector<std::vector<double>> w;
    auto all = fornberg_weights(0.0, stencil_offsets(), 4);
    for (int k = 0; k <= 4; ++k) w.push_back(all[k]);
    return w;
  }();
  return cache.at(m);
}

// d^m/dx^m along one variable of a bivariate callable
template <typename F>
cplx deriv1(const F& f, double x, double y, int var, int m, double h) {
  if (m == 0) return f(x, y);
  auto w = weights_for(m);
  const auto& off = stencil_offsets();
  cplx acc(0.0, 0.0);
  for (size_t i = 0; i < off.size(); ++i) {
    if (w[i] == 0.0) continue;
    double xx = var == 0 ? x + off[i] * h : x;
    double yy = var == 1 ? y + off[i] * h : y;
    acc += w[i] * f(xx, yy);
  }
  return acc / std::pow(h, m);
}

}  // namespace fd

// Numeric Dunkl application (first order) for smooth functions of (x1, x2).
inline cplx dunkl_apply_numeric(const std::array<double, 2>& xi, const MultiplicityFunction& k,
                                const CplxFn2& f, double x1, double x2, double h) {
  cplx out = xi[0] * fd::deriv1(f, x1, x2, 0, 1, h) + xi[1] * fd::deriv1(f, x1, x2, 1, 1, h);
  double ka = k.k_alpha.to_double(), kb = k.k_beta.to_double();
  if (ka != 0.0) {
    if (xi[0] != 0.0) out += ka * (2.0 * xi[0]) * (f(x1, x2) - f(-x1, x2)) / (2.0 * x1);
    if (xi[1] != 0.0) out += ka * (2.0 * xi[1]) * (f(x1, x2) - f(x1, -x2)) / (2.0 * x2);
  }
  if (kb != 0.0) {
    double b1 = xi[0] - xi[1], b2 = xi[0] + xi[1];
    if (b1 != 0.0) out += kb * b1 * (f(x1, x2) - f(x2, x1)) / (x1 - x2);
    if (b2 != 0.0) out += kb * b2 * (f(x1, x2) - f(-x2, -x1)) / (x1 + x2);
  }
  return out;
}

namespace detail {

inline void require_chamber_margin(double x1, double x2, double margin) {
  if (std::abs(x1) < margin || std::abs(x2) < margin || std::abs(x1 - x2) < margin ||
      std::abs(x1 + x2) < margin)
    throw Error(Errc::TooCloseToWall, "sample point too close to a root hyperplane");
}

}  // namespace detail

enum class Conjugator { Delta, IkHalf };

struct OpdamReport {
  double max_residual = 0.0;
  double max_value = 0.0;
};

// Checks D_p(k) F = conj^{-1} . D_p(1-k) . conj F on W-invariant smooth F,
// where conj is delta = x1^2 - x2^2 (or |delta|; the two agree chamber-wise).
inline OpdamReport opdam_check(RadialSelector sel, const MultiplicityFunction& k,
                               const CplxFn2& invariant_fn,
                               const std::vector<std::array<double, 2>>& points,
                               Conjugator conj = Conjugator::Delta, double h = 1e-2) {
  OpdamReport rep;
  auto delta_fn = [conj](double x1, double x2) {
    double d = x1 * x1 - x2 * x2;
    return conj == Conjugator::Delta ? d : std::abs(d);
  };
  MultiplicityFunction kk = k;
  MultiplicityFunction km = k.one_minus();
  std::array<double, 2> e1{1.0, 0.0}, e2{0.0, 1.0};

  auto tsq = [&](const MultiplicityFunction& mult, const CplxFn2& f,
                 const std::array<double, 2>& xi) {
    return CplxFn2([mult, f, xi, h](double x1, double x2) {
      CplxFn2 once = [mult, f, xi, h](double a, double b) {
        return dunkl_apply_numeric(xi, mult, f, a, b, h);
      };
      return dunkl_apply_numeric(xi, mult, once, x1, x2, h);
    });
  };

  auto apply_sel = [&](const MultiplicityFunction& mult, const CplxFn2& f) {
    if (sel == RadialSelector::QRestriction) {
      CplxFn2 a = tsq(mult, f, e1);
      CplxFn2 b = tsq(mult, f, e2);
      return CplxFn2([a, b](double x1, double x2) { return a(x1, x2) + b(x1, x2); });
    }
    CplxFn2 inner = tsq(mult, f, e2);
    return tsq(mult, inner, e1);
  };

  CplxFn2 lhs = apply_sel(kk, invariant_fn);
  CplxFn2 conjugated = [invariant_fn, delta_fn](double x1, double x2) {
    return invariant_fn(x1, x2) * delta_fn(x1, x2);
  };
  CplxFn2 rhs_core = apply_sel(km, conjugated);

  double margin = 5.0 * h * (sel == RadialSelector::SRestriction ? 4.0 : 2.0) + 5.0 * h;
  for (const auto& pt : points) {
    detail::require_chamber_margin(pt[0], pt[1], margin);
    cplx a = lhs(pt[0], pt[1]);
    cplx b = rhs_core(pt[0], pt[1]) / delta_fn(pt[0], pt[1]);
    rep.max_residual = std::max(rep.max_residual, std::abs(a - b));
    rep.max_value = std::max({rep.max_value, std::abs(a), std::abs(b)});
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Radial parts on the four Cartan classes.
//
// Parameters p = (p1, p2); the radial part of d(Q) is
// delta^{-1} (L_{a1} + L_{a2}) delta and of d(S) is delta^{-1} L_{a1} L_{a2}
// delta with the class-dependent coordinate forms of L.

enum class InvariantOp { Q, S };

namespace detail {

// delta = u - v as a function of parameters, complex on a2
inline cplx delta_on(CartanClass cls, double p1, double p2) {
  switch (cls) {
    case CartanClass::APP: return cplx(p1 * p1 - p2 * p2);
    case CartanClass::APM: return cplx(p1 * p1 + p2 * p2);
    case CartanClass::AMM: return cplx(p1 * p1 - p2 * p2);
    case CartanClass::A2: return cplx(0.0, 4.0 * p1 * p2);
  }
  return {};
}

// L along one real coordinate: sign * (d^2/dp^2 + (1/p) d/dp)
template <typename F>
cplx l_real(const F& f, double p1, double p2, int var, double sign, double h) {
  cplx d2 = fd::deriv1(f, p1, p2, var, 2, h);
  cplx d1 = fd::deriv1(f, p1, p2, var, 1, h);
  double p = var == 0 ? p1 : p2;
  return sign * (d2 + d1 / p);
}

// the two complex operators on a2:
//   L_eps = (1/4)(d_tau - i eps d_theta)^2 + (1/(2(tau + i eps theta)))(d_tau - i eps d_theta)
template <typename F>
cplx l_a2(const F& f, double tau, double theta, int eps, double h) {
  cplx i(0.0, 1.0);
  cplx dt = fd::deriv1(f, tau, theta, 0, 1, h);
  cplx dh = fd::deriv1(f, tau, theta, 1, 1, h);
  cplx dtt = fd::deriv1(f, tau, theta, 0, 2, h);
  cplx dhh = fd::deriv1(f, tau, theta, 1, 2, h);
  // mixed second derivative via nested stencils
  auto dtheta = [&](double a, double b) { return fd::deriv1(f, a, b, 1, 1, h); };
  cplx dth = fd::deriv1(dtheta, tau, theta, 0, 1, h);
  cplx e = eps > 0 ? cplx(1.0) : cplx(-1.0);
  cplx dir2 = dtt - 2.0 * i * e * dth - dhh;
  cplx dir1 = dt - i * e * dh;
  cplx denom = 2.0 * (tau + i * e * theta);
  return 0.25 * dir2 + dir1 / denom;
}

}  // namespace detail

struct RadialOptions {
  double h_scale_q = 1e-2;   // step factor for the 2nd-order operator
  double h_scale_s = 1e-2;   // step factor for the 4th-order composition
  double wall_margin_steps = 5.0;
};

// Delta_a(dP) F (point) - eigen * F(point), via 9-point finite differences on
// the delta-conjugated expression. F is a function of the class parameters.
inline cplx radial_residual(CartanClass cls, InvariantOp op, const CplxFn2& F, double p1,
                            double p2, cplx eigen, const RadialOptions& opt = {}) {
  double scale = std::max(1.0, std::hypot(p1, p2));
  double h = (op == InvariantOp::Q ? opt.h_scale_q : opt.h_scale_s) * scale;
  double stencil_extent = (op == InvariantOp::Q ? 4.0 : 8.0 + 4.0) * h;
  double margin = stencil_extent + opt.wall_margin_steps * h;
  bool crosses = std::abs(p1) < margin || std::abs(p2) < margin;
  if (cls != CartanClass::A2)
    crosses = crosses || std::abs(p1 - p2) < margin || std::abs(p1 + p2) < margin;
  if (crosses)
    throw Error(Errc::StencilCrossesWall, "finite-difference stencil meets a wall");

  auto G = [cls, &F](double a, double b) { return detail::delta_on(cls, a, b) * F(a, b); };

  cplx applied(0.0, 0.0);
  switch (cls) {
    case CartanClass::APP:
    case CartanClass::APM:
    case CartanClass::AMM: {
      double s1 = 1.0, s2 = 1.0;
      if (cls == CartanClass::APM) s2 = -1.0;
      if (cls == CartanClass::AMM) s1 = s2 = -1.0;
      if (op == InvariantOp::Q) {
        applied = detail::l_real(G, p1, p2, 0, s1, h) + detail::l_real(G, p1, p2, 1, s2, h);
      } else {
        auto inner = [&](double a, double b) { return detail::l_real(G, a, b, 1, s2, h); };
        applied = detail::l_real(inner, p1, p2, 0, s1, h);
      }
      break;
    }
    case CartanClass::A2: {
      if (op == InvariantOp::Q) {
        applied = detail::l_a2(G, p1, p2, +1, h) + detail::l_a2(G, p1, p2, -1, h);
      } else {
        auto inner = [&](double a, double b) { return detail::l_a2(G, a, b, -1, h); };
        applied = detail::l_a2(inner, p1, p2, +1, h);
      }
      break;
    }
  }
  cplx dl = detail::delta_on(cls, p1, p2);
  return applied / dl - eigen * F(p1, p2);
}

}  // namespace sympair

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "sympair/errors.hpp"
#include "sympair/numerics.hpp"

namespace sympair {

struct Mat2 {
  // row-major entries
  double a00 = 0, a01 = 0, a10 = 0, a11 = 0;

  static Mat2 identity() { return {1, 0, 0, 1}; }
  static Mat2 diag(double x, double y) { return {x, 0, 0, y}; }
  static Mat2 swap() { return {0, 1, 1, 0}; }  // antidiagonal permutation
  static Mat2 rot(double t, double u) { return {t, -u, u, t}; }

  double det() const { return a00 * a11 - a01 * a10; }
  double trace() const { return a00 + a11; }
  double norm2() const { return a00 * a00 + a01 * a01 + a10 * a10 + a11 * a11; }
  double norm() const { return std::sqrt(norm2()); }

  Mat2 operator*(const Mat2& o) const {
    return {a00 * o.a00 + a01 * o.a10, a00 * o.a01 + a01 * o.a11,
            a10 * o.a00 + a11 * o.a10, a10 * o.a01 + a11 * o.a11};
  }
  Mat2 operator+(const Mat2& o) const { return {a00 + o.a00, a01 + o.a01, a10 + o.a10, a11 + o.a11}; }
  Mat2 operator-(const Mat2& o) const { return {a00 - o.a00, a01 - o.a01, a10 - o.a10, a11 - o.a11}; }
  Mat2 operator*(double s) const { return {s * a00, s * a01, s * a10, s * a11}; }
  Mat2 operator-() const { return {-a00, -a01, -a10, -a11}; }

  Mat2 inverse() const {
    double d = det();
    if (d == 0.0) throw Error(Errc::SingularH, "singular 2x2 matrix");
    return {a11 / d, -a01 / d, -a10 / d, a00 / d};
  }
};

// An element of q, stored by its off-diagonal blocks: X = [[0, Y], [Z, 0]].
struct BlockVector {
  Mat2 Y, Z;

  BlockVector operator+(const BlockVector& o) const { return {Y + o.Y, Z + o.Z}; }
  BlockVector operator-(const BlockVector& o) const { return {Y - o.Y, Z - o.Z}; }
  BlockVector operator*(double s) const { return {Y * s, Z * s}; }
  BlockVector operator-() const { return {-Y, -Z}; }
  // positive-definite form tr(Y^T Y) + tr(Z^T Z); the squared coordinate norm
  double norm2() const { return Y.norm2() + Z.norm2(); }
  double norm() const { return std::sqrt(norm2()); }
};

struct HElement {
  Mat2 A, B;
  static HElement identity() { return {Mat2::identity(), Mat2::identity()}; }
  HElement operator*(const HElement& o) const { return {A * o.A, B * o.B}; }
};

struct OrbitInvariants {
  double Q = 0, S = 0, S0 = 0;
  cplx delta{0, 0}, u{0, 0}, v{0, 0};
};

enum class CartanClass { APP, APM, AMM, A2 };

inline const char* cartan_name(CartanClass c) {
  switch (c) {
    case CartanClass::APP: return "a++";
    case CartanClass::APM: return "a+-";
    case CartanClass::AMM: return "a--";
    case CartanClass::A2: return "a2";
  }
  return "?";
}

enum class RegularityClass {
  Regular,
  SemiRegularMult1,
  SemiRegularMult2,
  SemisimpleNonRegular,
  Nilpotent,
  Mixed,
};

inline const char* regularity_name(RegularityClass c) {
  switch (c) {
    case RegularityClass::Regular: return "Regular";
    case RegularityClass::SemiRegularMult1: return "SemiRegularMult1";
    case RegularityClass::SemiRegularMult2: return "SemiRegularMult2";
    case RegularityClass::SemisimpleNonRegular: return "SemisimpleNonRegular";
    case RegularityClass::Nilpotent: return "Nilpotent";
    case RegularityClass::Mixed: return "Mixed";
  }
  return "?";
}

inline OrbitInvariants invariants(const BlockVector& X) {
  OrbitInvariants inv;
  Mat2 M = X.Y * X.Z;
  inv.Q = M.trace();
  inv.S = X.Y.det() * X.Z.det();
  inv.S0 = inv.Q * inv.Q - 4.0 * inv.S;
  if (inv.S0 >= 0.0) {
    double d = std::sqrt(inv.S0);
    inv.delta = cplx(d, 0.0);
    // larger-magnitude root first to dodge cancellation, mate via S
    if (inv.Q >= 0.0) {
      double u = 0.5 * (inv.Q + d);
      double v = (u != 0.0) ? inv.S / u : 0.5 * (inv.Q - d);
      inv.u = cplx(u, 0.0);
      inv.v = cplx(v, 0.0);
    } else {
      double v = 0.5 * (inv.Q - d);
      double u = (v != 0.0) ? inv.S / v : 0.5 * (inv.Q + d);
      inv.u = cplx(u, 0.0);
      inv.v = cplx(v, 0.0);
    }
    if (inv.u.real() < inv.v.real()) std::swap(inv.u, inv.v);
  } else {
    double d = std::sqrt(-inv.S0);
    inv.delta = cplx(0.0, d);
    inv.u = cplx(0.5 * inv.Q, 0.5 * d);
    inv.v = std::conj(inv.u);
  }
  return inv;
}

enum class Involution { Sigma, Varpi, Negate };

inline BlockVector involution(const BlockVector& X, Involution which) {
  switch (which) {
    case Involution::Sigma:
    case Involution::Negate:
      return {-X.Y, -X.Z};  // sigma restricted to q is -id
    case Involution::Varpi:
      return {X.Y, -X.Z};
  }
  return X;
}

inline BlockVector adjoint(const HElement& h, const BlockVector& X, double tau_inv = 1e-12) {
  double sa = 1.0 + h.A.norm2();
  double sb = 1.0 + h.B.norm2();
  if (std::abs(h.A.det()) < tau_inv * sa || std::abs(h.B.det()) < tau_inv * sb)
    throw Error(Errc::SingularH, "h has (numerically) singular block");
  return {h.A * X.Y * h.B.inverse(), h.B * X.Z * h.A.inverse()};
}

struct ClassifyResult {
  RegularityClass cls = RegularityClass::Regular;
  bool in_U = false;
  bool in_Um = false;
  bool in_U3 = false;
  bool in_varpi_U3 = false;
  int vanishing_root = 0;  // for semi-regular mult-1: 1 if u ~ 0, 2 if v ~ 0
};

inline ClassifyResult classify(const BlockVector& X, double tol = 1e-9) {
  if (!(tol > 0.0)) throw Error(Errc::BadInput, "tol must be positive");
  OrbitInvariants inv = invariants(X);
  double s = X.norm2();
  double qs = 1.0 + s;          // scale of Q
  double ss = qs * qs;          // scale of S, S0
  ClassifyResult r;
  r.in_U = (std::abs(inv.Q) > tol * qs) || (std::abs(inv.S0) > tol * ss);
  r.in_Um = inv.S0 > tol * ss;
  double sqS = inv.S > 0.0 ? std::sqrt(inv.S) : 0.0;
  r.in_U3 = (inv.S > tol * ss) && (inv.Q + 2.0 * sqS > tol * qs);
  r.in_varpi_U3 = (inv.S > tol * ss) && (2.0 * sqS - inv.Q > tol * qs);

  double reg_scale = (1.0 + std::abs(inv.Q)) * (1.0 + std::abs(inv.Q)) * (1.0 + std::abs(inv.S));
  bool q_zero = std::abs(inv.Q) <= tol * qs;
  bool s_zero = std::abs(inv.S) <= tol * ss;
  bool s0_zero = std::abs(inv.S0) <= tol * ss;
  if (std::abs(inv.S) * std::abs(inv.S0) > tol * reg_scale) {
    r.cls = RegularityClass::Regular;
    return r;
  }
  if (q_zero && s_zero) {
    // char poly t^4: nilpotent (Cayley-Hamilton makes X^4 = 0)
    r.cls = RegularityClass::Nilpotent;
    return r;
  }
  double cube_scale = std::pow(1.0 + X.norm(), 3.0);
  double quad_scale = std::pow(1.0 + X.norm(), 2.0);
  double ss_tol = std::sqrt(tol);
  if (s_zero && !s0_zero) {
    // one mult-1 root vanishes (eigenvalues {+-sqrt(Q), 0, 0}); semisimple
    // iff the minimal polynomial divides t(t^2 - Q), i.e. X^3 = Q X
    Mat2 rm = X.Y * X.Z * X.Y - X.Y * inv.Q;
    Mat2 rn = X.Z * X.Y * X.Z - X.Z * inv.Q;
    bool semisimple =
        rm.norm() <= ss_tol * cube_scale && rn.norm() <= ss_tol * cube_scale;
    if (semisimple) {
      r.cls = RegularityClass::SemiRegularMult1;
      r.vanishing_root = std::abs(inv.u) <= std::abs(inv.v) ? 1 : 2;
    } else {
      r.cls = RegularityClass::Mixed;
    }
    return r;
  }
  if (s0_zero && !s_zero) {
    // u = v = Q/2 twice each; semisimple iff X^2 = (Q/2) I, i.e. YZ = ZY = (Q/2) I
    double u = 0.5 * inv.Q;
    Mat2 rm = X.Y * X.Z - Mat2::diag(u, u);
    Mat2 rn = X.Z * X.Y - Mat2::diag(u, u);
    bool semisimple =
        rm.norm() <= ss_tol * quad_scale && rn.norm() <= ss_tol * quad_scale;
    r.cls = semisimple ? RegularityClass::SemiRegularMult2 : RegularityClass::Mixed;
    return r;
  }
  r.cls = RegularityClass::Mixed;
  return r;
}

// Canonical Cartan representatives, fixed by the chamber conventions
// u1 >= u2 >= 0 (APP/AMM), u1, u2 >= 0 (APM), tau > 0, theta > 0 (A2).
inline BlockVector canonical_element(CartanClass cls, double p1, double p2) {
  switch (cls) {
    case CartanClass::APP:
      return {Mat2::diag(p1, p2), Mat2::diag(p1, p2)};
    case CartanClass::APM:
      return {Mat2::diag(p1, p2), Mat2::diag(p1, -p2)};
    case CartanClass::AMM:
      return {Mat2::diag(p1, p2), Mat2::diag(-p1, -p2)};
    case CartanClass::A2:
      return {Mat2::rot(p1, p2), Mat2::rot(p1, p2)};
  }
  return {};
}

struct NormalForm {
  CartanClass cls = CartanClass::APP;
  double p1 = 0, p2 = 0;
  HElement h;
};

namespace detail {

// Eigenvector of the 2x2 real matrix M for eigenvalue lam (possibly complex):
// pick the better-conditioned column of the adjugate construction.
inline std::array<cplx, 2> eigvec2(const Mat2& M, cplx lam) {
  std::array<cplx, 2> w1 = {cplx(M.a01), lam - M.a00};
  std::array<cplx, 2> w2 = {lam - M.a11, cplx(M.a10)};
  double n1 = std::norm(w1[0]) + std::norm(w1[1]);
  double n2 = std::norm(w2[0]) + std::norm(w2[1]);
  auto w = (n1 >= n2) ? w1 : w2;
  double nn = std::sqrt(std::norm(w[0]) + std::norm(w[1]));
  if (nn == 0.0) throw Error(Errc::IllConditioned, "degenerate eigenvector");
  return {w[0] / nn, w[1] / nn};
}

}  // namespace detail

inline NormalForm normal_form(const BlockVector& X, double tol = 1e-9, double cond_cap = 1e8) {
  ClassifyResult cr = classify(X, tol);
  if (cr.cls != RegularityClass::Regular)
    throw Error(Errc::NotRegular, "normal_form requires a regular element");
  OrbitInvariants inv = invariants(X);
  Mat2 M = X.Y * X.Z;
  NormalForm nf;
  Mat2 Pinv;  // columns are the chosen basis
  double m1 = 0, m2 = 0;  // slot eigenvalues (real case)
  if (inv.S0 > 0.0) {
    double u = inv.u.real(), v = inv.v.real();
    if (u > 0 && v > 0) {
      nf.cls = CartanClass::APP;
      m1 = u;
      m2 = v;  // descending
      nf.p1 = std::sqrt(m1);
      nf.p2 = std::sqrt(m2);
    } else if (u > 0 && v < 0) {
      nf.cls = CartanClass::APM;
      m1 = u;
      m2 = v;  // positive slot first
      nf.p1 = std::sqrt(u);
      nf.p2 = std::sqrt(-v);
    } else {
      nf.cls = CartanClass::AMM;
      m1 = v;
      m2 = u;  // ascending (v <= u < 0)
      nf.p1 = std::sqrt(-m1);
      nf.p2 = std::sqrt(-m2);
    }
    auto w1 = detail::eigvec2(M, cplx(m1));
    auto w2 = detail::eigvec2(M, cplx(m2));
    Pinv = {w1[0].real(), w2[0].real(), w1[1].real(), w2[1].real()};
  } else {
    nf.cls = CartanClass::A2;
    cplx root = std::sqrt(inv.u);  // principal branch: tau > 0, theta > 0
    nf.p1 = root.real();
    nf.p2 = root.imag();
    auto w = detail::eigvec2(M, inv.u);
    // basis (Im w, Re w) conjugates M to [[x, -y], [y, x]]
    Pinv = {w[0].imag(), w[0].real(), w[1].imag(), w[1].real()};
  }
  double dp = Pinv.det();
  if (std::abs(dp) < 1e-14 * (1.0 + Pinv.norm2()))
    throw Error(Errc::IllConditioned, "eigenvector basis is singular");
  Mat2 P = Pinv.inverse();
  if (P.norm() * Pinv.norm() > cond_cap)
    throw Error(Errc::IllConditioned, "eigenvector basis condition number above cap");
  double zs = 1.0 + X.Z.norm2();
  if (std::abs(X.Z.det()) < 1e-13 * zs)
    throw Error(Errc::IllConditioned, "Z block nearly singular");
  Mat2 second;  // the D' (real) or M (complex) factor
  switch (nf.cls) {
    case CartanClass::APP: second = Mat2::diag(nf.p1, nf.p2); break;
    case CartanClass::APM: second = Mat2::diag(nf.p1, -nf.p2); break;
    case CartanClass::AMM: second = Mat2::diag(-nf.p1, -nf.p2); break;
    case CartanClass::A2: second = Mat2::rot(nf.p1, nf.p2); break;
  }
  nf.h = {P, second * P * X.Z.inverse()};
  return nf;
}

// Complex-valued linear functional on the two Cartan parameters.
struct RootFunctional {
  cplx c1, c2;
  cplx eval(double p1, double p2) const { return c1 * p1 + c2 * p2; }
};

struct CartanData {
  CartanClass cls;
  std::array<RootFunctional, 4> roots;  // alpha1, alpha2, beta1, beta2
  std::array<int, 4> multiplicities;    // (1, 1, 2, 2)
  std::vector<HElement> weyl;
  // basis of the Cartan subspace, as parameter pairs
  std::array<BlockVector, 2> basis() const {
    return {canonical_element(cls, 1.0, 0.0), canonical_element(cls, 0.0, 1.0)};
  }
};

inline CartanData cartan_data(CartanClass cls) {
  CartanData cd;
  cd.cls = cls;
  cd.multiplicities = {1, 1, 2, 2};
  const cplx I(0.0, 1.0);
  switch (cls) {
    case CartanClass::APP:
      cd.roots[0] = {2.0, 0.0};
      cd.roots[1] = {0.0, 2.0};
      break;
    case CartanClass::APM:
      cd.roots[0] = {2.0, 0.0};
      cd.roots[1] = {0.0, 2.0 * I};
      break;
    case CartanClass::AMM:
      cd.roots[0] = {2.0 * I, 0.0};
      cd.roots[1] = {0.0, 2.0 * I};
      break;
    case CartanClass::A2:
      cd.roots[0] = {2.0, 2.0 * I};
      cd.roots[1] = {2.0, -2.0 * I};
      break;
  }
  cd.roots[2] = {0.5 * (cd.roots[0].c1 - cd.roots[1].c1), 0.5 * (cd.roots[0].c2 - cd.roots[1].c2)};
  cd.roots[3] = {0.5 * (cd.roots[0].c1 + cd.roots[1].c1), 0.5 * (cd.roots[0].c2 + cd.roots[1].c2)};

  HElement e = HElement::identity();
  HElement kap{Mat2::swap(), Mat2::swap()};
  HElement rho{Mat2::diag(1, -1), Mat2::identity()};
  HElement neg{Mat2::identity(), Mat2::diag(-1, -1)};  // acts as -id on q
  auto push_with_neg = [&](const HElement& h) {
    cd.weyl.push_back(h);
    cd.weyl.push_back(neg * h);
  };
  switch (cls) {
    case CartanClass::APP:
    case CartanClass::AMM:
      push_with_neg(e);
      push_with_neg(kap);
      push_with_neg(rho);
      push_with_neg(kap * rho);
      break;
    case CartanClass::APM:
      push_with_neg(e);
      push_with_neg(rho);
      break;
    case CartanClass::A2:
      push_with_neg(e);
      push_with_neg(kap);
      break;
  }
  return cd;
}

}  // namespace sympair

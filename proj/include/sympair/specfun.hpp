#pragma once

#include <cmath>
#include <complex>

#include "sympair/errors.hpp"
#include "sympair/numerics.hpp"

namespace sympair {

// Solutions of the degenerate Bessel equation 4(z y'' + y') = lambda y:
//   Phi:      entire power series, Phi(0) = 1
//   WSmall:   the companion entire series w (coefficients a_n = 2*gamma - 2 H_n)
//   WComplex: w(z) + log(z) Phi(z), principal branch, z not on (-inf, 0]
//   WReal:    w(t) + log|t| Phi(t), t real nonzero
enum class SeriesKind { Phi, WSmall, WComplex, WReal };

struct SeriesSolution {
  cplx lambda{0.0, 0.0};
  SeriesKind kind = SeriesKind::Phi;
  int max_terms = 500;
  double tail_tol = 1e-14;
};

// coefficient a_n of the companion series w, built by the recurrence
// a_0 = 2 gamma, a_{n+1} = a_n - 2/(n+1)
inline double companion_coefficient(int n) {
  double a = 2.0 * euler_gamma;
  for (int i = 1; i <= n; ++i) a -= 2.0 / i;
  return a;
}

namespace detail {

struct SeriesEval {
  cplx y, dy, d2y;  // value and first two derivatives of the pure series part
};

// Sums the Phi series (with_a = false) or the w series (with_a = true):
//   sum_n c_n (lambda z)^n / (4^n (n!)^2),  c_n = 1 or a_n = 2 gamma - 2 H_n.
inline SeriesEval sum_series(cplx lambda, cplx z, bool with_a, int max_terms, double tail_tol) {
  if (std::abs(lambda * z) > 1e4)
    throw Error(Errc::TruncationFailure, "|lambda z| too large for direct series evaluation");
  const double a0 = 2.0 * euler_gamma;
  if (z == cplx(0.0)) {
    double a1 = a0 - 2.0, a2 = a0 - 3.0;
    cplx y = with_a ? cplx(a0) : cplx(1.0);
    cplx dy = (with_a ? a1 : 1.0) * lambda / 4.0;
    cplx d2y = (with_a ? a2 : 1.0) * lambda * lambda / 32.0;
    return {y, dy, d2y};
  }
  cplx term(1.0, 0.0);  // (lambda z)^n / (4^n (n!)^2)
  double a = a0;
  cplx y = with_a ? cplx(a) : cplx(1.0);
  cplx dy(0.0, 0.0), d2y(0.0, 0.0);
  cplx lz = lambda * z;
  bool converged = false;
  for (int n = 1; n <= max_terms; ++n) {
    term *= lz / (4.0 * double(n) * double(n));
    if (with_a) a -= 2.0 / double(n);
    cplx c = with_a ? a * term : term;
    y += c;
    dy += c * (double(n) / z);
    if (n >= 2) d2y += c * (double(n) * double(n - 1) / (z * z));
    if (std::abs(c) < tail_tol * (1.0 + std::abs(y))) {
      converged = true;
      break;
    }
  }
  if (!converged && std::abs(term) >= tail_tol * (1.0 + std::abs(y)))
    throw Error(Errc::TruncationFailure, "series did not reach tail tolerance");
  return {y, dy, d2y};
}

// one pass of the shared term recurrence giving both series at z
struct PhiWPair {
  cplx phi, w;
};

inline PhiWPair sum_series_both(cplx lambda, cplx z, int max_terms, double tail_tol) {
  if (std::abs(lambda * z) > 1e4)
    throw Error(Errc::TruncationFailure, "|lambda z| too large for direct series evaluation");
  const double a0 = 2.0 * euler_gamma;
  cplx term(1.0, 0.0);
  double a = a0;
  cplx phi(1.0, 0.0), w(a0, 0.0);
  cplx lz = lambda * z;
  for (int n = 1; n <= max_terms; ++n) {
    term *= lz / (4.0 * double(n) * double(n));
    a -= 2.0 / double(n);
    phi += term;
    w += a * term;
    if (std::abs(term) * (1.0 + std::abs(a)) < tail_tol * (1.0 + std::abs(phi) + std::abs(w)))
      return {phi, w};
  }
  throw Error(Errc::TruncationFailure, "series did not reach tail tolerance");
}

inline void check_branch(const SeriesSolution& s, cplx z) {
  if (s.kind == SeriesKind::WComplex) {
    if (z.imag() == 0.0 && z.real() <= 0.0)
      throw Error(Errc::BranchViolation, "W is defined off the cut (-inf, 0]");
  } else if (s.kind == SeriesKind::WReal) {
    if (z.imag() != 0.0) throw Error(Errc::BranchViolation, "W^r takes real arguments");
    if (z.real() == 0.0) throw Error(Errc::BranchViolation, "W^r is singular at 0");
  }
}

}  // namespace detail

inline cplx eval(const SeriesSolution& s, cplx z) {
  detail::check_branch(s, z);
  switch (s.kind) {
    case SeriesKind::Phi:
      return detail::sum_series(s.lambda, z, false, s.max_terms, s.tail_tol).y;
    case SeriesKind::WSmall:
      return detail::sum_series(s.lambda, z, true, s.max_terms, s.tail_tol).y;
    case SeriesKind::WComplex: {
      auto w = detail::sum_series(s.lambda, z, true, s.max_terms, s.tail_tol);
      auto p = detail::sum_series(s.lambda, z, false, s.max_terms, s.tail_tol);
      return w.y + std::log(z) * p.y;
    }
    case SeriesKind::WReal: {
      auto w = detail::sum_series(s.lambda, z, true, s.max_terms, s.tail_tol);
      auto p = detail::sum_series(s.lambda, z, false, s.max_terms, s.tail_tol);
      return w.y + std::log(std::abs(z.real())) * p.y;
    }
  }
  return {};
}

inline cplx eval_d(const SeriesSolution& s, cplx z) {
  detail::check_branch(s, z);
  switch (s.kind) {
    case SeriesKind::Phi:
      return detail::sum_series(s.lambda, z, false, s.max_terms, s.tail_tol).dy;
    case SeriesKind::WSmall:
      return detail::sum_series(s.lambda, z, true, s.max_terms, s.tail_tol).dy;
    case SeriesKind::WComplex: {
      auto w = detail::sum_series(s.lambda, z, true, s.max_terms, s.tail_tol);
      auto p = detail::sum_series(s.lambda, z, false, s.max_terms, s.tail_tol);
      return w.dy + p.y / z + std::log(z) * p.dy;
    }
    case SeriesKind::WReal: {
      auto w = detail::sum_series(s.lambda, z, true, s.max_terms, s.tail_tol);
      auto p = detail::sum_series(s.lambda, z, false, s.max_terms, s.tail_tol);
      return w.dy + p.y / z + std::log(std::abs(z.real())) * p.dy;
    }
  }
  return {};
}

// 4(z y'' + y') - lambda y, log terms differentiated analytically.
inline cplx ode_residual(const SeriesSolution& s, cplx z) {
  detail::check_branch(s, z);
  cplx y, dy, d2y;
  if (s.kind == SeriesKind::Phi || s.kind == SeriesKind::WSmall) {
    auto e = detail::sum_series(s.lambda, z, s.kind == SeriesKind::WSmall, s.max_terms, s.tail_tol);
    y = e.y;
    dy = e.dy;
    d2y = e.d2y;
  } else {
    auto w = detail::sum_series(s.lambda, z, true, s.max_terms, s.tail_tol);
    auto p = detail::sum_series(s.lambda, z, false, s.max_terms, s.tail_tol);
    cplx lg = (s.kind == SeriesKind::WComplex) ? std::log(z) : cplx(std::log(std::abs(z.real())));
    y = w.y + lg * p.y;
    dy = w.dy + p.y / z + lg * p.dy;
    d2y = w.d2y - p.y / (z * z) + 2.0 * p.dy / z + lg * p.d2y;
  }
  return 4.0 * (z * d2y + dy) - s.lambda * y;
}

struct SolutionPair {
  SeriesSolution first;   // for lambda1
  SeriesSolution second;  // for lambda2
};

inline void require_regular_character(cplx l1, cplx l2) {
  if (l1 * l2 * (l1 - l2) == cplx(0.0))
    throw Error(Errc::BadInput, "character must satisfy l1 l2 (l1 - l2) != 0");
}

struct BracketValues {
  cplx splus;     // f(x1) g(x2) + f(x2) g(x1)
  cplx bracket;   // f(x1) g(x2) - f(x2) g(x1)
  cplx s_lambda;  // branch-free singular combination
};

inline cplx splus_of(const SeriesSolution& f, const SeriesSolution& g, cplx x1, cplx x2) {
  return eval(f, x1) * eval(g, x2) + eval(f, x2) * eval(g, x1);
}

inline cplx bracket_of(const SeriesSolution& f, const SeriesSolution& g, cplx x1, cplx x2) {
  return eval(f, x1) * eval(g, x2) - eval(f, x2) * eval(g, x1);
}

// S_{l1,l2}(z1, z2) = ([Phi_{l1}, w_{l2}] + [w_{l1}, Phi_{l2}])(z1, z2)
//                     + log|z1 z2| [Phi_{l1}, Phi_{l2}](z1, z2)
inline cplx s_lambda(cplx l1, cplx l2, cplx z1, cplx z2) {
  if (z1 == cplx(0.0) || z2 == cplx(0.0))
    throw Error(Errc::LogPole, "s_lambda has a log singularity at z = 0");
  SeriesSolution p1{l1, SeriesKind::Phi}, p2{l2, SeriesKind::Phi};
  SeriesSolution w1{l1, SeriesKind::WSmall}, w2{l2, SeriesKind::WSmall};
  cplx b = bracket_of(p1, w2, z1, z2) + bracket_of(w1, p2, z1, z2);
  return b + std::log(std::abs(z1 * z2)) * bracket_of(p1, p2, z1, z2);
}

inline BracketValues brackets(const SolutionPair& pair, cplx x1, cplx x2) {
  BracketValues out;
  out.splus = splus_of(pair.first, pair.second, x1, x2);
  out.bracket = bracket_of(pair.first, pair.second, x1, x2);
  out.s_lambda = s_lambda(pair.first.lambda, pair.second.lambda, x1, x2);
  return out;
}

// [f, g](x1, x2) / (x1 - x2) for entire kinds, continuous across x1 = x2.
// Near the diagonal the quotient is replaced by the line-integral identity
// evaluated with a fixed Gauss-Legendre rule.
inline cplx divided_bracket(const SeriesSolution& f, const SeriesSolution& g, cplx x1, cplx x2,
                            double switch_scale = 1e-3, int gl_order = 32) {
  if (f.kind == SeriesKind::WComplex || f.kind == SeriesKind::WReal ||
      g.kind == SeriesKind::WComplex || g.kind == SeriesKind::WReal)
    throw Error(Errc::BranchViolation, "divided_bracket needs entire series kinds");
  double thresh = switch_scale * (1.0 + std::abs(x1) + std::abs(x2));
  if (std::abs(x1 - x2) >= thresh)
    return bracket_of(f, g, x1, x2) / (x1 - x2);
  static const Quadrature gl32 = gauss_legendre(32);
  const Quadrature& gl = (gl_order == 32) ? gl32 : gauss_legendre(gl_order);
  cplx x = 0.5 * (x1 + x2);
  cplx h = 0.5 * (x1 - x2);
  cplx acc(0.0, 0.0);
  for (size_t i = 0; i < gl.nodes.size(); ++i) {
    cplx zp = x + gl.nodes[i] * h;
    cplx zm = x - gl.nodes[i] * h;
    acc += gl.weights[i] * (eval_d(f, zp) * eval(g, zm) - eval(f, zp) * eval_d(g, zm));
  }
  return 0.5 * acc;
}

}  // namespace sympair

#include "doctest.h"

#include <cmath>
#include <complex>

#include "sympair/dunkl.hpp"
#include "sympair/rng.hpp"
#include "sympair/specfun.hpp"

using namespace sympair;

namespace {

BivariatePolynomial random_poly(CounterRng& rng, int max_deg) {
  BivariatePolynomial p;
  for (int i = 0; i <= max_deg; ++i)
    for (int j = 0; i + j <= max_deg; ++j) {
      long long c = static_cast<long long>(rng.uniform(-9.0, 10.0));
      if (c != 0) p.set(i, j, Rational(c));
    }
  return p;
}

const std::array<Rational, 2> e1{Rational(1), Rational(0)};
const std::array<Rational, 2> e2{Rational(0), Rational(1)};

}  // namespace

TEST_CASE("dunkl operator on simple polynomials") {
  MultiplicityFunction k = MultiplicityFunction::geometric();
  CHECK(dunkl_apply(e1, k, BivariatePolynomial::constant(Rational(1))).is_zero());

  // hand expansion: T_{e1}(k) x1 = 1 + 1 + 1 + 1 = 4
  BivariatePolynomial x1 = BivariatePolynomial::monomial(1, 0);
  BivariatePolynomial t = dunkl_apply(e1, k, x1);
  CHECK(t.degree() == 0);
  CHECK(t.coeff(0, 0) == Rational(4));

  // hand expansion at degree 2: T_{e1}(k) x1^2 = x1 + 2 k_a x1 + 2 k_b x1 = 4 x1
  BivariatePolynomial x1sq = BivariatePolynomial::monomial(2, 0);
  BivariatePolynomial t2 = dunkl_apply(e1, k, x1sq);
  BivariatePolynomial expect = BivariatePolynomial::monomial(1, 0, Rational(4));
  CHECK(t2 == expect);
}

TEST_CASE("dunkl operators commute exactly") {
  CounterRng rng(8101);
  MultiplicityFunction paper = MultiplicityFunction::geometric();
  MultiplicityFunction other{Rational(3, 7), Rational(-2, 5)};
  for (int trial = 0; trial < 200; ++trial) {
    BivariatePolynomial p = random_poly(rng, 8);
    const MultiplicityFunction& k = (trial % 3 == 0) ? other : paper;
    BivariatePolynomial ab = dunkl_apply(e1, k, dunkl_apply(e2, k, p));
    BivariatePolynomial ba = dunkl_apply(e2, k, dunkl_apply(e1, k, p));
    CHECK((ab - ba).is_zero());
  }
}

TEST_CASE("radial compositions reproduce the invariant-operator constants") {
  BivariatePolynomial q_poly =
      BivariatePolynomial::monomial(2, 0) + BivariatePolynomial::monomial(0, 2);
  BivariatePolynomial s_poly = BivariatePolynomial::monomial(2, 2);

  // d(Q) Q = 16 and d(S) S = 64, through the full Dunkl route
  BivariatePolynomial dq = radial_q_s(KShift::Geometric, RadialSelector::QRestriction, q_poly);
  CHECK(dq == BivariatePolynomial::constant(Rational(16)));
  BivariatePolynomial ds = radial_q_s(KShift::Geometric, RadialSelector::SRestriction, s_poly);
  CHECK(ds == BivariatePolynomial::constant(Rational(64)));

  // and through the conjugated route: D(1-k) applied to delta * target equals
  // 16 delta resp. 64 delta, with delta = x1^2 - x2^2
  BivariatePolynomial delta =
      BivariatePolynomial::monomial(2, 0) + BivariatePolynomial::monomial(0, 2, Rational(-1));
  MultiplicityFunction km = MultiplicityFunction::geometric().one_minus();
  auto t1sq = [&](const BivariatePolynomial& p) {
    return dunkl_apply(e1, km, dunkl_apply(e1, km, p));
  };
  auto t2sq = [&](const BivariatePolynomial& p) {
    return dunkl_apply(e2, km, dunkl_apply(e2, km, p));
  };
  BivariatePolynomial lhs_q = t1sq(delta * q_poly) + t2sq(delta * q_poly);
  CHECK(lhs_q == delta * Rational(16));
  BivariatePolynomial lhs_s = t1sq(t2sq(delta * s_poly));
  CHECK(lhs_s == delta * Rational(64));

  // on invariants, the shifted operator is the plain differential one:
  // (L1 + L2)(t1 + t2) = 8
  BivariatePolynomial plain = radial_q_s(KShift::OneMinus, RadialSelector::QRestriction, q_poly);
  CHECK(plain == BivariatePolynomial::constant(Rational(8)));

  CHECK_THROWS_AS(
      radial_q_s(KShift::Geometric, RadialSelector::QRestriction,
                 BivariatePolynomial::monomial(1, 0)),
      Error);
}

TEST_CASE("opdam conjugation identity on invariant test functions") {
  MultiplicityFunction k = MultiplicityFunction::geometric();
  std::vector<std::array<double, 2>> pts = {{1.3, 0.6}, {1.9, 1.1}, {0.9, 2.2}, {2.4, 0.8}};

  CplxFn2 constant = [](double, double) { return cplx(1.0); };
  OpdamReport rc = opdam_check(RadialSelector::QRestriction, k, constant, pts);
  CHECK(rc.max_residual < 1e-9);
  CHECK(rc.max_value < 1e-9);

  CplxFn2 qfn = [](double x1, double x2) { return cplx(x1 * x1 + x2 * x2); };
  OpdamReport rq = opdam_check(RadialSelector::QRestriction, k, qfn, pts);
  CHECK(rq.max_residual < 1e-7);
  CHECK(rq.max_value == doctest::Approx(16.0).epsilon(1e-6));

  OpdamReport rs = opdam_check(RadialSelector::SRestriction, k, qfn, pts);
  CHECK(rs.max_residual < 1e-6);

  CplxFn2 smooth = [](double x1, double x2) {
    double t1 = x1 * x1, t2 = x2 * x2;
    return cplx(std::exp(-0.25 * (t1 + t2)) * (1.0 + t1 * t2));
  };
  OpdamReport r1 = opdam_check(RadialSelector::QRestriction, k, smooth, pts);
  CHECK(r1.max_residual < 1e-6 * (1.0 + r1.max_value));
  OpdamReport r2 = opdam_check(RadialSelector::SRestriction, k, smooth, pts);
  CHECK(r2.max_residual < 1e-5 * (1.0 + r2.max_value));

  // the two conjugators differ by a locally constant sign only
  std::vector<std::array<double, 2>> mixed = {{1.3, 0.6}, {0.6, 1.3}};
  OpdamReport d1 = opdam_check(RadialSelector::QRestriction, k, smooth, mixed, Conjugator::Delta);
  OpdamReport d2 = opdam_check(RadialSelector::QRestriction, k, smooth, mixed, Conjugator::IkHalf);
  CHECK(d1.max_residual == doctest::Approx(d2.max_residual).epsilon(1e-9));

  // product of eigenfunctions: the shifted operator is L1 + L2 in the squared
  // coordinates, so the symmetric product carries Q-side eigenvalue l1 + l2
  cplx l1(1.5, 0.0), l2(-0.75, 0.0);
  SeriesSolution p1{l1, SeriesKind::Phi}, p2{l2, SeriesKind::Phi};
  CplxFn2 prod = [&](double x1, double x2) {
    cplx t1(x1 * x1), t2(x2 * x2);
    return eval(p1, t1) * eval(p2, t2) + eval(p1, t2) * eval(p2, t1);
  };
  MultiplicityFunction km = k.one_minus();
  for (auto& pt : pts) {
    std::array<double, 2> ue1{1.0, 0.0}, ue2{0.0, 1.0};
    auto tsq = [&](const std::array<double, 2>& xi, double a, double b) {
      CplxFn2 inner = [&](double u, double v) {
        return dunkl_apply_numeric(xi, km, prod, u, v, 1e-2);
      };
      return dunkl_apply_numeric(xi, km, inner, a, b, 1e-2);
    };
    cplx applied = tsq(ue1, pt[0], pt[1]) + tsq(ue2, pt[0], pt[1]);
    cplx want = (l1 + l2) * prod(pt[0], pt[1]);
    CHECK(std::abs(applied - want) < 1e-6 * (1.0 + std::abs(want)));
  }
  // both sides of the conjugation identity agree on the product as well
  OpdamReport rp = opdam_check(RadialSelector::QRestriction, k, prod, pts);
  CHECK(rp.max_residual < 1e-6 * (1.0 + rp.max_value));
}

TEST_CASE("radial residuals across the Cartan classes") {
  // F = restriction of Q: the conjugated operator returns the constant 16
  auto q_restr = [](CartanClass cls) {
    return CplxFn2([cls](double p1, double p2) {
      switch (cls) {
        case CartanClass::APP: return cplx(p1 * p1 + p2 * p2);
        case CartanClass::APM: return cplx(p1 * p1 - p2 * p2);
        case CartanClass::AMM: return cplx(-p1 * p1 - p2 * p2);
        case CartanClass::A2: return cplx(2.0 * (p1 * p1 - p2 * p2));
      }
      return cplx(0.0);
    });
  };
  for (CartanClass cls :
       {CartanClass::APP, CartanClass::APM, CartanClass::AMM, CartanClass::A2}) {
    cplx raw = radial_residual(cls, InvariantOp::Q, q_restr(cls), 1.7, 0.6, cplx(0.0));
    CHECK(raw.real() == doctest::Approx(16.0).epsilon(1e-7));
    CHECK(std::abs(raw.imag()) < 1e-6);
  }

  // F = restriction of S: d(S) S = 64
  auto s_restr = [](CartanClass cls) {
    return CplxFn2([cls](double p1, double p2) {
      switch (cls) {
        case CartanClass::APP: return cplx(p1 * p1 * p2 * p2);
        case CartanClass::APM: return cplx(-p1 * p1 * p2 * p2);
        case CartanClass::AMM: return cplx(p1 * p1 * p2 * p2);
        case CartanClass::A2: {
          double m = p1 * p1 + p2 * p2;
          return cplx(m * m);
        }
      }
      return cplx(0.0);
    });
  };
  for (CartanClass cls :
       {CartanClass::APP, CartanClass::APM, CartanClass::AMM, CartanClass::A2}) {
    cplx raw = radial_residual(cls, InvariantOp::S, s_restr(cls), 1.7, 0.6, cplx(0.0));
    CHECK(raw.real() == doctest::Approx(64.0).epsilon(1e-5));
    CHECK(std::abs(raw.imag()) < 1e-4);
  }

  // eigenfunction: S+(Phi, Phi)(u, v)/delta with both operators
  cplx l1(1.5, 0.0), l2(-0.75, 0.0);
  SeriesSolution p1{l1, SeriesKind::Phi}, p2{l2, SeriesKind::Phi};
  CplxFn2 f_app = [&](double a, double b) {
    cplx u(a * a), v(b * b);
    cplx psi = eval(p1, u) * eval(p2, v) + eval(p1, v) * eval(p2, u);
    return psi / (u - v);
  };
  cplx rq = radial_residual(CartanClass::APP, InvariantOp::Q, f_app, 1.4, 0.5, l1 + l2);
  CHECK(std::abs(rq) < 1e-6 * (1.0 + std::abs(f_app(1.4, 0.5))));
  cplx rs = radial_residual(CartanClass::APP, InvariantOp::S, f_app, 1.4, 0.5, l1 * l2);
  CHECK(std::abs(rs) < 1e-5 * (1.0 + std::abs(f_app(1.4, 0.5))));

  // a2: Psi_c = [Phi, Phi](z, zbar), F = Psi_c / delta
  CplxFn2 f_a2 = [&](double tau, double theta) {
    cplx z(tau * tau - theta * theta, 2.0 * tau * theta);
    cplx zb = std::conj(z);
    cplx psi = eval(p1, z) * eval(p2, zb) - eval(p1, zb) * eval(p2, z);
    return psi / (z - zb);
  };
  cplx ra = radial_residual(CartanClass::A2, InvariantOp::Q, f_a2, 1.1, 0.7, l1 + l2);
  CHECK(std::abs(ra) < 1e-6 * (1.0 + std::abs(f_a2(1.1, 0.7))));
  cplx ras = radial_residual(CartanClass::A2, InvariantOp::S, f_a2, 1.1, 0.7, l1 * l2);
  CHECK(std::abs(ras) < 1e-5 * (1.0 + std::abs(f_a2(1.1, 0.7))));

  // F = 0
  CplxFn2 zero = [](double, double) { return cplx(0.0); };
  CHECK(std::abs(radial_residual(CartanClass::APP, InvariantOp::Q, zero, 1.0, 0.4, cplx(2.0))) ==
        0.0);

  // wall guard
  CHECK_THROWS_AS(
      radial_residual(CartanClass::APP, InvariantOp::Q, zero, 1.0, 0.99, cplx(0.0)), Error);
}

#include "doctest.h"

#include <cmath>
#include <complex>

#include "sympair/numerics.hpp"
#include "sympair/specfun.hpp"

using namespace sympair;

TEST_CASE("series values at zero") {
  SeriesSolution phi{cplx(2.0, 1.0), SeriesKind::Phi};
  CHECK(std::abs(eval(phi, 0.0) - 1.0) == 0.0);
  SeriesSolution w{cplx(2.0, 1.0), SeriesKind::WSmall};
  CHECK(eval(w, 0.0).real() == doctest::Approx(2.0 * euler_gamma).epsilon(1e-15));
  CHECK(eval(w, 0.0).real() == doctest::Approx(1.15443132980306572).epsilon(1e-12));
}

TEST_CASE("Phi matches the modified Bessel function I0(sqrt(lambda t))") {
  // independent evaluation through the standard library
  SeriesSolution phi{cplx(1.0, 0.0), SeriesKind::Phi};
  double got = eval(phi, 4.0).real();
  double want = std::cyl_bessel_i(0.0, 2.0);
  CHECK(got == doctest::Approx(want).epsilon(1e-13));
  for (double t : {0.1, 0.5, 1.0, 2.5, 9.0}) {
    double a = eval(phi, t).real();
    double b = std::cyl_bessel_i(0.0, std::sqrt(t));
    CHECK(a == doctest::Approx(b).epsilon(1e-12));
  }
}

TEST_CASE("ode residuals vanish to truncation accuracy") {
  SeriesSolution phi{cplx(3.0, 2.0), SeriesKind::Phi};
  cplx z(1.0, -1.0);
  CHECK(std::abs(ode_residual(phi, z)) < 1e-10 * (1.0 + std::abs(eval(phi, z))));

  SeriesSolution wr{cplx(2.0, 0.0), SeriesKind::WReal};
  CHECK(std::abs(ode_residual(wr, -0.7)) < 1e-10 * (1.0 + std::abs(eval(wr, -0.7))));

  SeriesSolution zero_lambda{cplx(0.0, 0.0), SeriesKind::Phi};
  CHECK(std::abs(ode_residual(zero_lambda, cplx(0.3, 0.2))) < 1e-14);

  // 20 x 20 grid in (lambda, z); Phi and W are the solution kinds
  for (int a = 0; a < 20; ++a) {
    for (int b = 0; b < 20; ++b) {
      cplx lam = cplx(-3.0 + 0.35 * a, -1.0 + 0.1 * a);
      cplx z = cplx(-2.0 + 0.21 * b, 0.4 + 0.15 * b);
      for (SeriesKind kind : {SeriesKind::Phi, SeriesKind::WComplex}) {
        SeriesSolution s{lam, kind};
        cplx r = ode_residual(s, z);
        CHECK(std::abs(r) < 1e-10 * (1.0 + std::abs(eval(s, z))));
      }
    }
  }

  // the companion series alone is not a solution: L w - lambda w = -8 Phi'
  {
    SeriesSolution w{cplx(2.0, 0.5), SeriesKind::WSmall};
    SeriesSolution phi{cplx(2.0, 0.5), SeriesKind::Phi};
    cplx z(0.7, 0.3);
    CHECK(std::abs(ode_residual(w, z) + 8.0 * eval_d(phi, z)) <
          1e-11 * (1.0 + std::abs(eval_d(phi, z))));
  }
}

TEST_CASE("branch constraints") {
  SeriesSolution wc{cplx(1.0, 0.0), SeriesKind::WComplex};
  CHECK_THROWS_AS(eval(wc, cplx(-1.0, 0.0)), Error);
  SeriesSolution wr{cplx(1.0, 0.0), SeriesKind::WReal};
  CHECK_THROWS_AS(eval(wr, cplx(0.0, 0.0)), Error);
  CHECK_THROWS_AS(eval(wr, cplx(1.0, 0.5)), Error);
  SeriesSolution phi{cplx(1.0, 0.0), SeriesKind::Phi};
  CHECK_THROWS_AS(eval(phi, cplx(2e4, 0.0)), Error);  // refuses |lambda z| > 1e4
}

TEST_CASE("Abel identity t (Phi W' - Phi' W) = 1") {
  for (cplx lam : {cplx(1.0, 0.0), cplx(2.0, 1.0), cplx(-3.0, 0.0)}) {
    SeriesSolution phi{lam, SeriesKind::Phi};
    SeriesSolution wr{lam, SeriesKind::WReal};
    for (int k = 0; k < 100; ++k) {
      double t = std::pow(10.0, -6.0 + 8.0 * k / 99.0);
      if (std::abs(lam) * t > 1e4) continue;
      for (double sgn : {1.0, -1.0}) {
        double tt = sgn * t;
        cplx lhs = tt * (eval(phi, tt) * eval_d(wr, tt) - eval_d(phi, tt) * eval(wr, tt));
        double scale =
            1.0 + std::abs(tt) * (std::abs(eval(phi, tt)) * std::abs(eval_d(wr, tt)) +
                                  std::abs(eval_d(phi, tt)) * std::abs(eval(wr, tt)));
        CHECK(std::abs(lhs - 1.0) < 1e-9 * scale);
      }
    }
  }
}

TEST_CASE("companion coefficients follow 2 gamma - 2 H_n") {
  double H = 0.0;
  for (int n = 1; n <= 1000; ++n) {
    H += 1.0 / n;
    double a = companion_coefficient(n);
    double ref = 2.0 * euler_gamma - 2.0 * H;
    CHECK(std::abs(a - ref) < 1e-13);
  }
}

TEST_CASE("brackets") {
  SolutionPair pair{{cplx(1.5, 0.0), SeriesKind::Phi}, {cplx(-0.75, 0.0), SeriesKind::Phi}};
  require_regular_character(pair.first.lambda, pair.second.lambda);

  BracketValues b = brackets(pair, 0.37, 0.37);
  CHECK(std::abs(b.bracket) < 1e-15);

  // s_lambda(z, conj z) agrees with the principal-branch combination for Im z > 0
  cplx l1(1.5, 0.0), l2(-0.75, 0.0);
  for (cplx z : {cplx(0.5, 0.8), cplx(-1.2, 0.4), cplx(2.0, 0.1)}) {
    SeriesSolution p1{l1, SeriesKind::Phi}, p2{l2, SeriesKind::Phi};
    SeriesSolution W1{l1, SeriesKind::WComplex}, W2{l2, SeriesKind::WComplex};
    cplx lhs = s_lambda(l1, l2, z, std::conj(z));
    cplx rhs = bracket_of(p1, W2, z, std::conj(z)) + bracket_of(W1, p2, z, std::conj(z));
    CHECK(std::abs(lhs - rhs) < 1e-12 * (1.0 + std::abs(rhs)));
  }
}

TEST_CASE("divided bracket") {
  cplx l1(1.5, 0.0), l2(-0.75, 0.0);
  SeriesSolution p1{l1, SeriesKind::Phi}, p2{l2, SeriesKind::Phi};

  // diagonal limit at zero: [Phi, Phi](x, x)/(x - x) -> (l1 - l2)/4
  cplx at0 = divided_bracket(p1, p2, 0.0, 0.0);
  CHECK(at0.real() == doctest::Approx(((l1 - l2) / 4.0).real()).epsilon(1e-12));

  // diagonal value is f'g - fg'
  double x = 0.62;
  cplx diag = divided_bracket(p1, p2, x, x);
  cplx expect = eval_d(p1, x) * eval(p2, x) - eval(p1, x) * eval_d(p2, x);
  CHECK(std::abs(diag - expect) < 1e-12 * (1.0 + std::abs(expect)));

  // the quadrature path and the direct quotient agree at the same point
  double x1 = 0.8, gap = 1e-3 * (1.0 + 2 * 0.8);
  cplx a = divided_bracket(p1, p2, x1, x1 - gap, /*switch_scale=*/1e9);
  cplx direct = divided_bracket(p1, p2, x1, x1 - gap, /*switch_scale=*/0.0);
  CHECK(std::abs(a - direct) < 1e-10 * (1.0 + std::abs(direct)));

  // antisymmetry under swapping both the points and the functions
  cplx s1 = divided_bracket(p1, p2, 0.31, 0.3101);
  cplx s2 = divided_bracket(p2, p1, 0.3101, 0.31);
  CHECK(std::abs(s1 + s2) < 1e-12 * (1.0 + std::abs(s1)));

  SeriesSolution wr{l1, SeriesKind::WReal};
  CHECK_THROWS_AS(divided_bracket(wr, p2, 0.5, 0.6), Error);
}

#include "doctest.h"

#include <cmath>

#include "sympair/jets.hpp"
#include "sympair/numerics.hpp"
#include "sympair/rng.hpp"

using namespace sympair;

TEST_CASE("counter rng: determinism and stream separation") {
  CounterRng a(123, 5), b(123, 5), c(123, 6);
  for (int i = 0; i < 64; ++i) {
    auto x = a.next_u64();
    CHECK(x == b.next_u64());
    CHECK(x != c.next_u64());
  }
  // rough uniformity
  CounterRng r(77);
  double s = 0.0, s2 = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    double u = r.uniform();
    s += u;
    s2 += u * u;
  }
  CHECK(s / n == doctest::Approx(0.5).epsilon(0.01));
  CHECK(s2 / n == doctest::Approx(1.0 / 3.0).epsilon(0.01));
}

TEST_CASE("parallel job decomposition is thread-count independent by design") {
  std::vector<double> out(16, 0.0);
  parallel_jobs(16, [&](int j) {
    CounterRng rng(9, static_cast<std::uint64_t>(j));
    out[j] = rng.uniform();
  });
  std::vector<double> ref(16, 0.0);
  for (int j = 0; j < 16; ++j) {
    CounterRng rng(9, static_cast<std::uint64_t>(j));
    ref[j] = rng.uniform();
  }
  CHECK(out == ref);
}

TEST_CASE("jet multiplication against brute-force monomials") {
  // f = (1 + x0 + 2 x3)(x0 - x5^2): check a few coefficients by hand
  Jet8 a = Jet8(1.0) + Jet8::variable(0, 0.0) + Jet8::variable(3, 0.0) * 2.0;
  Jet8 x0 = Jet8::variable(0, 0.0);
  Jet8 x5 = Jet8::variable(5, 0.0);
  Jet8 b = x0 - x5 * x5;
  Jet8 p = a * b;
  Jet8::Exps e{};
  e[0] = 1;
  CHECK(p.coeff(e) == doctest::Approx(1.0));  // x0
  e[0] = 2;
  CHECK(p.coeff(e) == doctest::Approx(1.0));  // x0^2
  e[0] = 0;
  e[5] = 2;
  CHECK(p.coeff(e) == doctest::Approx(-1.0));  // -x5^2
  e[0] = 1;
  CHECK(p.coeff(e) == doctest::Approx(-1.0));  // -x0 x5^2
  e[0] = 0;
  e[5] = 2;
  e[3] = 1;
  CHECK(p.coeff(e) == doctest::Approx(-2.0));  // -2 x3 x5^2
}

TEST_CASE("jet exp and reciprocal against finite differences") {
  // g(x) = exp(1 - 1/(1 - s)) with s = 0.2 + 0.3 x0 + 0.1 x1^2
  auto val = [](double x0, double x1) {
    double s = 0.2 + 0.3 * x0 + 0.1 * x1 * x1;
    return std::exp(1.0 - 1.0 / (1.0 - s));
  };
  Jet8 s = Jet8(0.2) + Jet8::variable(0, 0.0) * 0.3 +
           (Jet8::variable(1, 0.0) * Jet8::variable(1, 0.0)) * 0.1;
  Jet8 h = Jet8(1.0) - jet_reciprocal(Jet8(1.0) - s);
  Jet8 g = jet_exp(h);
  CHECK(g.value() == doctest::Approx(val(0, 0)).epsilon(1e-14));

  double d = 1e-4;
  double fd1 = (val(d, 0) - val(-d, 0)) / (2 * d);
  Jet8::Exps e{};
  e[0] = 1;
  CHECK(g.coeff(e) == doctest::Approx(fd1).epsilon(1e-6));

  double fd2 = (val(0, d) - 2 * val(0, 0) + val(0, -d)) / (d * d);
  Jet8::Exps e2{};
  e2[1] = 2;
  CHECK(2.0 * g.coeff(e2) == doctest::Approx(fd2).epsilon(1e-5));
}

TEST_CASE("fornberg weights reproduce standard stencils") {
  auto w = fornberg_weights(0.0, {-1, 0, 1}, 2);
  CHECK(w[2][0] == doctest::Approx(1.0));
  CHECK(w[2][1] == doctest::Approx(-2.0));
  CHECK(w[2][2] == doctest::Approx(1.0));
  CHECK(w[1][0] == doctest::Approx(-0.5));
  CHECK(w[1][2] == doctest::Approx(0.5));
}

TEST_CASE("gauss-legendre integrates polynomials exactly") {
  Quadrature q = gauss_legendre(8);
  double s = 0.0;
  for (size_t i = 0; i < q.nodes.size(); ++i)
    s += q.weights[i] * std::pow(q.nodes[i], 14);  // degree 14 < 2*8
  CHECK(s == doctest::Approx(2.0 / 15.0).epsilon(1e-13));
}

TEST_CASE("weighted least squares recovers exact coefficients") {
  std::vector<std::vector<double>> rows;
  std::vector<double> y, sig;
  for (int i = 1; i <= 30; ++i) {
    double t = 0.01 * i;
    rows.push_back({1.0, std::log(t)});
    y.push_back(2.5 - 0.75 * std::log(t));
    sig.push_back(0.01);
  }
  LsqFit f = weighted_lsq(rows, y, sig);
  CHECK(f.coef[0] == doctest::Approx(2.5).epsilon(1e-12));
  CHECK(f.coef[1] == doctest::Approx(-0.75).epsilon(1e-12));
}

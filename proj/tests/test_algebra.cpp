#include "doctest.h"

#include <array>
#include <cmath>

#include "sympair/algebra.hpp"
#include "sympair/rng.hpp"

using namespace sympair;

namespace {

BlockVector random_x(CounterRng& rng, double scale = 1.0) {
  auto e = [&] { return rng.uniform(-scale, scale); };
  return {{e(), e(), e(), e()}, {e(), e(), e(), e()}};
}

HElement random_h(CounterRng& rng) {
  for (;;) {
    auto e = [&] { return rng.uniform(-1.0, 1.0); };
    Mat2 A{e(), e(), e(), e()}, B{e(), e(), e(), e()};
    if (std::abs(A.det()) < 0.3 || std::abs(B.det()) < 0.3) continue;
    if (A.norm() * A.inverse().norm() > 20.0) continue;
    if (B.norm() * B.inverse().norm() > 20.0) continue;
    return {A, B};
  }
}

// characteristic polynomial of the 4x4 embedding [[0, Y], [Z, 0]] by
// Faddeev-LeVerrier on traces of powers
std::array<double, 5> char_poly4(const BlockVector& X) {
  double M[4][4] = {{0, 0, X.Y.a00, X.Y.a01},
                    {0, 0, X.Y.a10, X.Y.a11},
                    {X.Z.a00, X.Z.a01, 0, 0},
                    {X.Z.a10, X.Z.a11, 0, 0}};
  double P[4][4];
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) P[i][j] = (i == j) ? 1.0 : 0.0;
  std::array<double, 5> c{};
  c[0] = 1.0;  // t^4 coefficient
  for (int k = 1; k <= 4; ++k) {
    double T[4][4] = {};
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int l = 0; l < 4; ++l) T[i][j] += M[i][l] * P[l][j];
    double tr = T[0][0] + T[1][1] + T[2][2] + T[3][3];
    c[k] = -tr / k;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) P[i][j] = T[i][j] + ((i == j) ? c[k] : 0.0);
  }
  return c;  // t^4 + c1 t^3 + c2 t^2 + c3 t + c4
}

double inv_distance(const OrbitInvariants& a, const OrbitInvariants& b) {
  double d = 0.0;
  auto rel = [](double x, double y) { return std::abs(x - y) / (1.0 + std::abs(y)); };
  d = std::max(d, rel(a.Q, b.Q));
  d = std::max(d, rel(a.S, b.S));
  d = std::max(d, rel(a.S0, b.S0));
  d = std::max(d, std::abs(a.delta - b.delta) / (1.0 + std::abs(b.delta)));
  d = std::max(d, std::abs(a.u - b.u) / (1.0 + std::abs(b.u)));
  d = std::max(d, std::abs(a.v - b.v) / (1.0 + std::abs(b.v)));
  return d;
}

}  // namespace

TEST_CASE("invariants on canonical elements") {
  BlockVector X{Mat2::diag(1, 2), Mat2::diag(1, 2)};
  OrbitInvariants inv = invariants(X);
  CHECK(inv.Q == doctest::Approx(5.0));
  CHECK(inv.S == doctest::Approx(4.0));
  CHECK(inv.S0 == doctest::Approx(9.0));
  CHECK(inv.delta.real() == doctest::Approx(3.0));
  CHECK(inv.u.real() == doctest::Approx(4.0));
  CHECK(inv.v.real() == doctest::Approx(1.0));

  BlockVector zero{};
  OrbitInvariants z = invariants(zero);
  CHECK(z.Q == 0.0);
  CHECK(z.S == 0.0);
  CHECK(std::abs(z.u) == 0.0);

  // a2 element with tau = theta = 1; oracle: YZ = [[0,-2],[2,0]] has
  // eigenvalues +-2i from its characteristic polynomial t^2 + 4
  BlockVector X2{Mat2::rot(1, 1), Mat2::rot(1, 1)};
  Mat2 M = X2.Y * X2.Z;
  CHECK(M.a00 == doctest::Approx(0.0));
  CHECK(M.a01 == doctest::Approx(-2.0));
  CHECK(M.a10 == doctest::Approx(2.0));
  double disc = M.trace() * M.trace() - 4.0 * M.det();
  CHECK(disc == doctest::Approx(-16.0));
  OrbitInvariants i2 = invariants(X2);
  CHECK(i2.Q == doctest::Approx(0.0));
  CHECK(i2.S == doctest::Approx(4.0));
  CHECK(i2.S0 == doctest::Approx(-16.0));
  CHECK(i2.delta.imag() == doctest::Approx(4.0));
  CHECK(i2.u.imag() == doctest::Approx(2.0));
  CHECK(i2.v.imag() == doctest::Approx(-2.0));
}

TEST_CASE("characteristic polynomial of the embedding is t^4 - Q t^2 + S") {
  CounterRng rng(7001);
  for (int trial = 0; trial < 200; ++trial) {
    BlockVector X = random_x(rng);
    OrbitInvariants inv = invariants(X);
    auto c = char_poly4(X);
    CHECK(std::abs(c[1]) < 1e-12);
    CHECK(std::abs(c[3]) < 1e-12);
    CHECK(std::abs(c[2] + inv.Q) < 1e-12);
    CHECK(std::abs(c[4] - inv.S) < 1e-12);
  }
}

TEST_CASE("involutions") {
  BlockVector X{Mat2::diag(1, 2), Mat2::diag(1, 2)};
  BlockVector W = involution(X, Involution::Varpi);
  OrbitInvariants iw = invariants(W);
  CHECK(iw.Q == doctest::Approx(-5.0));
  CHECK(iw.S == doctest::Approx(4.0));
  // varpi sends a++ into a--
  CHECK(iw.u.real() <= 0.0);
  CHECK(iw.v.real() <= 0.0);

  CounterRng rng(7002);
  for (int trial = 0; trial < 50; ++trial) {
    BlockVector Y = random_x(rng);
    BlockVector YY = involution(involution(Y, Involution::Varpi), Involution::Varpi);
    CHECK((YY - Y).norm() < 1e-15);
    BlockVector S = involution(Y, Involution::Sigma);
    CHECK((S + Y).norm() < 1e-15);
  }
}

TEST_CASE("adjoint action") {
  BlockVector X{Mat2::diag(1, 2), Mat2::diag(1, 2)};
  BlockVector same = adjoint(HElement::identity(), X);
  CHECK((same - X).norm() < 1e-15);

  HElement K{Mat2::swap(), Mat2::swap()};
  BlockVector swapped = adjoint(K, X);
  BlockVector expect{Mat2::diag(2, 1), Mat2::diag(2, 1)};
  CHECK((swapped - expect).norm() < 1e-14);

  CounterRng rng(7003);
  for (int trial = 0; trial < 1000; ++trial) {
    HElement h = random_h(rng);
    OrbitInvariants a = invariants(adjoint(h, X));
    OrbitInvariants b = invariants(X);
    CHECK(inv_distance(a, b) < 1e-10);
  }

  HElement sing{Mat2::diag(1, 0), Mat2::identity()};
  CHECK_THROWS_AS(adjoint(sing, X), Error);
}

TEST_CASE("classify") {
  // scaled coroot of beta2: u = v = 1
  BlockVector H3{Mat2::identity(), Mat2::identity()};
  ClassifyResult r3 = classify(H3, 1e-9);
  CHECK(r3.cls == RegularityClass::SemiRegularMult2);
  CHECK(r3.in_U);
  CHECK(r3.in_U3);
  CHECK_FALSE(r3.in_varpi_U3);
  CHECK_FALSE(r3.in_Um);

  BlockVector nil{{0, 1, 0, 0}, {0, 0, 0, 0}};
  ClassifyResult rn = classify(nil, 1e-9);
  CHECK(rn.cls == RegularityClass::Nilpotent);
  CHECK_FALSE(rn.in_U);

  BlockVector X{Mat2::diag(1, 2), Mat2::diag(1, 2)};
  ClassifyResult rx = classify(X, 1e-9);
  CHECK(rx.cls == RegularityClass::Regular);
  CHECK(rx.in_Um);
  CHECK(rx.in_U3);     // Q = 5 > -2 sqrt(4)
  CHECK_FALSE(rx.in_varpi_U3);  // Q = 5 > 2 sqrt(4)

  // vanishing mult-1 root, semisimple: the coroot direction with u = 1, v = 0
  BlockVector sr{Mat2::diag(1, 0), Mat2::diag(1, 0)};
  ClassifyResult rs = classify(sr, 1e-9);
  CHECK(rs.cls == RegularityClass::SemiRegularMult1);
  CHECK(rs.vanishing_root == 2);  // the smaller eigenvalue v ~ 0

  // same invariants but with a nontrivial Jordan block: mixed
  BlockVector mixed{Mat2{1, 1, 0, 1}, Mat2::diag(1, 0)};
  ClassifyResult rm = classify(mixed, 1e-9);
  CHECK(rm.cls == RegularityClass::Mixed);
  BlockVector mixed2{Mat2::diag(1, 1), Mat2::diag(1, 0)};
  CHECK(classify(mixed2, 1e-9).cls == RegularityClass::Mixed);
}

TEST_CASE("normal form on canonical and conjugated elements") {
  BlockVector X{Mat2::diag(1, 2), Mat2::diag(1, 2)};
  NormalForm nf = normal_form(X);
  CHECK(nf.cls == CartanClass::APP);
  CHECK(nf.p1 == doctest::Approx(2.0));
  CHECK(nf.p2 == doctest::Approx(1.0));
  BlockVector rec = adjoint(nf.h, X);
  CHECK((rec - canonical_element(nf.cls, nf.p1, nf.p2)).norm() < 1e-9);

  // YZ with eigenvalues {-1, -4} lands in a--; canonical ordering u1 >= u2
  BlockVector Xm{Mat2::diag(1, 2), Mat2::diag(-1, -2)};
  NormalForm nm = normal_form(Xm);
  CHECK(nm.cls == CartanClass::AMM);
  CHECK(nm.p1 == doctest::Approx(2.0));
  CHECK(nm.p2 == doctest::Approx(1.0));

  CounterRng rng(7004);
  int done = 0;
  while (done < 300) {
    BlockVector Y = random_x(rng);
    OrbitInvariants inv = invariants(Y);
    if (std::abs(inv.S * inv.S0) < 1e-3) continue;
    ++done;
    NormalForm f = normal_form(Y);
    BlockVector can = canonical_element(f.cls, f.p1, f.p2);
    BlockVector r = adjoint(f.h, Y);
    CHECK((r - can).norm() < 1e-7 * (1.0 + can.norm()));
    OrbitInvariants iv = invariants(can);
    CHECK(std::abs(iv.u - inv.u) / (1.0 + std::abs(inv.u)) < 1e-8);
    CHECK(std::abs(iv.v - inv.v) / (1.0 + std::abs(inv.v)) < 1e-8);
  }

  CHECK_THROWS_AS(normal_form(BlockVector{Mat2::identity(), Mat2::identity()}), Error);
}

TEST_CASE("normal form after a random conjugation recovers the orbit") {
  CounterRng rng(7005);
  BlockVector X{Mat2::diag(1, 2), Mat2::diag(1, 2)};
  for (int trial = 0; trial < 100; ++trial) {
    HElement h0 = random_h(rng);
    BlockVector Y = adjoint(h0, X);
    NormalForm f = normal_form(Y);
    CHECK(f.cls == CartanClass::APP);
    CHECK(f.p1 == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(f.p2 == doctest::Approx(1.0).epsilon(1e-8));
  }
}

namespace {

// does W lie on the canonical Cartan subspace of cls? extract parameters and
// compare against the canonical pattern
bool on_cartan(CartanClass cls, const BlockVector& W, double tol = 1e-12) {
  double p1 = 0, p2 = 0;
  switch (cls) {
    case CartanClass::APP:
    case CartanClass::APM:
    case CartanClass::AMM:
      p1 = W.Y.a00;
      p2 = W.Y.a11;
      break;
    case CartanClass::A2:
      p1 = W.Y.a00;
      p2 = W.Y.a10;
      break;
  }
  return (W - canonical_element(cls, p1, p2)).norm() <= tol * (1.0 + W.norm());
}

}  // namespace

TEST_CASE("cartan data: roots, multiplicities and Weyl groups") {
  CHECK(cartan_data(CartanClass::APP).weyl.size() == 8);
  CHECK(cartan_data(CartanClass::AMM).weyl.size() == 8);
  CHECK(cartan_data(CartanClass::APM).weyl.size() == 4);
  CHECK(cartan_data(CartanClass::A2).weyl.size() == 4);

  CartanData a2 = cartan_data(CartanClass::A2);
  cplx a1 = a2.roots[0].eval(1.5, 0.5);
  CHECK(a1.real() == doctest::Approx(3.0));
  CHECK(a1.imag() == doctest::Approx(1.0));

  for (CartanClass cls :
       {CartanClass::APP, CartanClass::APM, CartanClass::AMM, CartanClass::A2}) {
    CartanData cd = cartan_data(cls);
    CHECK(cd.multiplicities == std::array<int, 4>{1, 1, 2, 2});
    for (const HElement& w : cd.weyl) {
      for (const BlockVector& b : cd.basis()) {
        CHECK(on_cartan(cls, adjoint(w, b)));
      }
    }
  }
}

TEST_CASE("varpi reverses the class order and swaps a2 parameters") {
  CounterRng rng(7006);
  for (int trial = 0; trial < 50; ++trial) {
    double u1 = rng.uniform(0.5, 2.0);
    double u2 = rng.uniform(0.1, u1 - 0.2);
    BlockVector X = canonical_element(CartanClass::APP, u1, u2);
    NormalForm f = normal_form(involution(X, Involution::Varpi));
    CHECK(f.cls == CartanClass::AMM);
    CHECK(f.p1 == doctest::Approx(u1).epsilon(1e-9));
    CHECK(f.p2 == doctest::Approx(u2).epsilon(1e-9));
  }
  for (int trial = 0; trial < 50; ++trial) {
    double tau = rng.uniform(0.3, 2.0);
    double theta = rng.uniform(0.3, 2.0);
    BlockVector X = canonical_element(CartanClass::A2, tau, theta);
    OrbitInvariants a = invariants(involution(X, Involution::Varpi));
    OrbitInvariants b = invariants(canonical_element(CartanClass::A2, theta, tau));
    CHECK(std::abs(a.u - b.u) < 1e-12 * (1.0 + std::abs(b.u)));
    CHECK(std::abs(a.v - b.v) < 1e-12 * (1.0 + std::abs(b.v)));
  }
}

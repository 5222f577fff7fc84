#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "sympair/errors.hpp"

namespace sympair {

using cplx = std::complex<double>;

// Euler-Mascheroni constant, 20 significant digits.
inline constexpr double euler_gamma = 0.57721566490153286061;

struct Quadrature {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Gauss-Legendre rule on [-1, 1], Newton iteration on the Legendre recurrence.
inline Quadrature gauss_legendre(int n) {
  Quadrature q;
  q.nodes.resize(n);
  q.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    q.nodes[i] = x;
    q.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return q;
}

// Fornberg finite-difference weights: derivative of order m at z from the
// given nodes. Returns weights for orders 0..m; row m is what callers want.
inline std::vector<std::vector<double>> fornberg_weights(double z, const std::vector<double>& x,
                                                         int m) {
  int n = static_cast<int>(x.size()) - 1;
  std::vector<std::vector<double>> c(n + 1, std::vector<double>(m + 1, 0.0));
  double c1 = 1.0;
  double c4 = x[0] - z;
  c[0][0] = 1.0;
  for (int i = 1; i <= n; ++i) {
    int mn = std::min(i, m);
    double c2 = 1.0;
    double c5 = c4;
    c4 = x[i] - z;
    for (int j = 0; j < i; ++j) {
      double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k)
          c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  // transpose: result[k][j] = weight of node j for derivative order k
  std::vector<std::vector<double>> w(m + 1, std::vector<double>(n + 1));
  for (int j = 0; j <= n; ++j)
    for (int k = 0; k <= m; ++k) w[k][j] = c[j][k];
  return w;
}

struct LsqFit {
  std::vector<double> coef;
  std::vector<double> coef_err;  // 1-sigma, from the weight model
  double chi2 = 0.0;
  int dof = 0;
};

// Weighted linear least squares via normal equations in long double.
// rows[i] = basis values at sample i, y[i] +- sigma[i].
inline LsqFit weighted_lsq(const std::vector<std::vector<double>>& rows,
                           const std::vector<double>& y, const std::vector<double>& sigma) {
  const int n = static_cast<int>(rows.size());
  if (n == 0) throw Error(Errc::InsufficientBins, "no samples to fit");
  const int p = static_cast<int>(rows[0].size());
  if (n < p) throw Error(Errc::InsufficientBins, "fewer samples than parameters");
  std::vector<long double> ata(p * p, 0.0L), atb(p, 0.0L);
  for (int i = 0; i < n; ++i) {
    long double w = 1.0L / (static_cast<long double>(sigma[i]) * sigma[i]);
    for (int a = 0; a < p; ++a) {
      atb[a] += w * rows[i][a] * y[i];
      for (int b = 0; b < p; ++b) ata[a * p + b] += w * rows[i][a] * rows[i][b];
    }
  }
  // column equilibration
  std::vector<long double> scale(p);
  for (int a = 0; a < p; ++a) {
    scale[a] = std::sqrt(std::max(ata[a * p + a], 1e-300L));
  }
  std::vector<long double> m(ata), rhs(atb);
  for (int a = 0; a < p; ++a) {
    for (int b = 0; b < p; ++b) m[a * p + b] /= scale[a] * scale[b];
    rhs[a] /= scale[a];
  }
  // Gauss elimination with partial pivoting; also build the inverse for errors.
  std::vector<long double> inv(p * p, 0.0L);
  for (int a = 0; a < p; ++a) inv[a * p + a] = 1.0L;
  for (int col = 0; col < p; ++col) {
    int piv = col;
    for (int r = col + 1; r < p; ++r)
      if (std::abs((double)m[r * p + col]) > std::abs((double)m[piv * p + col])) piv = r;
    if (std::abs((double)m[piv * p + col]) < 1e-18)
      throw Error(Errc::DegenerateFit, "singular normal equations");
    if (piv != col) {
      for (int b = 0; b < p; ++b) {
        std::swap(m[piv * p + b], m[col * p + b]);
        std::swap(inv[piv * p + b], inv[col * p + b]);
      }
      std::swap(rhs[piv], rhs[col]);
    }
    long double d = m[col * p + col];
    for (int b = 0; b < p; ++b) {
      m[col * p + b] /= d;
      inv[col * p + b] /= d;
    }
    rhs[col] /= d;
    for (int r = 0; r < p; ++r) {
      if (r == col) continue;
      long double f = m[r * p + col];
      if (f == 0.0L) continue;
      for (int b = 0; b < p; ++b) {
        m[r * p + b] -= f * m[col * p + b];
        inv[r * p + b] -= f * inv[col * p + b];
      }
      rhs[r] -= f * rhs[col];
    }
  }
  LsqFit fit;
  fit.coef.resize(p);
  fit.coef_err.resize(p);
  for (int a = 0; a < p; ++a) {
    fit.coef[a] = static_cast<double>(rhs[a] / scale[a]);
    fit.coef_err[a] = std::sqrt(std::max(0.0, (double)(inv[a * p + a]))) / (double)scale[a];
  }
  for (int i = 0; i < n; ++i) {
    double pred = 0.0;
    for (int a = 0; a < p; ++a) pred += fit.coef[a] * rows[i][a];
    double r = (y[i] - pred) / sigma[i];
    fit.chi2 += r * r;
  }
  fit.dof = n - p;
  return fit;
}

// Radical-inverse / Halton sequence, for low-discrepancy sweeps.
inline double radical_inverse(std::uint64_t i, std::uint32_t base) {
  double inv = 1.0 / base, f = inv, r = 0.0;
  while (i > 0) {
    r += f * static_cast<double>(i % base);
    i /= base;
    f *= inv;
  }
  return r;
}

inline void halton_point(std::uint64_t i, int dim, double* out) {
  static const std::uint32_t primes[16] = {2,  3,  5,  7,  11, 13, 17, 19,
                                           23, 29, 31, 37, 41, 43, 47, 53};
  for (int d = 0; d < dim; ++d) out[d] = radical_inverse(i + 1, primes[d % 16]);
}

// Exact monomial average of t^k over [a, b].
inline double monomial_avg(int k, double a, double b) {
  if (b == a) return std::pow(a, k);
  long double num = (std::pow((long double)b, k + 1) - std::pow((long double)a, k + 1));
  return static_cast<double>(num / ((k + 1) * ((long double)b - a)));
}

}  // namespace sympair

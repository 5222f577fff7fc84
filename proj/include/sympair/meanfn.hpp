#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <vector>

#include "sympair/errors.hpp"
#include "sympair/grid.hpp"
#include "sympair/numerics.hpp"
#include "sympair/rng.hpp"

namespace sympair {

struct Signature {
  int p = 1;
  int q = 1;
  Signature() = default;
  Signature(int p_, int q_) : p(p_), q(q_) {
    if (p < 1 || q < 1) throw Error(Errc::BadInput, "signature needs p, q >= 1");
  }
  int n() const { return p + q; }
  double quadratic(const double* y) const {
    double s = 0.0;
    for (int i = 0; i < p; ++i) s += y[i] * y[i];
    for (int i = 0; i < q; ++i) s -= y[p + i] * y[p + i];
    return s;
  }
};

namespace detail {
inline double signed_ipow(double t, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= t;
  return r;
}
}  // namespace detail

// Singularity function of the signature; Heaviside convention Y(0+) = 1,
// Y(0-) = 0 is realized by the strict sign tests below.
inline double eta(const Signature& sig, double t) {
  if (t == 0.0) throw Error(Errc::ZeroArgument, "eta is undefined at t = 0");
  bool podd = sig.p % 2 != 0, qodd = sig.q % 2 != 0;
  double e = 0.5 * sig.n() - 1.0;
  if (podd && !qodd) return t > 0.0 ? std::pow(t, e) : 0.0;
  if (!podd && qodd) return t < 0.0 ? std::pow(-t, e) : 0.0;
  int ei = static_cast<int>(std::lround(e));  // n even in the remaining cases
  if (!podd && !qodd) return 0.5 * (t > 0.0 ? 1.0 : -1.0) * detail::signed_ipow(t, ei);
  return detail::signed_ipow(t, ei) * std::log(std::abs(t));
}

// A function sampled over an axis-aligned box; outside the box it is treated
// as (numerically) zero. dq_powers[k] optionally provides (dQ)^k f(0).
struct SampleableFunction {
  std::function<double(const double*)> f;
  int dim = 0;
  std::vector<double> lo, hi;
  std::vector<double> dq_powers;

  double box_volume() const {
    double v = 1.0;
    for (int i = 0; i < dim; ++i) v *= hi[i] - lo[i];
    return v;
  }
};

// The standard Gaussian exp(-|y|^2) on [-8, 8]^n with its Q-Laplacian powers.
inline SampleableFunction gaussian_function(const Signature& sig, int k_powers = 3,
                                            double half_width = 8.0) {
  SampleableFunction s;
  s.dim = sig.n();
  s.lo.assign(s.dim, -half_width);
  s.hi.assign(s.dim, half_width);
  s.f = [dim = s.dim](const double* y) {
    double r2 = 0.0;
    for (int i = 0; i < dim; ++i) r2 += y[i] * y[i];
    return std::exp(-r2);
  };
  // (dQ)^k exp(-|y|^2) at 0: expand (sum_i eps_i d_i^2)^k over coordinates;
  // d^{2m}/dy^{2m} e^{-y^2}|_0 = (-1)^m (2m)!/m!.
  int n = sig.n();
  std::vector<std::vector<double>> per_coord(n);  // per_coord[i][m] = eps_i^m (2m)!/m! (-1)^m
  for (int i = 0; i < n; ++i) {
    per_coord[i].resize(k_powers + 1);
    double eps = i < sig.p ? 1.0 : -1.0;
    for (int m = 0; m <= k_powers; ++m) {
      double f2m = 1.0, fm = 1.0;
      for (int j = 2; j <= 2 * m; ++j) f2m *= j;
      for (int j = 2; j <= m; ++j) fm *= j;
      per_coord[i][m] = std::pow(eps, m) * std::pow(-1.0, m) * f2m / fm;
    }
  }
  // convolve in the multinomial sense: T[i][k] = sum over splittings of k
  std::vector<double> acc{1.0};
  acc.resize(k_powers + 1, 0.0);
  acc[0] = 1.0;
  std::vector<double> binom((k_powers + 1) * (k_powers + 1), 0.0);
  for (int a = 0; a <= k_powers; ++a) {
    binom[a * (k_powers + 1)] = 1.0;
    for (int b = 1; b <= a; ++b)
      binom[a * (k_powers + 1) + b] =
          binom[(a - 1) * (k_powers + 1) + b - 1] + binom[(a - 1) * (k_powers + 1) + b];
  }
  for (int i = 0; i < n; ++i) {
    std::vector<double> next(k_powers + 1, 0.0);
    for (int k = 0; k <= k_powers; ++k)
      for (int m = 0; m <= k; ++m)
        next[k] += binom[k * (k_powers + 1) + m] * per_coord[i][m] * acc[k - m];
    acc = next;
  }
  s.dq_powers = acc;
  return s;
}

struct DensityGrid1 {
  Grid1 grid;
  double integral_estimate = 0.0;  // MC estimate of \int f
  double integral_err = 0.0;
};

struct DensityGrid2 {
  Grid2 grid;
  double integral_estimate = 0.0;
  double integral_err = 0.0;
};

// Monte-Carlo pushforward density of f under the signature form: uniform
// samples over the support box, weight f(y) * vol / n, binned by Q(y).
inline DensityGrid1 mean_density(const Signature& sig, const SampleableFunction& f, double tlo,
                                 double thi, int bins, std::uint64_t n, std::uint64_t seed) {
  if (f.dim != sig.n()) throw Error(Errc::BadInput, "function dimension != signature dimension");
  if (f.box_volume() <= 0.0) throw Error(Errc::EmptySupport, "support box has zero volume");
  const int n_jobs = 64;
  const std::uint64_t per = (n + n_jobs - 1) / n_jobs;
  const double vol = f.box_volume();
  const std::uint64_t n_actual = per * n_jobs;
  std::vector<Grid1> parts(n_jobs, Grid1(tlo, thi, bins));
  std::vector<double> isum(n_jobs, 0.0), isum2(n_jobs, 0.0);
  parallel_jobs(n_jobs, [&](int job) {
    CounterRng rng(seed, static_cast<std::uint64_t>(job));
    Grid1& g = parts[job];
    std::vector<double> y(f.dim);
    for (std::uint64_t i = 0; i < per; ++i) {
      for (int d = 0; d < f.dim; ++d) y[d] = rng.uniform(f.lo[d], f.hi[d]);
      double fv = f.f(y.data());
      double w = fv * vol / static_cast<double>(n_actual);
      g.add(sig.quadratic(y.data()), w);
      isum[job] += fv;
      isum2[job] += fv * fv;
    }
    g.n_samples = per;
  });
  DensityGrid1 out;
  out.grid = Grid1(tlo, thi, bins);
  double s = 0.0, s2 = 0.0;
  for (int j = 0; j < n_jobs; ++j) {
    out.grid.merge(parts[j]);
    s += isum[j];
    s2 += isum2[j];
  }
  double mean = s / n_actual;
  double var = std::max(0.0, s2 / n_actual - mean * mean);
  out.integral_estimate = vol * mean;
  out.integral_err = vol * std::sqrt(var / n_actual);
  check_grid_miss(out.grid.outside, out.grid.total_abs);
  return out;
}

inline DensityGrid2 mean_density_2(const Signature& sig1, const Signature& sig2,
                                   const SampleableFunction& f, double xlo, double xhi, int nx,
                                   double ylo, double yhi, int ny, std::uint64_t n,
                                   std::uint64_t seed) {
  if (f.dim != sig1.n() + sig2.n())
    throw Error(Errc::BadInput, "function dimension != combined signature dimension");
  if (f.box_volume() <= 0.0) throw Error(Errc::EmptySupport, "support box has zero volume");
  const int n_jobs = 64;
  const std::uint64_t per = (n + n_jobs - 1) / n_jobs;
  const double vol = f.box_volume();
  const std::uint64_t n_actual = per * n_jobs;
  std::vector<Grid2> parts(n_jobs, Grid2(xlo, xhi, nx, ylo, yhi, ny));
  std::vector<double> isum(n_jobs, 0.0), isum2(n_jobs, 0.0);
  parallel_jobs(n_jobs, [&](int job) {
    CounterRng rng(seed, static_cast<std::uint64_t>(job));
    Grid2& g = parts[job];
    std::vector<double> y(f.dim);
    for (std::uint64_t i = 0; i < per; ++i) {
      for (int d = 0; d < f.dim; ++d) y[d] = rng.uniform(f.lo[d], f.hi[d]);
      double fv = f.f(y.data());
      double w = fv * vol / static_cast<double>(n_actual);
      g.add(sig1.quadratic(y.data()), sig2.quadratic(y.data() + sig1.n()), w);
      isum[job] += fv;
      isum2[job] += fv * fv;
    }
    g.n_samples = per;
  });
  DensityGrid2 out;
  out.grid = Grid2(xlo, xhi, nx, ylo, yhi, ny);
  double s = 0.0, s2 = 0.0;
  for (int j = 0; j < n_jobs; ++j) {
    out.grid.merge(parts[j]);
    s += isum[j];
    s2 += isum2[j];
  }
  double mean = s / n_actual;
  double var = std::max(0.0, s2 / n_actual - mean * mean);
  out.integral_estimate = vol * mean;
  out.integral_err = vol * std::sqrt(var / n_actual);
  check_grid_miss(out.grid.outside, out.grid.total_abs);
  return out;
}

enum class FitSide { Left, Right };

struct SingularFitOptions {
  double t_min = 1e-3;
  double t_max = 1e-1;
  int probes = 20;
  // polynomial degree of the smooth and eta-coefficient parts: basis
  // {t^j, eta(t) t^j : j <= degree}
  int degree = 0;
  bool even_powers_only = false;  // use t^{2j} instead of t^j
  double window_rescale = 3.0;    // second fit at [t_min, t_max * rescale]
};

struct SingularFit {
  double a = 0.0, b = 0.0;          // phi0 limit and eta-coefficient limit
  double a_err = 0.0, b_err = 0.0;  // statistical, from bin noise
  double a_sys = 0.0, b_sys = 0.0;  // window-scale systematic estimate
  double chi2 = 0.0;
  int bins_used = 0;
  std::vector<double> coef;  // full coefficient vector of the first-window fit
};

namespace detail {

inline LsqFit fit_window(const Grid1& g, const Signature& sig, FitSide side, double t_min,
                         double t_max, int probes, int degree, bool even, int* used) {
  std::vector<std::vector<double>> rows;
  std::vector<double> ys, sigmas;
  std::vector<int> chosen;
  double lmin = std::log(t_min), lmax = std::log(t_max);
  int last = -1;
  for (int k = 0; k < probes; ++k) {
    double t = std::exp(lmin + (lmax - lmin) * (probes == 1 ? 0.0 : double(k) / (probes - 1)));
    double ts = side == FitSide::Right ? t : -t;
    int i = static_cast<int>(std::floor((ts - g.lo) / (g.hi - g.lo) * g.n));
    if (i < 0 || i >= g.n || i == last) continue;
    last = i;
    chosen.push_back(i);
  }
  if (static_cast<int>(chosen.size()) < 2 * (degree + 1))
    throw Error(Errc::InsufficientBins, "window selects too few distinct bins");
  double c0 = std::abs(g.center(chosen.front()));
  double c1 = std::abs(g.center(chosen.back()));
  if (std::max(c0, c1) / std::min(c0, c1) < 50.0)
    throw Error(Errc::InsufficientBins, "window does not resolve two decades of |t|");
  double eta_min = 1e300, eta_max = -1e300;
  for (int i : chosen) {
    if (g.count[i] == 0) continue;  // bin never visited; no estimate to fit
    double t = g.center(i);
    double ev = eta(sig, t);
    eta_min = std::min(eta_min, ev);
    eta_max = std::max(eta_max, ev);
    std::vector<double> row;
    for (int j = 0; j <= degree; ++j) row.push_back(std::pow(t, even ? 2 * j : j));
    for (int j = 0; j <= degree; ++j) row.push_back(ev * std::pow(t, even ? 2 * j : j));
    rows.push_back(std::move(row));
    ys.push_back(g.density(i));
    double se = g.density_err(i);
    sigmas.push_back(se > 0.0 ? se : 1e-12 * (1.0 + std::abs(g.density(i))));
  }
  if (static_cast<int>(rows.size()) < 2 * (degree + 1))
    throw Error(Errc::InsufficientBins, "too few occupied bins in the window");
  if (eta_max - eta_min < 1e-9 * (1.0 + std::abs(eta_max)))
    throw Error(Errc::DegenerateFit, "eta is numerically constant on the window");
  if (used) *used = static_cast<int>(rows.size());
  return weighted_lsq(rows, ys, sigmas);
}

}  // namespace detail

// Fit density(t) ~ a + eta(t) b (optionally with higher polynomial terms) on a
// one-sided log-spaced window near t = 0; refit at a wider window to expose
// the systematic error of the window choice.
inline SingularFit singular_fit(const DensityGrid1& dens, const Signature& sig, FitSide side,
                                const SingularFitOptions& opt = {}) {
  SingularFit out;
  int used = 0;
  LsqFit f1 = detail::fit_window(dens.grid, sig, side, opt.t_min, opt.t_max, opt.probes,
                                 opt.degree, opt.even_powers_only, &used);
  int used2 = 0;
  LsqFit f2 = detail::fit_window(dens.grid, sig, side, opt.t_min, opt.t_max * opt.window_rescale,
                                 opt.probes, opt.degree, opt.even_powers_only, &used2);
  int p = opt.degree + 1;
  out.a = f1.coef[0];
  out.b = f1.coef[p];
  out.a_err = f1.coef_err[0];
  out.b_err = f1.coef_err[p];
  out.a_sys = std::abs(f1.coef[0] - f2.coef[0]);
  out.b_sys = std::abs(f1.coef[p] - f2.coef[p]);
  out.chi2 = f1.chi2;
  out.bins_used = used;
  out.coef = f1.coef;
  return out;
}

struct CoefficientCheck {
  double predicted = 0.0;
  double measured = 0.0;
  double measured_err = 0.0;
};

// Constant of the asymptotic expansion by parity of the signature.
inline double parity_constant(const Signature& sig) {
  if (sig.q % 2 == 0) return std::pow(-1.0, sig.q / 2);
  if (sig.p % 2 == 0) return std::pow(-1.0, sig.p / 2);
  return std::pow(-1.0, (sig.q + 1) / 2) / M_PI;
}

// predicted k-th t-derivative of the eta-coefficient at 0 versus the value
// measured from the fitted density.
inline CoefficientCheck coefficient_check(const DensityGrid1& dens, const Signature& sig,
                                          const SampleableFunction& f, int k, FitSide side,
                                          SingularFitOptions opt = {}) {
  if (k >= static_cast<int>(f.dq_powers.size()))
    throw Error(Errc::BadInput, "function does not provide (dQ)^k f(0)");
  CoefficientCheck out;
  double c = parity_constant(sig);
  double halfn = 0.5 * sig.n();
  out.predicted = c * std::pow(M_PI, halfn) / (std::pow(4.0, k) * std::tgamma(halfn + k)) *
                  f.dq_powers[k];
  opt.degree = std::max(opt.degree, k);
  SingularFit fit = singular_fit(dens, sig, side, opt);
  // measured = k! * b_k  (the k-th Taylor coefficient of the eta part)
  double fact = 1.0;
  for (int j = 2; j <= k; ++j) fact *= j;
  int p = opt.degree + 1;
  int stride = opt.even_powers_only ? 0 : k;  // even basis only supports k = 0
  if (opt.even_powers_only && k > 0)
    throw Error(Errc::BadInput, "even-power basis fits only the k = 0 coefficient");
  out.measured = fact * fit.coef[p + stride];
  out.measured_err = fact * (k == 0 ? std::hypot(fit.b_err, fit.b_sys) : fit.b_err);
  return out;
}

}  // namespace sympair

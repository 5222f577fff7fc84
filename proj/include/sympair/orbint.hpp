#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sympair/algebra.hpp"
#include "sympair/bump.hpp"
#include "sympair/errors.hpp"
#include "sympair/grid.hpp"
#include "sympair/meanfn.hpp"
#include "sympair/numerics.hpp"
#include "sympair/rng.hpp"

namespace sympair {

// Orbital-integral densities of a bump, through the Weyl integration formula:
//   m grid:  (t1, t2) with t1 > t2, raw pushforward / |t1 - t2|
//   a2 grid: (tau, theta) in the first quadrant, raw / (32 tau theta (tau^2 + theta^2))
//   r grid:  the (tau, theta) reparametrization of the real chart with
//            t1 = (tau + theta)^2, t2 = (tau - theta)^2, raw / (32 tau theta (tau^2 - theta^2))
struct OrbitalDensities {
  Grid2 m;   // x = t1, y = t2 (S0 > 0 samples)
  Grid2 a2;  // x = tau, y = theta (S0 < 0 samples)
  Grid2 r;   // x = tau, y = theta (S0 > 0 samples with t2 > 0)
  bool has_m = false, has_a2 = false, has_r = false;

  static double jac_m(double t1, double t2) { return std::abs(t1 - t2); }
  static double jac_a2(double tau, double theta) {
    return 32.0 * tau * theta * (tau * tau + theta * theta);
  }
  static double jac_r(double tau, double theta) {
    return 32.0 * tau * theta * std::abs(tau * tau - theta * theta);
  }

  double mf_m(int i, int j) const { return m.density(i, j) / jac_m(m.xcenter(i), m.ycenter(j)); }
  double mf_m_err(int i, int j) const {
    return m.density_err(i, j) / jac_m(m.xcenter(i), m.ycenter(j));
  }
  double mf_2(int i, int j) const {
    return a2.density(i, j) / jac_a2(a2.xcenter(i), a2.ycenter(j));
  }
  double mf_2_err(int i, int j) const {
    return a2.density_err(i, j) / jac_a2(a2.xcenter(i), a2.ycenter(j));
  }
  double mf_r(int i, int j) const { return r.density(i, j) / jac_r(r.xcenter(i), r.ycenter(j)); }
  double mf_r_err(int i, int j) const {
    return r.density_err(i, j) / jac_r(r.xcenter(i), r.ycenter(j));
  }
};

struct OrbitalGridSpec {
  int bins_m_t1 = 96;
  int bins_m_t2 = 96;
  int bins_a2_tau = 64;
  int bins_a2_theta = 96;
  int bins_r_tau = 64;
  int bins_r_theta = 96;
  double pad = 0.06;           // fractional padding of the pilot ranges
  std::uint64_t pilot = 20000;  // pilot samples used to size the grids
  // when set, these exact grids are used instead of the pilot ranges
  std::optional<Grid2> fixed_m, fixed_a2, fixed_r;
};

// Coordinate isomorphisms of the rank-one descent: psi maps the plane onto
// the first factor of m with Q(psi(x, y)) = x^2 - y^2, and psi3 maps 3-space
// onto the semisimple part of z3 with Q(psi3(x, y, z)) = 2 (x^2 + y^2 - z^2).
inline BlockVector descent_psi(double x, double y) {
  return {Mat2{0, 0, 0, x + y}, Mat2{0, 0, 0, x - y}};
}

inline BlockVector descent_psi3(double x, double y, double z) {
  Mat2 m{x, y + z, y - z, -x};
  return {m, m};
}

namespace detail {

struct Ranges {
  double t1lo = 0, t1hi = 0, t2lo = 0, t2hi = 0;
  double rtlo = 0, rthi = 0, rhlo = 0, rhhi = 0;  // r-chart tau, theta
  double alo = 0, ahi = 0, blo = 0, bhi = 0;      // a2 tau, theta
  bool any_m = false, any_a2 = false, any_r = false;
};

inline void route_sample(const OrbitInvariants& inv, bool& to_m, double& t1, double& t2,
                         bool& to_r, double& rt, double& rh, bool& to_a2, double& at,
                         double& ah) {
  to_m = to_r = to_a2 = false;
  if (inv.S0 > 0.0) {
    to_m = true;
    t1 = inv.u.real();
    t2 = inv.v.real();
    if (t2 > 0.0) {
      double s1 = std::sqrt(t1), s2 = std::sqrt(t2);
      rt = 0.5 * (s1 + s2);
      rh = 0.5 * (s1 - s2);
      to_r = true;
    }
  } else if (inv.S0 < 0.0) {
    cplx root = std::sqrt(inv.u);  // principal branch: tau > 0, theta > 0
    at = root.real();
    ah = root.imag();
    to_a2 = true;
  }
}

inline Ranges pilot_ranges(const Bump& f, std::uint64_t n, std::uint64_t seed) {
  Ranges rg;
  auto cc = Bump::coords(f.center());
  CounterRng rng(seed, 0xB1107);
  double x[8];
  auto extend = [](double v, double& mn, double& mx) {
    mn = std::min(mn, v);
    mx = std::max(mx, v);
  };
  bool first_m = true, first_a2 = true, first_r = true;
  for (std::uint64_t i = 0; i < n; ++i) {
    // uniform over the support ball, so the pilot sees the chart extremes
    double dir[8], nrm = 0.0;
    for (int d = 0; d < 8; ++d) {
      dir[d] = rng.normal();
      nrm += dir[d] * dir[d];
    }
    nrm = std::sqrt(nrm);
    double rad = f.radius() * std::pow(rng.uniform(), 0.125);
    for (int d = 0; d < 8; ++d) x[d] = cc[d] + rad * dir[d] / nrm;
    BlockVector X = Bump::from_coords(x);
    OrbitInvariants inv = invariants(X);
    bool tm, tr, ta;
    double t1, t2, rt, rh, at, ah;
    route_sample(inv, tm, t1, t2, tr, rt, rh, ta, at, ah);
    if (tm) {
      if (first_m) {
        rg.t1lo = rg.t1hi = t1;
        rg.t2lo = rg.t2hi = t2;
        first_m = false;
      }
      extend(t1, rg.t1lo, rg.t1hi);
      extend(t2, rg.t2lo, rg.t2hi);
      rg.any_m = true;
    }
    if (tr) {
      if (first_r) {
        rg.rtlo = rg.rthi = rt;
        rg.rhlo = rg.rhhi = rh;
        first_r = false;
      }
      extend(rt, rg.rtlo, rg.rthi);
      extend(rh, rg.rhlo, rg.rhhi);
      rg.any_r = true;
    }
    if (ta) {
      if (first_a2) {
        rg.alo = rg.ahi = at;
        rg.blo = rg.bhi = ah;
        first_a2 = false;
      }
      extend(at, rg.alo, rg.ahi);
      extend(ah, rg.blo, rg.bhi);
      rg.any_a2 = true;
    }
  }
  return rg;
}

inline void pad_range(double& lo, double& hi, double pad, bool floor_zero) {
  double w = hi - lo;
  if (w <= 0.0) w = std::max(1e-6, std::abs(hi));
  lo -= pad * w;
  hi += pad * w;
  if (floor_zero && lo < 0.0) lo = 0.0;
}

}  // namespace detail

// Samples the bump's support box and routes each sample by the sign of S0,
// per the chamber conventions (t1 > t2; principal square root on a2).
// generic box-sampled density accumulation; `value` may be any nonnegative
// integrand supported in the box (used directly by the equivariance tests)
inline OrbitalDensities orbital_densities_fn(
    const std::function<double(const BlockVector&)>& value, const std::array<double, 8>& lo,
    const std::array<double, 8>& hi, const OrbitalDensities& grids, std::uint64_t n,
    std::uint64_t seed) {
  OrbitalDensities od = grids;
  double vol = 1.0;
  for (int d = 0; d < 8; ++d) vol *= hi[d] - lo[d];
  const int n_jobs = 64;
  const std::uint64_t per = (n + n_jobs - 1) / n_jobs;
  const std::uint64_t n_actual = per * n_jobs;
  std::vector<OrbitalDensities> parts(n_jobs, od);
  parallel_jobs(n_jobs, [&](int job) {
    CounterRng rng(seed, static_cast<std::uint64_t>(job) + 1);
    OrbitalDensities& p = parts[job];
    double x[8];
    for (std::uint64_t i = 0; i < per; ++i) {
      for (int d = 0; d < 8; ++d) x[d] = rng.uniform(lo[d], hi[d]);
      BlockVector X = Bump::from_coords(x);
      double w = value(X) * vol / static_cast<double>(n_actual);
      if (w == 0.0) continue;
      OrbitInvariants inv = invariants(X);
      bool tm, tr, ta;
      double t1, t2, rt, rh, at, ah;
      detail::route_sample(inv, tm, t1, t2, tr, rt, rh, ta, at, ah);
      if (tm && p.has_m) p.m.add(t1, t2, w);
      if (tr && p.has_r) p.r.add(rt, rh, w);
      if (ta && p.has_a2) p.a2.add(at, ah, w);
    }
    if (p.has_m) p.m.n_samples = per;
    if (p.has_r) p.r.n_samples = per;
    if (p.has_a2) p.a2.n_samples = per;
  });
  for (int j = 0; j < n_jobs; ++j) {
    if (od.has_m) od.m.merge(parts[j].m);
    if (od.has_r) od.r.merge(parts[j].r);
    if (od.has_a2) od.a2.merge(parts[j].a2);
  }
  if (od.has_m) check_grid_miss(od.m.outside, od.m.total_abs, 1e-3);
  if (od.has_a2) check_grid_miss(od.a2.outside, od.a2.total_abs, 1e-3);
  return od;
}

inline OrbitalDensities orbital_densities(const Bump& f, const OrbitalGridSpec& spec,
                                          std::uint64_t n, std::uint64_t seed) {
  const auto& cert = f.certificate();
  if (!cert.in_U)
    throw Error(Errc::SupportViolation, "bump support is not certified inside U");
  OrbitalDensities od;
  if (spec.fixed_m || spec.fixed_a2 || spec.fixed_r) {
    od.has_m = spec.fixed_m.has_value();
    od.has_a2 = spec.fixed_a2.has_value();
    od.has_r = spec.fixed_r.has_value();
    if (od.has_m) od.m = *spec.fixed_m;
    if (od.has_a2) od.a2 = *spec.fixed_a2;
    if (od.has_r) od.r = *spec.fixed_r;
  } else {
    detail::Ranges rg = detail::pilot_ranges(f, spec.pilot, seed);
    if (!rg.any_m && !rg.any_a2)
      throw Error(Errc::EmptySupport, "bump mass was never sampled");
    od.has_m = rg.any_m;
    od.has_a2 = rg.any_a2;
    od.has_r = rg.any_r;
    if (rg.any_m) {
      detail::pad_range(rg.t1lo, rg.t1hi, spec.pad, false);
      detail::pad_range(rg.t2lo, rg.t2hi, spec.pad, false);
      od.m = Grid2(rg.t1lo, rg.t1hi, spec.bins_m_t1, rg.t2lo, rg.t2hi, spec.bins_m_t2);
    }
    if (rg.any_r) {
      detail::pad_range(rg.rtlo, rg.rthi, spec.pad, true);
      rg.rhlo = 0.0;
      detail::pad_range(rg.rhlo, rg.rhhi, spec.pad, true);
      od.r = Grid2(rg.rtlo, rg.rthi, spec.bins_r_tau, 0.0, rg.rhhi, spec.bins_r_theta);
    }
    if (rg.any_a2) {
      detail::pad_range(rg.alo, rg.ahi, spec.pad, true);
      rg.blo = 0.0;
      detail::pad_range(rg.blo, rg.bhi, spec.pad, true);
      od.a2 = Grid2(rg.alo, rg.ahi, spec.bins_a2_tau, 0.0, rg.bhi, spec.bins_a2_theta);
    }
  }
  return orbital_densities_fn([&f](const BlockVector& X) { return f.value(X); }, f.box_lo(),
                              f.box_hi(), od, n, seed);
}

// H-invariant integrands for the Weyl consistency check, as polynomials in
// the chart variables.
enum class WeylPhi { One, Q, S, Q2 };

inline const char* weyl_phi_name(WeylPhi p) {
  switch (p) {
    case WeylPhi::One: return "1";
    case WeylPhi::Q: return "Q";
    case WeylPhi::S: return "S";
    case WeylPhi::Q2: return "Q^2";
  }
  return "?";
}

namespace detail {

struct Poly2T {
  // sparse list of (coefficient, i, j)
  std::vector<std::array<double, 3>> terms;
  double avg(double x0, double x1, double y0, double y1) const {
    double s = 0.0;
    for (const auto& t : terms)
      s += t[0] * monomial_avg(static_cast<int>(t[1]), x0, x1) *
           monomial_avg(static_cast<int>(t[2]), y0, y1);
    return s;
  }
};

// (t1 - t2) * Phi_m(t1, t2)
inline Poly2T weyl_weight_m(WeylPhi p) {
  switch (p) {
    case WeylPhi::One: return {{{1, 1, 0}, {-1, 0, 1}}};
    case WeylPhi::Q: return {{{1, 2, 0}, {-1, 0, 2}}};
    case WeylPhi::S: return {{{1, 2, 1}, {-1, 1, 2}}};
    case WeylPhi::Q2: return {{{1, 3, 0}, {1, 2, 1}, {-1, 1, 2}, {-1, 0, 3}}};
  }
  return {};
}

// 8 (tau^2 + theta^2) |delta| Phi_2 = 32 tau theta (tau^2 + theta^2) Phi_2
inline Poly2T weyl_weight_a2(WeylPhi p) {
  switch (p) {
    case WeylPhi::One: return {{{32, 3, 1}, {32, 1, 3}}};
    case WeylPhi::Q: return {{{64, 5, 1}, {-64, 1, 5}}};
    case WeylPhi::S: return {{{32, 7, 1}, {96, 5, 3}, {96, 3, 5}, {32, 1, 7}}};
    case WeylPhi::Q2: return {{{128, 7, 1}, {-128, 5, 3}, {-128, 3, 5}, {128, 1, 7}}};
  }
  return {};
}

inline double phi_value(WeylPhi p, const OrbitInvariants& inv) {
  switch (p) {
    case WeylPhi::One: return 1.0;
    case WeylPhi::Q: return inv.Q;
    case WeylPhi::S: return inv.S;
    case WeylPhi::Q2: return inv.Q * inv.Q;
  }
  return 0.0;
}

}  // namespace detail

struct WeylCheckRow {
  WeylPhi phi;
  double lhs = 0.0, lhs_err = 0.0;
  double rhs = 0.0, rhs_err = 0.0;
  double combined_err() const { return std::hypot(lhs_err, rhs_err); }
};

// Left side: a fresh, independent sample stream integrating Phi(X) f(X) over
// the box. Right side: the binned orbital densities re-assembled through the
// Weyl integration formula with exact bin averages of the chart weights.
inline std::vector<WeylCheckRow> weyl_check(const Bump& f, const OrbitalDensities& od,
                                            const std::vector<WeylPhi>& phis, std::uint64_t n,
                                            std::uint64_t seed) {
  std::vector<WeylCheckRow> rows;
  const int n_jobs = 64;
  const std::uint64_t per = (n + n_jobs - 1) / n_jobs;
  const std::uint64_t n_actual = per * n_jobs;
  const double vol = f.box_volume();
  auto lo = f.box_lo();
  auto hi = f.box_hi();
  std::vector<std::vector<double>> sums(phis.size(), std::vector<double>(n_jobs, 0.0));
  std::vector<std::vector<double>> sums2(phis.size(), std::vector<double>(n_jobs, 0.0));
  parallel_jobs(n_jobs, [&](int job) {
    // a stream disjoint from the density sampler's
    CounterRng rng(CounterRng::mix(seed + 0x5EED), static_cast<std::uint64_t>(job) + 1);
    double x[8];
    for (std::uint64_t i = 0; i < per; ++i) {
      for (int d = 0; d < 8; ++d) x[d] = rng.uniform(lo[d], hi[d]);
      BlockVector X = Bump::from_coords(x);
      double fv = f.value(X);
      if (fv == 0.0) continue;
      OrbitInvariants inv = invariants(X);
      for (size_t k = 0; k < phis.size(); ++k) {
        double g = fv * detail::phi_value(phis[k], inv);
        sums[k][job] += g;
        sums2[k][job] += g * g;
      }
    }
  });
  for (size_t k = 0; k < phis.size(); ++k) {
    WeylCheckRow row;
    row.phi = phis[k];
    double s = 0.0, s2 = 0.0;
    for (int j = 0; j < n_jobs; ++j) {
      s += sums[k][j];
      s2 += sums2[k][j];
    }
    double mean = s / n_actual;
    double var = std::max(0.0, s2 / n_actual - mean * mean);
    row.lhs = vol * mean;
    row.lhs_err = vol * std::sqrt(var / n_actual);

    detail::Poly2T wm = detail::weyl_weight_m(phis[k]);
    detail::Poly2T w2 = detail::weyl_weight_a2(phis[k]);
    double rhs = 0.0, var_rhs = 0.0;
    if (od.has_m) {
      for (int i = 0; i < od.m.nx; ++i)
        for (int j = 0; j < od.m.ny; ++j) {
          size_t idx = od.m.idx(i, j);
          if (od.m.count[idx] == 0) continue;
          double x0 = od.m.xlo + i * od.m.wx(), x1 = x0 + od.m.wx();
          double y0 = od.m.ylo + j * od.m.wy(), y1 = y0 + od.m.wy();
          // weight / |delta| at the center, times the exact average weight
          double w_avg = wm.avg(x0, x1, y0, y1);
          double dl = OrbitalDensities::jac_m(od.m.xcenter(i), od.m.ycenter(j));
          double mf = od.m.mass[idx] / dl;  // Mf_m * area
          rhs += w_avg * mf;
          double merr2 = std::max(
              0.0, od.m.mass2[idx] - od.m.mass[idx] * od.m.mass[idx] /
                                         std::max<std::uint64_t>(od.m.n_samples, 1));
          var_rhs += w_avg * w_avg / (dl * dl) * merr2;
        }
    }
    if (od.has_a2) {
      for (int i = 0; i < od.a2.nx; ++i)
        for (int j = 0; j < od.a2.ny; ++j) {
          size_t idx = od.a2.idx(i, j);
          if (od.a2.count[idx] == 0) continue;
          double x0 = od.a2.xlo + i * od.a2.wx(), x1 = x0 + od.a2.wx();
          double y0 = od.a2.ylo + j * od.a2.wy(), y1 = y0 + od.a2.wy();
          double w_avg = w2.avg(x0, x1, y0, y1);
          double dl = OrbitalDensities::jac_a2(od.a2.xcenter(i), od.a2.ycenter(j));
          double mf = od.a2.mass[idx] / dl;
          rhs += w_avg * mf;
          double merr2 = std::max(
              0.0, od.a2.mass2[idx] - od.a2.mass[idx] * od.a2.mass[idx] /
                                          std::max<std::uint64_t>(od.a2.n_samples, 1));
          var_rhs += w_avg * w_avg / (dl * dl) * merr2;
        }
    }
    row.rhs = rhs;
    row.rhs_err = std::sqrt(var_rhs);
    rows.push_back(row);
  }
  return rows;
}

struct HlogReport {
  double t1 = 0.0;
  double a_plus = 0, a_minus = 0, b_plus = 0, b_minus = 0;
  double a_jump = 0, b_jump = 0;
  double a_jump_err = 0, b_jump_err = 0;  // 1 sigma of the jump estimates
};

// Fits Mf_m(t1_probe, t2) ~ A + B log|t2| on each side of t2 = 0 and reports
// the jumps of the limits; membership in the log class means both vanish.
inline HlogReport hlog_check(const OrbitalDensities& od, double t1_probe, double w_lo = 0.0,
                             double w_hi = 0.0) {
  if (!od.has_m) throw Error(Errc::InsufficientBins, "no real-chart density available");
  const Grid2& g = od.m;
  int row = static_cast<int>(std::floor((t1_probe - g.xlo) / (g.xhi - g.xlo) * g.nx));
  if (row < 0 || row >= g.nx)
    throw Error(Errc::BadInput, "t1 probe outside the density grid");
  if (w_lo <= 0.0) w_lo = 0.75 * g.wy();
  if (w_hi <= 0.0) w_hi = std::min(-g.ylo, g.yhi) * 0.8;
  if (w_hi / w_lo < 20.0)
    throw Error(Errc::InsufficientBins, "window too narrow for a log fit");
  HlogReport rep;
  rep.t1 = g.xcenter(row);
  double t1c = rep.t1;
  // basis {1, log|t|, t, t log|t|}: the linear columns absorb the smooth
  // variation over the window, which would otherwise bias the jump estimate
  auto fit_side = [&](double sgn, double& A, double& B, double& eA, double& eB) {
    std::vector<std::vector<double>> rows;
    std::vector<double> ys, sig;
    for (int j = 0; j < g.ny; ++j) {
      double t2 = g.ycenter(j);
      if (sgn > 0 && (t2 < w_lo || t2 > w_hi)) continue;
      if (sgn < 0 && (t2 > -w_lo || t2 < -w_hi)) continue;
      size_t idx = g.idx(row, j);
      if (g.count[idx] < 25) continue;
      double jac = OrbitalDensities::jac_m(t1c, t2);
      double lg = std::log(std::abs(t2));
      rows.push_back({1.0, lg, t2, t2 * lg});
      ys.push_back(g.density(row, j) / jac);
      sig.push_back(std::max(g.density_err(row, j) / jac, 1e-300));
    }
    if (rows.size() < 8) throw Error(Errc::InsufficientBins, "too few bins on one side of 0");
    LsqFit f = weighted_lsq(rows, ys, sig);
    // per-bin sigma estimates are themselves noisy at modest counts; scale
    // the parameter errors by the observed residual level when it exceeds 1
    double infl = f.dof > 0 ? std::max(1.0, std::sqrt(f.chi2 / f.dof)) : 1.0;
    A = f.coef[0];
    B = f.coef[1];
    eA = f.coef_err[0] * infl;
    eB = f.coef_err[1] * infl;
  };
  double eAp, eBp, eAm, eBm;
  fit_side(+1.0, rep.a_plus, rep.b_plus, eAp, eBp);
  fit_side(-1.0, rep.a_minus, rep.b_minus, eAm, eBm);
  rep.a_jump = rep.a_plus - rep.a_minus;
  rep.b_jump = rep.b_plus - rep.b_minus;
  rep.a_jump_err = std::hypot(eAp, eAm);
  rep.b_jump_err = std::hypot(eBp, eBm);
  return rep;
}

struct HypairReport {
  double tau = 0.0;
  double limit_r = 0, limit_r_err = 0;   // (Mf_m)_r(tau, 0+)
  double limit_2 = 0, limit_2_err = 0;   // Mf_2(tau, 0+)
  double slope_r = 0, slope_r_err = 0;   // d/dtheta (Mf_m)_r(tau, 0+), expected 0
  double slope_2 = 0, slope_2_err = 0;   // the |w|^{1/2}-term coefficient
  double mismatch() const { return std::abs(limit_r - limit_2); }
  double mismatch_err() const { return std::hypot(limit_r_err, limit_2_err); }
};

namespace detail {

inline void theta_limit_fit(const Grid2& g, bool is_a2, double tau, int max_bins, double& c0,
                            double& c1, double& e0, double& e1) {
  int row = static_cast<int>(std::floor((tau - g.xlo) / (g.xhi - g.xlo) * g.nx));
  if (row < 0 || row >= g.nx) throw Error(Errc::BadInput, "tau probe outside grid");
  std::vector<std::vector<double>> rows;
  std::vector<double> ys, sig;
  double tc = g.xcenter(row);
  for (int j = 0; j < std::min(max_bins, g.ny); ++j) {
    size_t idx = g.idx(row, j);
    if (g.count[idx] < 25) continue;
    double th = g.ycenter(j);
    double jac = is_a2 ? OrbitalDensities::jac_a2(tc, th) : OrbitalDensities::jac_r(tc, th);
    rows.push_back({1.0, th, th * th});
    ys.push_back(g.density(row, j) / jac);
    sig.push_back(std::max(g.density_err(row, j) / jac, 1e-300));
  }
  if (rows.size() < 6) throw Error(Errc::InsufficientBins, "too few theta bins near the wall");
  LsqFit f = weighted_lsq(rows, ys, sig);
  double infl = f.dof > 0 ? std::max(1.0, std::sqrt(f.chi2 / f.dof)) : 1.0;
  c0 = f.coef[0];
  c1 = f.coef[1];
  e0 = f.coef_err[0] * infl;
  e1 = f.coef_err[1] * infl;
}

}  // namespace detail

// Continuity of the real-chart and a2-chart densities across the theta = 0
// wall, with the one-sided slopes.
inline HypairReport hypair_check(const OrbitalDensities& od, double tau_probe,
                                 int max_bins = 28) {
  if (!od.has_r || !od.has_a2)
    throw Error(Errc::InsufficientBins, "hypair check needs both charts populated");
  HypairReport rep;
  rep.tau = tau_probe;
  detail::theta_limit_fit(od.r, false, tau_probe, max_bins, rep.limit_r, rep.slope_r,
                          rep.limit_r_err, rep.slope_r_err);
  detail::theta_limit_fit(od.a2, true, tau_probe, max_bins, rep.limit_2, rep.slope_2,
                          rep.limit_2_err, rep.slope_2_err);
  return rep;
}

}  // namespace sympair

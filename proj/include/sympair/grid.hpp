#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "sympair/errors.hpp"

namespace sympair {

// Uniform 1-D accumulation grid. Stores per-bin weight sums and squared-weight
// sums so densities carry Monte-Carlo standard errors; grids from disjoint
// sample streams merge additively.
struct Grid1 {
  double lo = 0.0, hi = 1.0;
  int n = 1;
  std::vector<double> mass;    // sum of weights
  std::vector<double> mass2;   // sum of squared weights
  std::vector<std::uint64_t> count;
  double outside = 0.0;        // |weight| that missed the grid
  double total_abs = 0.0;      // sum of |weight|
  std::uint64_t n_samples = 0;

  Grid1() = default;
  Grid1(double lo_, double hi_, int n_) : lo(lo_), hi(hi_), n(n_) {
    if (!(hi > lo) || n < 1) throw Error(Errc::BadInput, "bad grid spec");
    mass.assign(n, 0.0);
    mass2.assign(n, 0.0);
    count.assign(n, 0);
  }

  double width() const { return (hi - lo) / n; }
  double center(int i) const { return lo + (i + 0.5) * width(); }

  void add(double t, double w) {
    total_abs += std::abs(w);
    int i = static_cast<int>(std::floor((t - lo) / (hi - lo) * n));
    if (i < 0 || i >= n) {
      outside += std::abs(w);
      return;
    }
    mass[i] += w;
    mass2[i] += w * w;
    ++count[i];
  }

  void merge(const Grid1& o) {
    for (int i = 0; i < n; ++i) {
      mass[i] += o.mass[i];
      mass2[i] += o.mass2[i];
      count[i] += o.count[i];
    }
    outside += o.outside;
    total_abs += o.total_abs;
    n_samples += o.n_samples;
  }

  // density estimate and its standard error (weights already carry the 1/n
  // normalisation, so density = mass / bin width)
  double density(int i) const { return mass[i] / width(); }
  double density_err(int i) const {
    double var = mass2[i] - mass[i] * mass[i] / std::max<std::uint64_t>(n_samples, 1);
    return std::sqrt(std::max(var, 0.0)) / width();
  }
  double total_mass() const {
    double s = 0.0;
    for (double m : mass) s += m;
    return s;
  }
};

struct Grid2 {
  double xlo = 0.0, xhi = 1.0, ylo = 0.0, yhi = 1.0;
  int nx = 1, ny = 1;
  std::vector<double> mass, mass2;
  std::vector<std::uint64_t> count;
  double outside = 0.0;
  double total_abs = 0.0;
  std::uint64_t n_samples = 0;

  Grid2() = default;
  Grid2(double xlo_, double xhi_, int nx_, double ylo_, double yhi_, int ny_)
      : xlo(xlo_), xhi(xhi_), ylo(ylo_), yhi(yhi_), nx(nx_), ny(ny_) {
    if (!(xhi > xlo) || !(yhi > ylo) || nx < 1 || ny < 1)
      throw Error(Errc::BadInput, "bad grid spec");
    mass.assign(static_cast<size_t>(nx) * ny, 0.0);
    mass2.assign(static_cast<size_t>(nx) * ny, 0.0);
    count.assign(static_cast<size_t>(nx) * ny, 0);
  }

  double wx() const { return (xhi - xlo) / nx; }
  double wy() const { return (yhi - ylo) / ny; }
  double xcenter(int i) const { return xlo + (i + 0.5) * wx(); }
  double ycenter(int j) const { return ylo + (j + 0.5) * wy(); }
  size_t idx(int i, int j) const { return static_cast<size_t>(i) * ny + j; }

  void add(double x, double y, double w) {
    total_abs += std::abs(w);
    int i = static_cast<int>(std::floor((x - xlo) / (xhi - xlo) * nx));
    int j = static_cast<int>(std::floor((y - ylo) / (yhi - ylo) * ny));
    if (i < 0 || i >= nx || j < 0 || j >= ny) {
      outside += std::abs(w);
      return;
    }
    mass[idx(i, j)] += w;
    mass2[idx(i, j)] += w * w;
    ++count[idx(i, j)];
  }

  void merge(const Grid2& o) {
    for (size_t k = 0; k < mass.size(); ++k) {
      mass[k] += o.mass[k];
      mass2[k] += o.mass2[k];
      count[k] += o.count[k];
    }
    outside += o.outside;
    total_abs += o.total_abs;
    n_samples += o.n_samples;
  }

  double cell_area() const { return wx() * wy(); }
  double density(int i, int j) const { return mass[idx(i, j)] / cell_area(); }
  double density_err(int i, int j) const {
    size_t k = idx(i, j);
    double var = mass2[k] - mass[k] * mass[k] / std::max<std::uint64_t>(n_samples, 1);
    return std::sqrt(std::max(var, 0.0)) / cell_area();
  }
  double total_mass() const {
    double s = 0.0;
    for (double m : mass) s += m;
    return s;
  }
};

inline void check_grid_miss(double outside, double total_abs, double frac = 1e-3) {
  if (total_abs > 0.0 && outside > frac * total_abs)
    throw Error(Errc::GridMiss, "more than 0.1% of sampled weight fell outside the grid");
}

}  // namespace sympair

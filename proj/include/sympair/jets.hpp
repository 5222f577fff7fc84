#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "sympair/errors.hpp"

namespace sympair {

// Truncated multivariate Taylor arithmetic: total order <= 4 in the 8 block
// coordinates (Y00, Y01, Y10, Y11, Z00, Z01, Z10, Z11). 495 coefficients; the
// stored numbers are Taylor coefficients, i.e. partial derivatives / alpha!.
class Jet8 {
 public:
  static constexpr int kVars = 8;
  static constexpr int kOrder = 4;
  static constexpr int kCoeffs = 495;

  using Exps = std::array<std::uint8_t, kVars>;

  Jet8() { c_.fill(0.0); }
  explicit Jet8(double value) {
    c_.fill(0.0);
    c_[0] = value;
  }

  static Jet8 variable(int var, double value) {
    Jet8 j(value);
    Exps e{};
    e[var] = 1;
    j.c_[index_of(e)] = 1.0;
    return j;
  }

  double value() const { return c_[0]; }
  double coeff(const Exps& e) const { return c_[index_of(e)]; }
  double& coeff(const Exps& e) { return c_[index_of(e)]; }

  Jet8 operator+(const Jet8& o) const {
    Jet8 r;
    for (int i = 0; i < kCoeffs; ++i) r.c_[i] = c_[i] + o.c_[i];
    return r;
  }
  Jet8 operator-(const Jet8& o) const {
    Jet8 r;
    for (int i = 0; i < kCoeffs; ++i) r.c_[i] = c_[i] - o.c_[i];
    return r;
  }
  Jet8 operator*(double s) const {
    Jet8 r;
    for (int i = 0; i < kCoeffs; ++i) r.c_[i] = c_[i] * s;
    return r;
  }
  Jet8& operator+=(const Jet8& o) {
    for (int i = 0; i < kCoeffs; ++i) c_[i] += o.c_[i];
    return *this;
  }

  Jet8 operator*(const Jet8& o) const {
    Jet8 r;
    const auto& tbl = product_table();
    for (const auto& t : tbl) {
      r.c_[t.k] += c_[t.i] * o.c_[t.j];
    }
    return r;
  }

  // Chain through a scalar function given derivatives d[k] = g^(k)(value()).
  Jet8 compose(const std::array<double, kOrder + 1>& d) const {
    Jet8 u = *this;
    u.c_[0] = 0.0;  // u = jet - value
    Jet8 out(d[0]);
    Jet8 upow = u;
    double fact = 1.0;
    for (int k = 1; k <= kOrder; ++k) {
      fact *= k;
      out += upow * (d[k] / fact);
      if (k < kOrder) upow = upow * u;
    }
    return out;
  }

  static const std::vector<Exps>& exponents() { return tables().exps; }

  static int index_of(const Exps& e) {
    const Tables& t = tables();
    auto it = t.lookup.find(pack(e));
    if (it == t.lookup.end()) throw Error(Errc::BadInput, "jet exponent above truncation order");
    return it->second;
  }

 private:
  struct Triple {
    std::uint16_t i, j, k;
  };
  struct Tables {
    std::vector<Exps> exps;
    std::unordered_map<std::uint32_t, int> lookup;
    std::vector<Triple> products;
  };

  static std::uint32_t pack(const Exps& e) {
    std::uint32_t p = 0;
    for (int v = 0; v < kVars; ++v) p = (p << 3) | e[v];
    return p;
  }

  static const Tables& tables() {
    static const Tables t = [] {
      Tables t;
      // enumerate exponents by total degree, then lexicographically
      Exps e{};
      for (int deg = 0; deg <= kOrder; ++deg) {
        enumerate(e, 0, deg, t.exps);
      }
      for (size_t i = 0; i < t.exps.size(); ++i) t.lookup[pack(t.exps[i])] = static_cast<int>(i);
      for (size_t i = 0; i < t.exps.size(); ++i) {
        int di = degree(t.exps[i]);
        for (size_t j = 0; j < t.exps.size(); ++j) {
          if (di + degree(t.exps[j]) > kOrder) continue;
          Exps s{};
          for (int v = 0; v < kVars; ++v) s[v] = t.exps[i][v] + t.exps[j][v];
          t.products.push_back({static_cast<std::uint16_t>(i), static_cast<std::uint16_t>(j),
                                static_cast<std::uint16_t>(t.lookup.at(pack(s)))});
        }
      }
      return t;
    }();
    return t;
  }

  static int degree(const Exps& e) {
    int d = 0;
    for (int v = 0; v < kVars; ++v) d += e[v];
    return d;
  }

  static void enumerate(Exps& e, int var, int remaining, std::vector<Exps>& out) {
    if (var == kVars - 1) {
      e[var] = static_cast<std::uint8_t>(remaining);
      out.push_back(e);
      e[var] = 0;
      return;
    }
    for (int k = remaining; k >= 0; --k) {
      e[var] = static_cast<std::uint8_t>(k);
      enumerate(e, var + 1, remaining - k, out);
    }
    e[var] = 0;
  }

  static const std::vector<Triple>& product_table() { return tables().products; }

  std::array<double, kCoeffs> c_;
};

inline Jet8 jet_exp(const Jet8& u) {
  double e = std::exp(u.value());
  return u.compose({e, e, e, e, e});
}

inline Jet8 jet_reciprocal(const Jet8& u) {
  double v = u.value();
  if (v == 0.0) throw Error(Errc::BadInput, "reciprocal of zero jet");
  double v2 = v * v, v3 = v2 * v, v4 = v3 * v, v5 = v4 * v;
  return u.compose({1.0 / v, -1.0 / v2, 2.0 / v3, -6.0 / v4, 24.0 / v5});
}

}  // namespace sympair

#pragma once

#include <fstream>
#include <string>

#include "json.hpp"
#include "sympair/algebra.hpp"
#include "sympair/grid.hpp"
#include "sympair/orbint.hpp"

namespace sympair {

using ordered_json = nlohmann::ordered_json;

inline ordered_json to_json(const Mat2& m) {
  return ordered_json::array({ordered_json::array({m.a00, m.a01}),
                              ordered_json::array({m.a10, m.a11})});
}

inline Mat2 mat2_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2 || j[0].size() != 2 || j[1].size() != 2)
    throw Error(Errc::BadInput, "expected a 2x2 row-major array");
  return {j[0][0].get<double>(), j[0][1].get<double>(), j[1][0].get<double>(),
          j[1][1].get<double>()};
}

inline ordered_json to_json(const BlockVector& x) {
  ordered_json j;
  j["Y"] = to_json(x.Y);
  j["Z"] = to_json(x.Z);
  return j;
}

inline BlockVector blockvector_from_json(const nlohmann::json& j) {
  return {mat2_from_json(j.at("Y")), mat2_from_json(j.at("Z"))};
}

inline ordered_json to_json(const HElement& h) {
  ordered_json j;
  j["A"] = to_json(h.A);
  j["B"] = to_json(h.B);
  return j;
}

inline ordered_json to_json(const cplx& z) { return ordered_json::array({z.real(), z.imag()}); }

inline ordered_json to_json(const OrbitInvariants& v) {
  ordered_json j;
  j["Q"] = v.Q;
  j["S"] = v.S;
  j["S0"] = v.S0;
  j["delta"] = to_json(v.delta);
  j["u"] = to_json(v.u);
  j["v"] = to_json(v.v);
  return j;
}

inline ordered_json to_json(const ClassifyResult& r) {
  ordered_json j;
  j["class"] = regularity_name(r.cls);
  j["in_U"] = r.in_U;
  j["in_Um"] = r.in_Um;
  j["in_U3"] = r.in_U3;
  j["in_varpi_U3"] = r.in_varpi_U3;
  if (r.vanishing_root != 0) j["vanishing_root"] = r.vanishing_root;
  return j;
}

inline void write_csv(const Grid1& g, std::ostream& os) {
  os << "bin_center,density,stderr,count\n";
  for (int i = 0; i < g.n; ++i)
    os << g.center(i) << ',' << g.density(i) << ',' << g.density_err(i) << ',' << g.count[i]
       << '\n';
}

inline void write_csv(const Grid2& g, std::ostream& os,
                      double (*jac)(double, double) = nullptr) {
  os << "x_center,y_center,density,stderr,count\n";
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.ny; ++j) {
      double d = g.density(i, j), e = g.density_err(i, j);
      if (jac) {
        double v = jac(g.xcenter(i), g.ycenter(j));
        d /= v;
        e /= v;
      }
      os << g.xcenter(i) << ',' << g.ycenter(j) << ',' << d << ',' << e << ','
         << g.count[g.idx(i, j)] << '\n';
    }
}

inline ordered_json to_json(const Grid2& g) {
  ordered_json j;
  j["xlo"] = g.xlo;
  j["xhi"] = g.xhi;
  j["nx"] = g.nx;
  j["ylo"] = g.ylo;
  j["yhi"] = g.yhi;
  j["ny"] = g.ny;
  j["n_samples"] = g.n_samples;
  j["outside_weight"] = g.outside;
  ordered_json d = ordered_json::array(), e = ordered_json::array(), c = ordered_json::array();
  for (int i = 0; i < g.nx; ++i)
    for (int k = 0; k < g.ny; ++k) {
      d.push_back(g.density(i, k));
      e.push_back(g.density_err(i, k));
      c.push_back(g.count[g.idx(i, k)]);
    }
  j["density"] = std::move(d);
  j["stderr"] = std::move(e);
  j["count"] = std::move(c);
  return j;
}

inline ordered_json to_json(const Grid1& g) {
  ordered_json j;
  j["lo"] = g.lo;
  j["hi"] = g.hi;
  j["bins"] = g.n;
  j["n_samples"] = g.n_samples;
  j["outside_weight"] = g.outside;
  ordered_json d = ordered_json::array(), e = ordered_json::array(), c = ordered_json::array();
  for (int i = 0; i < g.n; ++i) {
    d.push_back(g.density(i));
    e.push_back(g.density_err(i));
    c.push_back(g.count[i]);
  }
  j["density"] = std::move(d);
  j["stderr"] = std::move(e);
  j["count"] = std::move(c);
  return j;
}

}  // namespace sympair

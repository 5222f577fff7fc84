// Command-line front end: classification, normal forms, densities,
// special-function tables, eigenfunction evaluation, and the verification
// suites, with reproducible seeds and machine-readable reports.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "sympair/eigendist.hpp"
#include "sympair/meanfn.hpp"
#include "sympair/orbint.hpp"
#include "sympair/report.hpp"
#include "sympair/serialize.hpp"
#include "sympair/verify.hpp"

namespace {

using namespace sympair;

struct XInput {
  std::string y_text, z_text, file;
  BlockVector parse() const {
    if (!file.empty()) {
      std::ifstream in(file);
      if (!in) throw Error(Errc::BadInput, "cannot open " + file);
      nlohmann::json j;
      in >> j;
      return blockvector_from_json(j);
    }
    if (y_text.empty() || z_text.empty())
      throw Error(Errc::BadInput, "provide --y and --z (row-major 2x2 JSON) or --in FILE");
    return {mat2_from_json(nlohmann::json::parse(y_text)),
            mat2_from_json(nlohmann::json::parse(z_text))};
  }
};

void add_x_options(CLI::App* cmd, XInput& x) {
  cmd->add_option("--y", x.y_text, "Y block as a row-major 2x2 JSON array");
  cmd->add_option("--z", x.z_text, "Z block as a row-major 2x2 JSON array");
  cmd->add_option("--in", x.file, "JSON file with {\"Y\": [[..]], \"Z\": [[..]]}");
}

void emit(const nlohmann::ordered_json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream out(out_path);
    out << j.dump(2) << "\n";
    std::cout << "wrote " << out_path << "\n";
  }
}

Bump named_bump(const std::string& name) {
  if (name == "um") return Bump({Mat2::diag(1, 1), Mat2::diag(1, -1)}, 0.25);
  if (name == "u3") return Bump({Mat2::diag(2, 2), Mat2::diag(2, 2)}, 0.4);
  if (name == "varpi-u3") return Bump({Mat2::diag(2, 2), Mat2::diag(-2, -2)}, 0.4);
  if (name == "wall") return Bump({Mat2::diag(1, 0), Mat2::diag(1, 0)}, 0.1);
  if (name == "a2") return Bump({Mat2::rot(1.0, 0.6), Mat2::rot(1.0, 0.6)}, 0.15);
  throw Error(Errc::BadInput, "unknown bump name: " + name);
}

BasisFunction named_basis(const std::string& name, cplx l1, cplx l2) {
  for (const auto& bf : basis_functions(l1, l2))
    if (bf.name() == name) return bf;
  throw Error(Errc::BadInput, "unknown basis function: " + name);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical harmonic analysis on the symmetric pair "
               "(gl(4,R), gl(2,R) x gl(2,R))"};
  app.require_subcommand(1);

  std::string out_path;
  app.add_option("--out", out_path, "write the JSON report to this file")->capture_default_str();
  // global options may follow the subcommand name

  // ---- invariants ----------------------------------------------------------
  XInput xin;
  auto* inv_cmd = app.add_subcommand("invariants", "orbit invariants (Q, S, S0, delta, u, v)");
  add_x_options(inv_cmd, xin);

  // ---- classify ------------------------------------------------------------
  XInput xcl;
  double cls_tol = 1e-9;
  auto* cls_cmd = app.add_subcommand("classify", "regularity class and open-set membership");
  add_x_options(cls_cmd, xcl);
  cls_cmd->add_option("--tol", cls_tol, "relative tolerance")->capture_default_str();

  // ---- normal-form ---------------------------------------------------------
  XInput xnf;
  auto* nf_cmd = app.add_subcommand("normal-form", "Cartan class, parameters, conjugator");
  add_x_options(nf_cmd, xnf);

  // ---- meanfn --------------------------------------------------------------
  auto* mf_cmd = app.add_subcommand(
      "meanfn", "pushforward density of the standard Gaussian under a signature form");
  int mf_p = 1, mf_q = 1, mf_bins = 2000;
  double mf_tlo = -10.0, mf_thi = 10.0;
  std::uint64_t mf_n = 1'000'000, mf_seed = 0;
  bool mf_fit = false;
  std::string mf_format = "csv";
  mf_cmd->add_option("--p", mf_p, "positive part of the signature")->capture_default_str();
  mf_cmd->add_option("--q", mf_q, "negative part of the signature")->capture_default_str();
  mf_cmd->add_option("--bins", mf_bins)->capture_default_str();
  mf_cmd->add_option("--tlo", mf_tlo)->capture_default_str();
  mf_cmd->add_option("--thi", mf_thi)->capture_default_str();
  mf_cmd->add_option("--n", mf_n, "sample count")->capture_default_str();
  mf_cmd->add_option("--seed", mf_seed, "stream seed")->required();
  mf_cmd->add_flag("--fit", mf_fit, "include a singular fit near t = 0");
  mf_cmd->add_option("--format", mf_format, "csv or json")->capture_default_str();

  // ---- orbital-density -----------------------------------------------------
  auto* od_cmd =
      app.add_subcommand("orbital-density", "orbital-integral densities of a bump");
  std::string od_bump = "um";
  XInput od_x;
  double od_radius = 0.0;
  std::uint64_t od_n = 2'000'000, od_seed = 0;
  bool od_weyl = false;
  std::string od_prefix = "orbital";
  od_cmd->add_option("--bump", od_bump, "named bump: um, u3, varpi-u3, wall, a2")
      ->capture_default_str();
  add_x_options(od_cmd, od_x);
  od_cmd->add_option("--radius", od_radius, "radius when --y/--z given");
  od_cmd->add_option("--n", od_n)->capture_default_str();
  od_cmd->add_option("--seed", od_seed)->required();
  od_cmd->add_flag("--weyl", od_weyl, "also emit the Weyl consistency report");
  od_cmd->add_option("--prefix", od_prefix, "output file prefix")->capture_default_str();

  // ---- specfun-table -------------------------------------------------------
  auto* sf_cmd = app.add_subcommand("specfun-table", "tabulate a series solution");
  std::string sf_kind = "phi";
  double sf_lre = 1.0, sf_lim = 0.0, sf_zlo = -2.0, sf_zhi = 4.0;
  int sf_count = 41;
  sf_cmd->add_option("--kind", sf_kind, "phi, w, W (principal log), Wr (real log)")
      ->capture_default_str();
  sf_cmd->add_option("--lambda-re", sf_lre)->capture_default_str();
  sf_cmd->add_option("--lambda-im", sf_lim)->capture_default_str();
  sf_cmd->add_option("--zlo", sf_zlo)->capture_default_str();
  sf_cmd->add_option("--zhi", sf_zhi)->capture_default_str();
  sf_cmd->add_option("--count", sf_count)->capture_default_str();

  // ---- eigendist -----------------------------------------------------------
  auto* ed_cmd = app.add_subcommand("eigendist", "evaluate a basis eigenfunction at a point");
  std::string ed_bf = "ana", ed_spec;
  double ed_l1re = 1.5, ed_l1im = 0.0, ed_l2re = -0.75, ed_l2im = 0.0;
  XInput ed_x;
  ed_cmd->add_option("--bf", ed_bf, "ana, sing, plus_phi_phi, plus_phi_w, plus_w_phi, plus_w_w")
      ->capture_default_str();
  ed_cmd->add_option("--l1-re", ed_l1re)->capture_default_str();
  ed_cmd->add_option("--l1-im", ed_l1im)->capture_default_str();
  ed_cmd->add_option("--l2-re", ed_l2re)->capture_default_str();
  ed_cmd->add_option("--l2-im", ed_l2im)->capture_default_str();
  ed_cmd->add_option("--spec", ed_spec,
                     "JSON file {bf, lambda1: [re,im], lambda2: [re,im], X: {Y, Z}}");
  add_x_options(ed_cmd, ed_x);

  // ---- verify ---------------------------------------------------------------
  auto* vf_cmd = app.add_subcommand("verify", "run a verification suite");
  std::string vf_suite = "all";
  std::uint64_t vf_seed = 0;
  bool vf_quick = false;
  vf_cmd->add_option("suite", vf_suite,
                     "algebra, meanfn, orbint, specfun, dunkl, matching, weak, "
                     "integrability, all")
      ->capture_default_str();
  vf_cmd->add_option("--seed", vf_seed)->required();
  vf_cmd->add_flag("--quick", vf_quick, "reduced sample counts (smoke test)");

  for (CLI::App* sc : app.get_subcommands({})) sc->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*inv_cmd) {
      emit(to_json(invariants(xin.parse())), out_path);
    } else if (*cls_cmd) {
      emit(to_json(classify(xcl.parse(), cls_tol)), out_path);
    } else if (*nf_cmd) {
      BlockVector X = xnf.parse();
      NormalForm nf = normal_form(X);
      nlohmann::ordered_json j;
      j["class"] = cartan_name(nf.cls);
      j["params"] = nlohmann::ordered_json::array({nf.p1, nf.p2});
      j["h"] = to_json(nf.h);
      BlockVector rec = adjoint(nf.h, X);
      j["residual"] = (rec - canonical_element(nf.cls, nf.p1, nf.p2)).norm();
      emit(j, out_path);
    } else if (*mf_cmd) {
      Signature sig(mf_p, mf_q);
      SampleableFunction f = gaussian_function(sig);
      DensityGrid1 d = mean_density(sig, f, mf_tlo, mf_thi, mf_bins, mf_n, mf_seed);
      if (mf_format == "csv") {
        if (out_path.empty()) {
          write_csv(d.grid, std::cout);
        } else {
          std::ofstream out(out_path);
          write_csv(d.grid, out);
          std::cout << "wrote " << out_path << "\n";
        }
      } else {
        nlohmann::ordered_json j;
        j["signature"] = nlohmann::ordered_json::array({mf_p, mf_q});
        j["seed"] = mf_seed;
        j["n"] = mf_n;
        j["integral"] = d.integral_estimate;
        j["integral_err"] = d.integral_err;
        j["grid"] = to_json(d.grid);
        if (mf_fit) {
          SingularFit fit = singular_fit(d, sig, FitSide::Right);
          j["fit"] = {{"a", fit.a}, {"b", fit.b}, {"a_err", fit.a_err}, {"b_err", fit.b_err}};
        }
        emit(j, out_path);
      }
    } else if (*od_cmd) {
      std::optional<Bump> bump;
      if (!od_x.y_text.empty() || !od_x.file.empty()) {
        if (od_radius <= 0.0) throw Error(Errc::BadInput, "--radius required with --y/--z");
        bump.emplace(od_x.parse(), od_radius);
      } else {
        bump.emplace(named_bump(od_bump));
      }
      OrbitalDensities od = orbital_densities(*bump, {}, od_n, od_seed);
      auto dump = [&](const Grid2& g, const char* tag, double (*jac)(double, double)) {
        std::string path = od_prefix + std::string("_") + tag + ".csv";
        std::ofstream out(path);
        write_csv(g, out, jac);
        std::cout << "wrote " << path << "\n";
      };
      if (od.has_m) dump(od.m, "m", &OrbitalDensities::jac_m);
      if (od.has_a2) dump(od.a2, "a2", &OrbitalDensities::jac_a2);
      if (od.has_r) dump(od.r, "r", &OrbitalDensities::jac_r);
      if (od_weyl) {
        auto rows = weyl_check(*bump, od, {WeylPhi::One, WeylPhi::Q, WeylPhi::S, WeylPhi::Q2},
                               od_n, od_seed);
        nlohmann::ordered_json j;
        j["seed"] = od_seed;
        j["n"] = od_n;
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& r : rows) {
          arr.push_back({{"phi", weyl_phi_name(r.phi)},
                         {"lhs", r.lhs},
                         {"lhs_err", r.lhs_err},
                         {"rhs", r.rhs},
                         {"rhs_err", r.rhs_err},
                         {"sigma", r.combined_err()}});
        }
        j["weyl"] = std::move(arr);
        emit(j, out_path.empty() ? od_prefix + "_weyl.json" : out_path);
      }
    } else if (*sf_cmd) {
      SeriesKind kind;
      if (sf_kind == "phi")
        kind = SeriesKind::Phi;
      else if (sf_kind == "w")
        kind = SeriesKind::WSmall;
      else if (sf_kind == "W")
        kind = SeriesKind::WComplex;
      else if (sf_kind == "Wr")
        kind = SeriesKind::WReal;
      else
        throw Error(Errc::BadInput, "unknown kind " + sf_kind);
      SeriesSolution sol{cplx(sf_lre, sf_lim), kind};
      std::ostream* os = &std::cout;
      std::ofstream file;
      if (!out_path.empty()) {
        file.open(out_path);
        os = &file;
      }
      *os << "z,value_re,value_im,residual\n";
      for (int i = 0; i < sf_count; ++i) {
        double z = sf_zlo + (sf_zhi - sf_zlo) * i / std::max(1, sf_count - 1);
        if ((kind == SeriesKind::WReal || kind == SeriesKind::WComplex) && z == 0.0) continue;
        if (kind == SeriesKind::WComplex && z < 0.0) continue;
        cplx v = eval(sol, z);
        cplx r = ode_residual(sol, z);
        *os << z << ',' << v.real() << ',' << v.imag() << ',' << std::abs(r) << '\n';
      }
      if (!out_path.empty()) std::cout << "wrote " << out_path << "\n";
    } else if (*ed_cmd) {
      cplx l1(ed_l1re, ed_l1im), l2(ed_l2re, ed_l2im);
      BlockVector X{};
      if (!ed_spec.empty()) {
        std::ifstream in(ed_spec);
        if (!in) throw Error(Errc::BadInput, "cannot open " + ed_spec);
        nlohmann::json j;
        in >> j;
        ed_bf = j.at("bf").get<std::string>();
        if (j.contains("lambda1")) l1 = cplx(j["lambda1"][0], j["lambda1"][1]);
        if (j.contains("lambda2")) l2 = cplx(j["lambda2"][0], j["lambda2"][1]);
        X = blockvector_from_json(j.at("X"));
      } else {
        X = ed_x.parse();
      }
      BasisFunction bf = named_basis(ed_bf, l1, l2);
      cplx v = eval(bf, X);
      nlohmann::ordered_json j;
      j["bf"] = bf.name();
      j["lambda1"] = to_json(l1);
      j["lambda2"] = to_json(l2);
      j["X"] = to_json(X);
      j["value"] = to_json(v);
      emit(j, out_path);
    } else if (*vf_cmd) {
      VerifyOptions opt;
      opt.seed = vf_seed;
      if (vf_quick) opt.n_scale = 1.0 / 16.0;
      auto suites = run_suites(vf_suite, opt);
      nlohmann::ordered_json inputs;
      inputs["suite"] = vf_suite;
      inputs["quick"] = vf_quick;
      inputs["lambda1"] = to_json(opt.lambda1);
      inputs["lambda2"] = to_json(opt.lambda2);
      nlohmann::ordered_json rep = report_json(suites, opt.seed, inputs);
      bool pass = rep["pass"].get<bool>();
      for (const auto& s : suites)
        std::cout << (s.pass() ? "[PASS] " : "[FAIL] ") << s.suite << "\n";
      emit(rep, out_path);
      return pass ? 0 : 1;
    }
  } catch (const Error& e) {
    nlohmann::ordered_json err;
    err["error"] = errc_name(e.code());
    err["message"] = e.what();
    std::cerr << err.dump() << "\n";
    return e.code() == Errc::BadInput ? 2 : 1;
  } catch (const std::exception& e) {
    nlohmann::ordered_json err;
    err["error"] = "Exception";
    err["message"] = e.what();
    std::cerr << err.dump() << "\n";
    return 1;
  }
  return 0;
}

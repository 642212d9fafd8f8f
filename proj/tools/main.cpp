#include <cstdio>
#include <iostream>

#include "CLI11.hpp"
#include "io.hpp"

using namespace friedlab;
using io::json;

namespace {

cplx parse_complex(const std::string& s) {
  auto comma = s.find(',');
  try {
    if (comma == std::string::npos) return std::stod(s);
    return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
  } catch (const std::exception&) {
    throw DomainError("bad complex number '" + s + "' (want re,im)");
  }
}

std::vector<cplx> parse_complex_list(const std::vector<std::string>& v) {
  std::vector<cplx> out;
  for (auto& s : v) out.push_back(parse_complex(s));
  return out;
}

void emit(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-")
    std::cout << text;
  else
    io::write_file(out, text);
}

void emit(const std::string& out, const json& j) { emit(out, j.dump(2) + "\n"); }

FriedrichsModel rational_model(const std::string& arg) {
  auto m = io::model_from_json(io::load_json_arg(arg));
  if (!std::holds_alternative<FriedrichsModel>(m)) throw DomainError("this verb needs a rational model");
  return std::get<FriedrichsModel>(m);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"friedlab: Friedrichs model M-functions, detectable subspaces and defects"};
  app.require_subcommand(1);

  std::string model, out, grid = "-2,2,-2,2,101,101";
  std::uint64_t seed = 20240601;
  double tol = 1e-8;
  int threads = 0;
  auto common = [&](CLI::App* c, bool needs_model) {
    auto* o = c->add_option("--model", model, "model JSON (inline or path)");
    if (needs_model) o->required();
    c->add_option("--out", out, "output path (default stdout)");
    c->add_option("--seed", seed, "random seed");
    c->add_option("--tol", tol, "pass/fail tolerance");
  };

  // verify
  auto* verify = app.add_subcommand("verify", "randomized identity suite");
  common(verify, false);
  int models = 1000, max_poles = 6;
  bool corrupt = false, as_json = false;
  verify->add_option("--models", models, "number of random models");
  verify->add_option("--max-poles", max_poles, "pole count bound for phi and psi");
  verify->add_option("--threads", threads, "worker threads (0: all cores)");
  verify->add_flag("--corrupt-krein", corrupt, "flip the Krein correction sign (mutation check)");
  verify->add_flag("--json", as_json, "write the report as JSON");

  // mfun
  auto* mfun = app.add_subcommand("mfun", "M_B(lambda) and D(lambda)");
  common(mfun, true);
  std::vector<std::string> lambdas;
  mfun->add_option("--lambda", lambdas, "spectral parameters re,im")->required();

  // resolvent
  auto* resolvent = app.add_subcommand("resolvent", "(A_B - lambda)^-1 g with traces");
  common(resolvent, true);
  std::string lambda_s, g_arg;
  resolvent->add_option("--lambda", lambda_s, "spectral parameter re,im")->required();
  resolvent->add_option("--g", g_arg, "right-hand side, rational JSON (inline or path)")->required();

  // defect
  auto* defect = app.add_subcommand("defect", "defect of the detectable subspace");
  common(defect, true);
  std::string route = "hardy", alpha_s = "1", mu_s;
  std::vector<double> jumps;
  defect->add_option("--route", route, "hardy | tilde | toeplitz | spectrum | disjoint | jump")
      ->check(CLI::IsMember({"hardy", "tilde", "toeplitz", "spectrum", "disjoint", "jump"}));
  defect->add_option("--alpha", alpha_s, "alpha for the toeplitz route");
  defect->add_option("--mu", mu_s, "point for the spectrum route");
  defect->add_option("--k", jumps, "real points for the jump route");

  // scan
  auto* scan = app.add_subcommand("scan", "defect over a grid of the alpha family");
  common(scan, true);
  std::string plane_s = "ALPHA";
  scan->add_option("--plane", plane_s, "ALPHA | MU | MU_HAT | INV_ALPHA")
      ->check(CLI::IsMember({"ALPHA", "MU", "MU_HAT", "INV_ALPHA"}));
  scan->add_option("--grid", grid, "x0,x1,y0,y1,nx,ny");
  scan->add_option("--threads", threads, "worker threads (0: all cores)");

  // curve
  auto* curve = app.add_subcommand("curve", "real-root curve of D+ in the 1/alpha plane");
  common(curve, true);
  int reference_n = 300;
  std::string summary;
  curve->add_option("--reference-n", reference_n, "flood-fill grid size");
  curve->add_option("--summary", summary, "write the JSON summary here");

  // figure2
  auto* fig2 = app.add_subcommand("figure2", "four-pole petal construction with component defects");
  common(fig2, false);
  int crossings = 100;
  fig2->add_option("--crossings", crossings, "curve crossings to check");
  fig2->add_option("--reference-n", reference_n, "flood-fill grid size");

  // recon
  auto* recon = app.add_subcommand("recon", "reconstruct psi, B and M from a restricted resolvent oracle");
  common(recon, true);
  std::string transcript;
  recon->add_option("--lambda", lambdas, "held-out lambdas re,im");
  recon->add_option("--transcript", transcript, "write the oracle query log here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*verify) {
      VerifySettings s;
      s.seed = seed;
      s.models = models;
      s.max_poles = max_poles;
      s.tol = tol;
      s.corrupt_krein = corrupt;
      s.threads = threads;
      auto r = run_verify_suite(s);
      if (as_json)
        emit(out, io::to_json(r));
      else
        emit(out, r.text() + "hash " + [&] {
          char b[24];
          std::snprintf(b, sizeof b, "%016llx", static_cast<unsigned long long>(r.hash()));
          return std::string(b);
        }() + "\n");
      return r.pass ? 0 : 1;
    }

    if (*mfun) {
      auto any = io::model_from_json(io::load_json_arg(model));
      json a = json::array();
      for (cplx l : parse_complex_list(lambdas))
        a.push_back(std::visit([&](const auto& m) { return io::to_json(m_function(m, l)); }, any));
      emit(out, a);
      return 0;
    }

    if (*resolvent) {
      auto m = rational_model(model);
      auto g = io::ratfun_from_json(io::load_json_arg(g_arg));
      emit(out, io::to_json(apply_resolvent(m, parse_complex(lambda_s), g)));
      return 0;
    }

    if (*defect) {
      auto any = io::model_from_json(io::load_json_arg(model));
      if (route == "disjoint" || route == "jump") {
        if (!std::holds_alternative<PiecewiseModel>(any)) throw DomainError("route needs a piecewise model");
        const auto& pm = std::get<PiecewiseModel>(any);
        if (route == "disjoint") {
          emit(out, io::to_json(disjoint_support_classify(pm.phi(), pm.psi())));
        } else {
          json a = json::array();
          for (double k : jumps) a.push_back(io::to_json(mb_jump(pm, k)));
          emit(out, a);
        }
        return 0;
      }
      if (!std::holds_alternative<FriedrichsModel>(any)) throw DomainError("route needs a rational model");
      const auto& m = std::get<FriedrichsModel>(any);
      if (route == "hardy") {
        json j = io::to_json(defect_hardy_plus(m));
        json basis = json::array();
        for (auto& g : sperp_basis(m)) basis.push_back(io::to_json(g));
        j["sperp"] = basis;
        emit(out, j);
      } else if (route == "tilde") {
        emit(out, io::to_json(defect_hardy_plus(tilde_model(m))));
      } else if (route == "toeplitz") {
        emit(out, io::to_json(toeplitz_defect(m, parse_complex(alpha_s))));
      } else {
        if (mu_s.empty()) throw DomainError("spectrum route needs --mu");
        emit(out, io::to_json(spectrum_T_membership(m.psi() * m.phibar(), parse_complex(mu_s))));
      }
      return 0;
    }

    if (*scan) {
      auto m = rational_model(model);
      auto g = scan_defect_grid(m, *parse_plane(plane_s), parse_grid(grid), threads);
      emit(out, scan_csv(g));
      return 0;
    }

    if (*curve) {
      auto m = rational_model(model);
      CurveSettings cs;
      cs.reference_n = reference_n;
      auto c = trace_real_root_curve(m, cs);
      emit(out, curve_csv(c));
      if (!summary.empty()) io::write_file(summary, io::to_json(c).dump(2) + "\n");
      return c.certificate < 1e-8 ? 0 : 1;
    }

    if (*fig2) {
      auto r = figure2_pipeline({}, crossings, reference_n);
      emit(out, io::to_json(r));
      return r.ok() ? 0 : 1;
    }

    if (*recon) {
      auto m = rational_model(model);
      auto oracle = ResolventOracle::from_model(m);
      RecoverySettings s;
      s.lambda_grid = parse_complex_list(lambdas);
      if (s.lambda_grid.empty()) s.lambda_grid = {{0.3, 0.9}, {-1.2, 0.5}, {0.8, -0.7}, {-0.4, -1.3}};
      auto r = recover_from_restricted_resolvent(oracle, s);
      emit(out, io::to_json(r));
      if (!transcript.empty()) io::write_file(transcript, io::transcript_json(oracle).dump(2) + "\n");
      return 0;
    }
  } catch (const json::exception& e) {
    std::cerr << "json: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

#include "io.hpp"

#include <fstream>
#include <sstream>

namespace friedlab::io {

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw DomainError("expected a complex number [re, im], got " + j.dump());
}

namespace {

json complex_list(const std::vector<cplx>& v) {
  json a = json::array();
  for (cplx z : v) a.push_back(to_json(z));
  return a;
}

std::vector<cplx> complex_list_from(const json& j) {
  std::vector<cplx> v;
  for (auto& x : j) v.push_back(complex_from_json(x));
  return v;
}

const char* kind_name(Piece::Kind k) {
  switch (k) {
    case Piece::Kind::indicator: return "indicator";
    case Piece::Kind::rational_restriction: return "rational-restriction";
    case Piece::Kind::reciprocal_cauchy_of: return "reciprocal-cauchy-of";
    case Piece::Kind::custom: return "custom";
  }
  return "?";
}

const char* root_class_name(RootClass c) {
  switch (c) {
    case RootClass::lower: return "LOWER";
    case RootClass::real: return "REAL";
    case RootClass::upper: return "UPPER";
  }
  return "?";
}

}  // namespace

json to_json(const RatFun& f) {
  json poles = json::array();
  for (auto& p : f.poles()) poles.push_back({{"at", to_json(p.loc)}, {"order", p.order}});
  return {{"num", complex_list(f.num().coeffs())}, {"poles", poles}};
}

RatFun ratfun_from_json(const json& j) {
  if (j.is_number() || (j.is_array() && j.size() == 2 && j[0].is_number())) return RatFun(complex_from_json(j));
  if (!j.is_object()) throw DomainError("rational function: expected an object");
  if (j.contains("terms")) {
    std::vector<PFTerm> terms;
    for (auto& t : j.at("terms"))
      terms.push_back({complex_from_json(t.at("pole")), t.value("order", 1), complex_from_json(t.at("coeff"))});
    Poly pp;
    if (j.contains("poly")) pp = Poly(complex_list_from(j.at("poly")));
    return RatFun::from_partial_fractions(terms, pp);
  }
  std::vector<Pole> poles;
  for (auto& p : j.value("poles", json::array())) {
    cplx z = complex_from_json(p.at("at"));
    poles.push_back({z, p.value("order", 1), classify(z)});
  }
  return RatFun(Poly(complex_list_from(j.at("num"))), poles);
}

json to_json(const PiecewiseFun& f) {
  json a = json::array();
  for (auto& p : f.pieces()) {
    json e = {{"interval", {p.a, p.b}}, {"kind", kind_name(p.kind)}};
    switch (p.kind) {
      case Piece::Kind::indicator: e["value"] = to_json(p.value); break;
      case Piece::Kind::rational_restriction: e["rational"] = to_json(p.rational); break;
      case Piece::Kind::reciprocal_cauchy_of:
        e["source"] = {p.src_a, p.src_b};
        e["value"] = to_json(p.value);
        break;
      case Piece::Kind::custom: throw DomainError("custom pieces have no JSON form");
    }
    a.push_back(e);
  }
  return a;
}

PiecewiseFun piecewise_from_json(const json& j) {
  PiecewiseFun out;
  for (auto& e : j) {
    double a = e.at("interval").at(0).get<double>(), b = e.at("interval").at(1).get<double>();
    std::string kind = e.at("kind").get<std::string>();
    PiecewiseFun piece;
    if (kind == "indicator") {
      piece = PiecewiseFun::indicator(a, b, e.contains("value") ? complex_from_json(e["value"]) : cplx(1.0));
    } else if (kind == "rational-restriction") {
      piece = PiecewiseFun::restriction(ratfun_from_json(e.at("rational")), a, b);
    } else if (kind == "reciprocal-cauchy-of") {
      piece = PiecewiseFun::reciprocal_cauchy_of(a, b, e.at("source").at(0).get<double>(),
                                                 e.at("source").at(1).get<double>(),
                                                 e.contains("value") ? complex_from_json(e["value"]) : cplx(1.0));
    } else {
      throw DomainError("unknown piece kind '" + kind + "'");
    }
    out = disjoint_sum(out, piece);
  }
  return out;
}

json to_json(const FriedrichsModel& m) {
  return {{"type", "rational"}, {"phi", to_json(m.phi())}, {"psi", to_json(m.psi())}, {"B", to_json(m.B())}};
}

json to_json(const PiecewiseModel& m) {
  return {{"type", "piecewise"}, {"phi", to_json(m.phi())}, {"psi", to_json(m.psi())}, {"B", to_json(m.B())}};
}

AnyModel model_from_json(const json& j) {
  std::string type = j.value("type", "rational");
  cplx B = j.contains("B") ? complex_from_json(j["B"]) : cplx{};
  if (type == "rational") return FriedrichsModel(ratfun_from_json(j.at("phi")), ratfun_from_json(j.at("psi")), B);
  if (type == "piecewise")
    return PiecewiseModel(piecewise_from_json(j.at("phi")), piecewise_from_json(j.at("psi")), B);
  throw DomainError("unknown model type '" + type + "'");
}

json load_json_arg(const std::string& arg) {
  auto first = arg.find_first_not_of(" \t\n");
  if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) return json::parse(arg);
  std::ifstream in(arg);
  if (!in) throw DomainError("cannot open '" + arg + "'");
  return json::parse(in);
}

json to_json(const MValue& v) {
  return {{"lambda", to_json(v.lambda)},   {"D", to_json(v.D)},
          {"psi_hat", to_json(v.psi_hat)}, {"phibar_hat", to_json(v.phibar_hat)},
          {"M", to_json(v.M)},             {"infinite", v.infinite}};
}

json to_json(const DomainElement& e) {
  return {{"f", to_json(e.f)}, {"c_f", to_json(e.c_f)}, {"gamma1", to_json(e.gamma1)}, {"gamma2", to_json(e.gamma2)}};
}

json to_json(const DefectReport& r) {
  json roots = json::array();
  for (auto& c : r.roots)
    roots.push_back({{"at", to_json(c.loc)}, {"class", root_class_name(c.cls)}, {"multiplicity", c.multiplicity}});
  json out = {{"route", to_string(r.route)}, {"N", r.N}, {"P", r.P}, {"M", r.M}, {"M0", r.M0}};
  if (r.infinite)
    out["defect"] = "INFINITE";
  else
    out["defect"] = r.defect;
  out["degenerate"] = r.degenerate;
  out["roots"] = roots;
  out["flags"] = r.flags;
  return out;
}

json to_json(const ToeplitzReport& r) {
  json out = to_json(r.report);
  out["mu_alpha"] = to_json(r.mu_alpha);
  json s = json::array();
  for (auto& g : r.sperp) s.push_back(to_json(g));
  out["sperp"] = s;
  return out;
}

json to_json(const DisjointReport& r) {
  json iv = json::array();
  for (auto& [a, b] : r.omega_zero) iv.push_back({a, b});
  return {{"class", to_string(r.cls)}, {"omega_zero", iv}, {"min_abs", r.min_abs}, {"side_mismatch", r.side_mismatch}};
}

json to_json(const JumpReport& r) {
  return {{"k", r.k},
          {"jump_Minv", to_json(r.jump_Minv)},
          {"jump_M", to_json(r.jump_M)},
          {"rank", r.rank},
          {"closed_form", r.closed_form}};
}

json to_json(const SpectrumReport& r) {
  return {{"membership", to_string(r.membership)},
          {"point_spectrum", r.point_spectrum},
          {"isolated", r.isolated},
          {"lower_roots", r.lower_roots}};
}

json to_json(const RecoveryResult& r) {
  json samples = json::array();
  for (std::size_t k = 0; k < r.lambda.size(); ++k)
    samples.push_back(
        {{"lambda", to_json(r.lambda[k])}, {"phibar_over_D", to_json(r.phibar_over_D[k])}, {"M", to_json(r.M[k])}});
  return {{"psi", to_json(r.psi)},
          {"B", to_json(r.B)},
          {"trivial", r.trivial},
          {"errors", {{"psi", r.psi_error}, {"B", r.B_error}, {"phibar_over_D", r.phibar_error}}},
          {"B_ladder", complex_list(r.B_ladder)},
          {"samples", samples}};
}

json transcript_json(const ResolventOracle& o) {
  json a = json::array();
  for (auto& q : o.transcript()) {
    std::ostringstream h;
    h << std::hex << q.hash;
    a.push_back({{"lambda", to_json(q.lambda)}, {"mu", to_json(q.mu)}, {"hash", h.str()}});
  }
  return {{"access_model", o.access_model()}, {"queries", a}};
}

json to_json(const VerifyReport& r) {
  json lines = json::array();
  for (auto& l : r.lines)
    lines.push_back({{"kind", to_string(l.kind)},
                     {"draws", l.draws},
                     {"skipped", l.skipped},
                     {"max_residual", l.max_residual},
                     {"worst_draw", l.worst_draw},
                     {"pass", l.pass}});
  std::ostringstream h;
  h << std::hex << r.hash();
  return {{"seed", r.settings.seed}, {"models", r.settings.models}, {"tol", r.settings.tol},
          {"lines", lines},          {"pass", r.pass},                {"hash", h.str()}};
}

json to_json(const CurveTrace& c) {
  json comps = json::array();
  for (int k = 0; k < c.components.count; ++k)
    comps.push_back({{"label", k},
                     {"cells", c.components.size[k]},
                     {"unbounded", static_cast<bool>(c.components.unbounded[k])},
                     {"probe", to_json(c.components.probe[k])}});
  return {{"samples", c.points.size()},
          {"branches", c.branches},
          {"covering", c.covering},
          {"self_intersections", complex_list(c.self_intersections)},
          {"certificate", c.certificate},
          {"uncertified", c.uncertified},
          {"components", comps}};
}

json to_json(const Figure2Report& r) {
  json comps = json::array();
  for (auto& c : r.components)
    comps.push_back({{"label", c.label},
                     {"probe", to_json(c.probe)},
                     {"defect", c.defect},
                     {"lower_roots", c.lower_roots},
                     {"unbounded", c.unbounded},
                     {"cells", c.cells}});
  json cross = json::array();
  for (auto& c : r.crossings)
    cross.push_back({{"t", c.t},
                     {"point", to_json(c.point)},
                     {"defect_left", c.defect_left},
                     {"defect_right", c.defect_right},
                     {"defect_on", c.defect_on}});
  return {{"a", complex_list(r.fig.a)},
          {"c", complex_list(r.fig.c)},
          {"model", to_json(r.fig.model)},
          {"curve", to_json(r.curve)},
          {"components", comps},
          {"crossings", cross},
          {"checks",
           {{"far_field_zero", r.far_field_zero},
            {"components_match_root_count", r.components_match_root_count},
            {"crossings_unit", r.crossings_unit},
            {"on_curve_min", r.on_curve_min}}}};
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError("cannot write '" + path + "'");
  out << text;
}

}  // namespace friedlab::io

#include "doctest.h"
#include "io.hpp"

using namespace friedlab;
using io::json;

TEST_CASE("complex and rational JSON") {
  CHECK(io::complex_from_json(json::parse("[1.5, -2]")) == cplx(1.5, -2));
  CHECK(io::complex_from_json(json::parse("3")) == cplx(3, 0));
  CHECK_THROWS_AS(io::complex_from_json(json::parse("[1, 2, 3]")), DomainError);
  CHECK(io::to_json(cplx(1, -2)).dump() == "[1.0,-2.0]");

  RatFun f = RatFun::pole_term(cplx(0.3, -1), cplx(1, 2)) + RatFun::pole_term(cplx(-1, 0.5), 0.7, 2);
  RatFun g = io::ratfun_from_json(json::parse(io::to_json(f).dump()));
  for (double x : {-2.0, 0.1, 1.7}) CHECK(std::abs(f(x) - g(x)) < 1e-15);

  auto h = io::ratfun_from_json(json::parse(
      R"({"terms": [{"pole": [0, -1], "coeff": [2, 0]}, {"pole": [1, 1], "order": 2, "coeff": [0, 1]}]})"));
  for (double x : {-1.0, 0.5}) {
    cplx want = 2.0 / (x + I) + I / ((x - cplx(1, 1)) * (x - cplx(1, 1)));
    CHECK(std::abs(h(x) - want) < 1e-14);
  }
}

TEST_CASE("model and piecewise JSON") {
  FriedrichsModel m(RatFun::pole_term(-I), RatFun::pole_term(cplx(0.2, -2), 3.0), cplx(0.5, 0.25));
  auto back = std::get<FriedrichsModel>(io::model_from_json(io::to_json(m)));
  CHECK(back.B() == m.B());
  CHECK(std::abs(back.psi()(0.4) - m.psi()(0.4)) < 1e-15);

  auto j = json::parse(R"({"type": "piecewise", "B": [0.3, 0],
     "phi": [{"interval": [0, 1], "kind": "indicator"}],
     "psi": [{"interval": [-2, -1], "kind": "reciprocal-cauchy-of", "source": [0, 1], "value": [1, 0]},
             {"interval": [2, 3], "kind": "rational-restriction", "rational": {"num": [[1, 0]], "poles": [{"at": [0, 1]}]}}]})");
  auto pm = std::get<PiecewiseModel>(io::model_from_json(j));
  CHECK(pm.phi()(0.5) == cplx(1));
  CHECK(pm.phi()(1.5) == cplx(0));
  CHECK(std::abs(pm.psi()(-1.5) - 1.0 / std::log((1 + 1.5) / 1.5)) < 1e-14);
  CHECK(std::abs(pm.psi()(2.5) - 1.0 / (2.5 - I)) < 1e-15);
  auto again = std::get<PiecewiseModel>(io::model_from_json(io::to_json(pm)));
  for (double x : {-1.5, 0.5, 2.5, 4.0}) CHECK(again.psi()(x) == pm.psi()(x));

  CHECK_THROWS_AS(io::model_from_json(json::parse(R"({"type": "other"})")), DomainError);
  CHECK_THROWS_AS(io::piecewise_from_json(json::parse(R"([{"interval": [0, 1], "kind": "spline"}])")), DomainError);
  CHECK_THROWS_AS(io::load_json_arg("/nonexistent/model.json"), DomainError);
  CHECK(io::load_json_arg(" {\"a\": 1}")["a"] == 1);
}

TEST_CASE("report JSON") {
  FriedrichsModel m(RatFun::pole_term(-I), RatFun::pole_term(-I, -2.0) + RatFun::pole_term(-2.0 * I, 3.0), 0.0);
  auto d = io::to_json(defect_hardy_plus(m.with_psi_scaled(5.0)));
  CHECK(d["route"] == "HARDY_PLUS");
  CHECK(d["N"] == 2);
  CHECK(d.contains("roots"));
  auto mv = io::to_json(m_function(m, cplx(0.2, 0.7)));
  CHECK(mv["M"].is_array());
  VerifySettings s;
  s.models = 5;
  auto v = io::to_json(run_verify_suite(s));
  CHECK(v["pass"] == true);
  CHECK(v["lines"].size() == 5);
}

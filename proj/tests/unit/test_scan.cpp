#include "doctest.h"
#include "friedlab/scan.hpp"

using namespace friedlab;

namespace {

// psi = -2/(x+i) + 3/(x+2i), phibar = 1/(x-i)
FriedrichsModel parabola_base() {
  return {RatFun::pole_term(-I), RatFun::pole_term(-I, -2.0) + RatFun::pole_term(-2.0 * I, 3.0), 0.0};
}

double parabola(cplx m) { return m.imag() * m.imag() - 0.5 * (1 + 3 * m.real()); }

}  // namespace

TEST_CASE("grid and plane parsing") {
  auto g = parse_grid("-1,1,-2,2,5,9");
  CHECK(g.nx == 5);
  CHECK(g.ny == 9);
  CHECK(g.node(4, 8) == cplx(1, 2));
  CHECK(g.node(2, 4) == cplx(0, 0));
  CHECK_THROWS_AS(parse_grid("0,1,0,1,3"), DomainError);
  CHECK_THROWS_AS(parse_grid("0,1,0,1,3,x"), DomainError);
  CHECK_THROWS_AS(parse_grid("0,1,0,1,2.5,3"), DomainError);
  for (auto p : {Plane::alpha, Plane::mu, Plane::mu_hat, Plane::inv_alpha}) CHECK(parse_plane(to_string(p)) == p);
  CHECK_FALSE(parse_plane("BETA").has_value());
}

TEST_CASE("plane coordinates map to alpha") {
  auto base = parabola_base();
  cplx a(0.3, -0.7);
  CHECK(std::abs(*alpha_of(base, Plane::mu, 1.0 / (2.0 * pi * I * a)) - a) < 1e-14);
  CHECK(std::abs(*alpha_of(base, Plane::inv_alpha, 1.0 / a) - a) < 1e-14);
  // mu-hat = 2 pi i alpha / ((z1 - w)(z2 - w)) with z = -i, -2i and w = i
  cplx muhat = 2.0 * pi * I * a / ((-I - I) * (-2.0 * I - I));
  CHECK(std::abs(*alpha_of(base, Plane::mu_hat, muhat) - a) < 1e-14);
  CHECK_FALSE(alpha_of(base, Plane::mu, 0.0).has_value());
  FriedrichsModel two_w(RatFun::pole_term(-I) + RatFun::pole_term(-2.0 * I), base.psi(), 0.0);
  CHECK_THROWS_AS(alpha_of(two_w, Plane::mu_hat, 1.0), DomainError);
}

TEST_CASE("parabola family point classification") {
  auto base = parabola_base();
  CHECK(classify_point(base, Plane::mu_hat, 0.0).defect == 0);
  CHECK(classify_point(base, Plane::mu_hat, -1.0).defect == 1);
  // sign of the parabola decides the defect away from it
  for (cplx m : {cplx(2, 0.5), cplx(-0.5, 0.1), cplx(1, 3), cplx(0.2, -2)})
    CHECK(classify_point(base, Plane::mu_hat, m).defect == (parabola(m) > 0 ? 1 : 0));
  // psi = 0 row: nothing to detect
  FriedrichsModel zero(RatFun::pole_term(-I), RatFun{}, 0.0);
  auto g = scan_defect_grid(zero, Plane::alpha, parse_grid("-3,3,-3,3,7,7"), 2);
  for (auto& c : g.cells) CHECK(c.defect == 0);
  // MU plane origin has no alpha
  CHECK(classify_point(base, Plane::mu, 0.0).flag == "UNRESOLVED");
}

TEST_CASE("scan CSV is independent of the thread count") {
  auto base = parabola_base();
  auto grid = parse_grid("-2,3,-2.5,2.5,41,37");
  auto one = scan_csv(scan_defect_grid(base, Plane::mu_hat, grid, 1));
  auto four = scan_csv(scan_defect_grid(base, Plane::mu_hat, grid, 4));
  CHECK(one == four);
  CHECK(one.rfind("re,im,defect,flag\n", 0) == 0);
  CHECK(std::count(one.begin(), one.end(), '\n') == 41 * 37 + 1);
  CHECK(one.find('\r') == std::string::npos);
}

TEST_CASE("conjugation-symmetric data give a symmetric MU map") {
  // x -> -x with conjugation sends alpha to -conj(alpha), that is mu to conj(mu)
  auto base = parabola_base();
  auto g = scan_defect_grid(base, Plane::mu, parse_grid("-0.6,0.6,-0.6,0.6,31,31"), 0);
  int compared = 0;
  for (int j = 0; j < 31; ++j)
    for (int i = 0; i < 31; ++i) {
      auto& a = g.at(i, j);
      auto& b = g.at(i, 30 - j);
      if (a.defect < 0 || b.defect < 0) continue;
      CHECK(a.defect == b.defect);
      ++compared;
    }
  CHECK(compared > 900);
}

TEST_CASE("bisected boundary lies on the parabola") {
  auto base = parabola_base();
  for (double im : {-1.5, -0.4, 0.0, 0.9, 2.0}) {
    // inside (defect 0) at large Re, outside at Re = -3
    cplx p = bisect_defect_boundary(base, Plane::mu_hat, cplx(-3, im), cplx(4 + im * im, im));
    CHECK(std::abs(parabola(p)) < 1e-6);
  }
  CHECK_THROWS_AS(bisect_defect_boundary(base, Plane::mu_hat, cplx(3, 0), cplx(4, 0)), DomainError);
}

TEST_CASE("single-pole real-root curve") {
  FriedrichsModel one(RatFun::pole_term(-I), RatFun::pole_term(cplx(0.5, -1), 1.0), 0.0);
  auto c = trace_real_root_curve(one);
  CHECK(c.branches == 1);
  CHECK(c.covering == 1);
  CHECK(c.self_intersections.empty());
  CHECK(c.certificate < 1e-8);
  CHECK(c.components.count == 2);
  // closed form: 2 pi i c phibar(z)/(z - t) is a circle through 0
  XiData xi = xi_data(one);
  cplx a = xi.a[0], z = xi.z[0];
  cplx centre = 2.0 * pi * I * a / (2.0 * I * z.imag());
  for (std::size_t k = 1; k + 1 < c.points.size(); k += 97)
    CHECK(std::abs(std::abs(c.points[k] - centre) - std::abs(centre)) < 1e-12);
  auto csv = curve_csv(c);
  CHECK(csv.rfind("t,re,im,branch\n", 0) == 0);
}

TEST_CASE("double-covered petal") {
  // psi = -1/(x+i) + 3/(x+2i), phibar = 1/(x-i): xi(0) = 0
  FriedrichsModel m(RatFun::pole_term(-I), RatFun::pole_term(-I, -1.0) + RatFun::pole_term(-2.0 * I, 3.0), 0.0);
  auto c = trace_real_root_curve(m);
  CHECK(c.covering == 2);
  CHECK(c.certificate < 1e-8);
  REQUIRE(c.components.count == 2);
  for (int k = 0; k < 2; ++k) {
    int d = classify_point(m, Plane::inv_alpha, c.components.probe[k]).defect;
    CHECK(d == (c.components.unbounded[k] ? 0 : 2));
  }
}

TEST_CASE("four-pole construction") {
  Figure2Params p;
  auto f = figure2_model(p);
  REQUIRE(f.a.size() == 4);
  // xi vanishes at the prescribed real points
  auto xi = xi_data(f.model);
  for (double l : p.lambda) CHECK(std::abs(xi(l)) < 1e-13);
  for (std::size_t k = 0; k < 4; ++k) CHECK(std::abs(xi.a[k] - f.a[k]) < 1e-13);

  auto r = figure2_pipeline(p, 100, 300);
  CHECK(r.curve.self_intersections.size() == 3);
  CHECK(r.curve.certificate < 1e-8);
  CHECK(r.far_field_zero);
  CHECK(r.components_match_root_count);
  CHECK(r.crossings.size() == 100);
  CHECK(r.crossings_unit);
  CHECK(r.on_curve_min);
  int maxd = 0;
  for (auto& c : r.components) maxd = std::max(maxd, c.defect);
  CHECK(maxd == 4);
  CHECK_THROWS_AS(figure2_model({{0.0}, p.z, 1.0, I}), DomainError);
}

TEST_CASE("verify suite") {
  VerifySettings s;
  s.models = 150;
  s.threads = 1;
  auto a = run_verify_suite(s);
  CHECK(a.pass);
  for (auto& l : a.lines) CHECK(l.draws + l.skipped == 150);
  s.threads = 3;
  auto b = run_verify_suite(s);
  CHECK(a.text() == b.text());
  CHECK(a.hash() == b.hash());
  s.seed += 1;
  CHECK(run_verify_suite(s).hash() != a.hash());

  s.corrupt_krein = true;
  auto bad = run_verify_suite(s);
  CHECK_FALSE(bad.pass);
  for (auto& l : bad.lines) CHECK(l.pass == (l.kind != IdentityKind::krein));
  CHECK(bad.text().find("reproduce: --seed") != std::string::npos);

  // a draw is reproducible from (seed, index)
  auto d1 = verify_draw(7, 12, 6), d2 = verify_draw(7, 12, 6);
  CHECK(d1.model.B() == d2.model.B());
  CHECK(d1.inputs.lambda == d2.inputs.lambda);
  CHECK(fnv1a64("") == 14695981039346656037ull);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cull);
}

#include "doctest.h"
#include "friedlab/pwmodel.hpp"

using namespace friedlab;

namespace {

// phi = chi_[0,1], psi = chi_[-2,-1] / int_0^1 dt/(t-x)
PiecewiseModel disjoint_model(cplx B = 0.0, cplx alpha = 1.0) {
  return {PiecewiseFun::indicator(0, 1), PiecewiseFun::reciprocal_cauchy_of(-2, -1, 0, 1, alpha), B};
}

cplx c_inf(const MixedFun& f) {
  cplx c{};
  for (auto& t : f.terms())
    if (t.tag == 0) c += t.r.c_infinity();
  return c;
}

cplx gamma1(const MixedFun& f) {
  cplx v{};
  for (auto& t : f.terms()) v += t.tag == 0 ? pv_integral(t.r) : integrate_rational_times(t.r, t.h);
  return v;
}

}  // namespace

TEST_CASE("mixed function pairing against quadrature") {
  MixedFun F(RatFun::pole_term(cplx(0.3, 1.0)));
  F.add(RatFun::pole_term(cplx(-1, -0.5), 2.0), PiecewiseFun::indicator(-2, -1), 3);
  MixedFun G(RatFun::pole_term(cplx(1, -2)));
  G.add(RatFun(1.0), PiecewiseFun::indicator(-1.5, 0.5, cplx(0, 1)), 4);
  auto f = [&](double x) { return F(x) * std::conj(G(x)); };
  cplx q = integrate_real_line(f, 1e-11, 100000).value;
  // kinks at the piece endpoints slow the mapped quadrature; compare loosely
  CHECK(std::abs(pairing(F, G) - q) < 1e-6);
  CHECK(std::abs(l2_norm(F) * l2_norm(F) - pairing(F, F).real()) < 1e-12);
}

TEST_CASE("piecewise resolvent solves the equation") {
  auto m = disjoint_model(cplx(0.4, -0.2));
  std::vector<MixedFun> gs;
  gs.emplace_back(RatFun::pole_term(cplx(0.5, -1.0)));
  gs.emplace_back(PiecewiseFun::indicator(-4, -3));
  gs.push_back(solution_operator(m, cplx(0.2, 0.7), 1.0));
  for (cplx l : {cplx(0.5, 0.6), cplx(-1.5, -0.4), cplx(0.1, 0.01)}) {
    for (auto& g : gs) {
      MixedFun f = apply_resolvent(m, l, g);
      cplx cf = c_inf(f);
      cplx inner = pairing(f, MixedFun(m.phi()));
      for (double x : {-3.5, -1.7, -1.2, 0.3, 0.8, 2.0}) {
        cplx lhs = x * f(x) - cf + inner * m.psi()(x) - l * f(x);
        CHECK(std::abs(lhs - g(x)) < 1e-8);
      }
      CHECK(std::abs(gamma1(f) - m.B() * cf) < 1e-8);
    }
  }
}

TEST_CASE("piecewise kernel element and M") {
  auto m = disjoint_model();
  // disjoint supports: D = 1
  CHECK(std::abs(m_function(m, cplx(0.3, 0.5)).D - 1.0) < 1e-14);
  cplx l(0.3, -0.8);
  auto u = kernel_element(m, l);
  cplx cu = c_inf(u);
  CHECK(std::abs(cu - 1.0) < 1e-14);
  // tilde A* u = x u - c_u + <u, phi> psi = l u
  cplx inner = pairing(u, MixedFun(m.phi()));
  for (double x : {-1.5, 0.5, 3.0}) CHECK(std::abs(x * u(x) - cu + inner * m.psi()(x) - l * u(x)) < 1e-9);
  // M from the traces: M (Gamma1 - B Gamma2) u = Gamma2 u
  auto mv = m_function(m, l);
  CHECK(std::abs(mv.M * gamma1(u) - 1.0) < 1e-9);

  auto t = tilde_model(m);
  CHECK(std::abs(t.phi()(-1.5) - m.psi()(-1.5)) < 1e-15);
  CHECK(t.B() == std::conj(m.B()));

  // one-sided M^-1 approach the interior values
  double k = 0.4;
  cplx up = minv_boundary(m, k, Side::plus);
  cplx near = m_function(m, cplx(k, 1e-7)).bracket;
  CHECK(std::abs(up - near) < 1e-5);
}

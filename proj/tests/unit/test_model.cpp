#include <random>

#include <Eigen/Dense>

#include "doctest.h"
#include "friedlab/model.hpp"
#include "friedlab/quadrature.hpp"
#include "random_models.hpp"

using namespace friedlab;
using testing_support::random_ratfun;

namespace {

// Cauchy transform by quadrature on the real line
cplx quad_hat(const RatFun& h, cplx lambda) {
  return integrate_real_line([&](double t) { return h(t) / (t - lambda); }, 1e-12).value;
}

// psi = 1/(x - 3i), phibar = 1/(x - i)
FriedrichsModel example_model(cplx B = 0.0) {
  return {RatFun::pole_term(-I), RatFun::pole_term(3.0 * I), B};
}

}  // namespace

TEST_CASE("traces") {
  auto e = traces(RatFun::pole_term(I));
  CHECK(std::abs(e.c_f - 1.0) < 1e-15);
  CHECK(std::abs(e.gamma2 - 1.0) < 1e-15);
  CHECK(std::abs(e.gamma1 - pi * I) < 1e-14);
  e = traces(RatFun::pole_term(-2.0 * I, 3.0));
  CHECK(std::abs(e.gamma1 + 3.0 * pi * I) < 1e-14);
  e = traces(RatFun(Poly::constant(1.0), {{I, 1}, {-I, 1}}));
  CHECK(std::abs(e.c_f) < 1e-15);
  CHECK(std::abs(e.gamma1 - pi) < 1e-14);
  CHECK_THROWS_AS(traces(RatFun::pole_term(0.5)), DomainError);
  CHECK_THROWS_AS(traces(RatFun(2.0)), DomainError);

  // gamma1 agrees with the symmetric-window integral
  RatFun f = RatFun::pole_term(cplx(1, 2), cplx(0.5, -1)) + RatFun::pole_term(cplx(-1, -1), 2.0);
  auto t = traces(f);
  double R = 1e6;
  cplx window = integrate([&](double x) { return f(x); }, -R, R, 1e-10, 100000).value;
  CHECK(std::abs(window - t.gamma1) < 1e-5);
}

TEST_CASE("D function") {
  FriedrichsModel zero(RatFun::pole_term(I), RatFun{}, 0.0);
  CHECK(d_function(zero, cplx(0.3, 1.0)) == cplx(1.0));

  // psi = 1/(x-z1), phibar = 1/(x-w1) with z1 = -i, w1 = i
  FriedrichsModel m(RatFun::pole_term(-I), RatFun::pole_term(-I), 0.0);
  CHECK(std::abs(d_function(m, I) - (1.0 + pi * I / 2.0)) < 1e-14);

  std::mt19937_64 rng(5);
  for (int t = 0; t < 20; ++t) {
    RatFun phi = random_ratfun(rng, 2), psi = random_ratfun(rng, 2);
    FriedrichsModel mm(phi, psi, 0.0);
    cplx l(0.3 * t - 3, t % 2 ? 0.7 : -0.9);
    cplx d = d_function(mm, l);
    CHECK(std::abs(d - (1.0 + quad_hat(psi * phi.conj_reflect(), l))) < 1e-8);
  }
  CHECK(std::abs(d_function(m, cplx(0, 1e5)) - 1.0) < 1e-4);
  CHECK_THROWS_AS(d_function(m, 0.5), DomainError);
}

TEST_CASE("M function") {
  // psi, phibar both in H2+ (poles in C+) with B = 0, lambda in C+
  FriedrichsModel h(RatFun::pole_term(-2.0 * I), RatFun::pole_term(I), 0.0);
  auto mv = m_function(h, cplx(0.4, 1.3));
  CHECK(std::abs(mv.M - 1.0 / (pi * I)) < 1e-14);
  auto inf = m_function(h.with_B(pi * I), cplx(0.4, 1.3));
  CHECK(inf.infinite);
  CHECK_THROWS_AS(solution_operator(h.with_B(pi * I), cplx(0.4, 1.3), 1.0), SpectralError);

  FriedrichsModel m = example_model(cplx(0.3, -0.1));
  for (cplx l : {cplx(0.2, 0.5), cplx(-1, -0.7), cplx(2, 3)}) {
    mv = m_function(m, l);
    cplx ph = quad_hat(m.psi(), l), fh = quad_hat(m.phibar(), l);
    cplx D = 1.0 + quad_hat(m.psi() * m.phibar(), l);
    double s = l.imag() > 0 ? 1 : -1;
    cplx M = 1.0 / (s * pi * I - ph * fh / D - m.B());
    CHECK(std::abs(mv.M - M) < 1e-8 * (1 + std::abs(M)));
  }
}

TEST_CASE("solution operator and kernel element") {
  FriedrichsModel m = example_model(cplx(0.5, 0.2));
  for (cplx l : {cplx(0.2, -0.5), cplx(1.1, 0.8)}) {
    RatFun u0 = kernel_element(m, l);
    // (tilde A* - l) u = x u - c_u + <u,phi> psi - l u = 0
    auto e0 = traces(u0);
    CHECK(std::abs(e0.gamma2 - 1.0) < 1e-13);
    RatFun res = apply_adjoint(m, e0) - l * u0;
    for (double x : {-2.0, 0.0, 0.7, 3.0}) CHECK(std::abs(res(x)) < 1e-12);

    cplx f(0.6, -1.2);
    auto u = solution_operator(m, l, f);
    CHECK(std::abs(u.gamma1 - m.B() * u.gamma2 - f) < 1e-12);
    CHECK(std::abs(u.gamma2 - m_function(m, l).M * f) < 1e-12);
    CHECK(solution_operator(m, l, 0.0).f.is_zero());
  }
}

TEST_CASE("resolvent") {
  // psi = 0: f = (g + i)/(x - i) for g = 1/(x+i), lambda = i
  FriedrichsModel free(RatFun::pole_term(2.0 * I), RatFun{}, 0.0);
  RatFun g = RatFun::pole_term(-I);
  auto f = apply_resolvent(free, I, g);
  for (double x : {-1.0, 0.5, 2.0}) CHECK(std::abs(f.f(x) - (g(x) + I) / (x - I)) < 1e-13);
  CHECK(std::abs(f.c_f - I) < 1e-13);
  CHECK(std::abs(f.gamma1) < 1e-13);
  CHECK(apply_resolvent(free, I, RatFun{}).f.is_zero());

  std::mt19937_64 rng(12);
  for (int t = 0; t < 50; ++t) {
    FriedrichsModel m(random_ratfun(rng, 2), random_ratfun(rng, 2), cplx(0.1 * t - 2, 0.05 * t));
    RatFun gg = random_ratfun(rng, 3);
    cplx l(0.13 * t - 3, t % 2 ? 0.6 : -0.8);
    DomainElement r;
    try {
      r = apply_resolvent(m, l, gg);
    } catch (const SpectralError&) {
      continue;
    }
    CHECK(std::abs(r.gamma1 - m.B() * r.gamma2) < 1e-9 * (1 + std::abs(r.gamma2)));
    RatFun res = apply_adjoint(m, r) - l * r.f - gg;
    for (double x : {-2.5, -0.3, 0.9, 4.0}) CHECK(std::abs(res(x)) < 1e-9 * (1 + std::abs(gg(x))));
  }
}

TEST_CASE("resolvent residue at a D-zero is rank one") {
  // phibar = 1/(x-i) makes M constant on C+; D = 1 - pi a/(l+i) vanishes at l0
  const cplx want(0.3, 0.8);
  FriedrichsModel m(RatFun::pole_term(-I), RatFun::pole_term(-I, (want + I) / pi), 0.0);
  REQUIRE(!m.d_zeros().empty());
  cplx l0 = m.d_zeros()[0];
  REQUIRE(l0.imag() > 0.2);
  const double r = std::min(0.1, 0.5 * l0.imag());
  const int n = 64;
  std::vector<double> xs{-2.0, -0.7, 0.1, 0.8, 1.6, 3.0};
  auto residue = [&](const RatFun& g) {
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(static_cast<long>(xs.size()));
    for (int j = 0; j < n; ++j) {
      cplx w = std::polar(1.0, 2 * pi * j / n);
      cplx lam = l0 + r * w;
      auto f = apply_resolvent(m, lam, g);
      for (std::size_t i = 0; i < xs.size(); ++i) out[static_cast<long>(i)] += f.f(xs[i]) * r * w / static_cast<double>(n);
    }
    return out;
  };
  Eigen::MatrixXcd A(static_cast<long>(xs.size()), 3);
  A.col(0) = residue(RatFun::pole_term(cplx(0.5, -1)));
  A.col(1) = residue(RatFun::pole_term(cplx(-1, 2), cplx(0, 1)));
  A.col(2) = residue(RatFun::pole_term(cplx(2, -0.5), 1.0, 2));
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A);
  auto sv = svd.singularValues();
  CHECK(sv[0] > 1e-6);
  CHECK(sv[1] < 1e-8 * sv[0]);
}

TEST_CASE("adjoints and the tilde model") {
  FriedrichsModel free(RatFun::pole_term(I), RatFun{}, 0.0);
  RatFun f = RatFun::pole_term(I, 1.0, 2);
  RatFun af = apply_adjoint(free, traces(f));
  for (double x : {-1.0, 0.3, 2.0}) CHECK(std::abs(af(x) - x / ((x - I) * (x - I))) < 1e-14);

  FriedrichsModel m = example_model(cplx(0.3, 0.9));
  auto t = tilde_model(m);
  CHECK(t.B() == std::conj(m.B()));
  auto tt = tilde_model(t);
  CHECK(tt.B() == m.B());
  CHECK(std::abs(tt.phi()(0.4) - m.phi()(0.4)) < 1e-15);
  CHECK(std::abs(tt.psi()(0.4) - m.psi()(0.4)) < 1e-15);

  // star uses <f,psi> phi, tilde_star uses <f,phi> psi
  RatFun g = RatFun::pole_term(cplx(0.2, -1.5));
  auto e = traces(g);
  RatFun d = apply_adjoint(m, e, Adjoint::star) - apply_adjoint(t, e, Adjoint::tilde_star);
  CHECK(std::abs(d(0.7)) < 1e-14);

  std::mt19937_64 rng(3);
  RatFun a = random_ratfun(rng, 2), b = random_ratfun(rng, 3);
  cplx s(0.7, -0.2);
  RatFun lin = apply_adjoint(m, traces(a + s * b)) - apply_adjoint(m, traces(a)) - s * apply_adjoint(m, traces(b));
  for (double x : {-1.0, 0.5, 2.0}) CHECK(std::abs(lin(x)) < 1e-12);
}

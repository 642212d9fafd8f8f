#include <random>

#include "doctest.h"
#include "friedlab/hardy.hpp"
#include "random_models.hpp"

using namespace friedlab;
using testing_support::random_ratfun;

TEST_CASE("riesz_split") {
  RatFun f = RatFun::pole_term(I);
  auto s = riesz_split(f);
  CHECK(s.plus.is_zero());
  CHECK(std::abs(s.minus(0.3) - f(0.3)) < 1e-15);

  RatFun g(Poly::constant(1.0), {{I, 1}, {-I, 1}});
  s = riesz_split(g);
  // partial-fraction oracle: 1/(x^2+1) = (1/2i)/(x-i) - (1/2i)/(x+i)
  for (double x : {-2.0, 0.1, 1.7}) {
    CHECK(std::abs(s.plus(x) - (-1.0 / (2.0 * I)) / (x + I)) < 1e-15);
    CHECK(std::abs(s.minus(x) - (1.0 / (2.0 * I)) / (x - I)) < 1e-15);
  }
  CHECK_THROWS_AS(riesz_split(RatFun::pole_term(1.0)), DomainError);

  std::mt19937_64 rng(2);
  for (int t = 0; t < 30; ++t) {
    RatFun h = random_ratfun(rng, 1 + t % 6);
    auto p = riesz_split(h);
    for (double x : {-1.3, 0.0, 2.2}) CHECK(std::abs(p.plus(x) + p.minus(x) - h(x)) < 1e-12);
    for (auto& q : p.plus.poles()) CHECK(q.cls == PoleClass::lower);
    for (auto& q : p.minus.poles()) CHECK(q.cls == PoleClass::upper);
    auto pp = riesz_split(p.plus);
    CHECK(pp.minus.is_zero());
    CHECK(std::abs(pp.plus(0.4) - p.plus(0.4)) < 1e-14);
    CHECK(riesz_split(p.minus).plus.is_zero());
  }
}

TEST_CASE("boundary values and the Plemelj jump") {
  RatFun f(Poly::constant(1.0), {{I, 1}, {-I, 1}});
  cplx up = boundary_value(f, 0.0, Side::plus), dn = boundary_value(f, 0.0, Side::minus);
  CHECK(std::abs(up - dn - 2.0 * pi * I) < 1e-14);
  // x/(x^2+1) vanishes at 0
  RatFun g(Poly({0.0, 1.0}), {{I, 1}, {-I, 1}});
  CHECK(std::abs(boundary_value(g, 0.0, Side::plus) - boundary_value(g, 0.0, Side::minus)) < 1e-14);

  // one-sided values are limits of the Cauchy transform
  CHECK(std::abs(up - cauchy_transform(f, cplx(0, 1e-9))) < 1e-7);
  CHECK(std::abs(dn - cauchy_transform(f, cplx(0, -1e-9))) < 1e-7);

  // indicator of [0,1] at k = 2: int_0^1 dt/(t-2) = -ln 2 (log antiderivative)
  auto chi = PiecewiseFun::indicator(0.0, 1.0);
  CHECK(std::abs(boundary_value(chi, 2.0, Side::plus) - (-std::log(2.0))) < 1e-14);
  CHECK_THROWS_AS(boundary_value(chi, 1.0, Side::plus), DomainError);

  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> ks(-3, 3);
  for (int t = 0; t < 200; ++t) {
    RatFun h = random_ratfun(rng, 1 + t % 6);
    double k = ks(rng);
    cplx jump = boundary_value(h, k, Side::plus) - boundary_value(h, k, Side::minus);
    CHECK(std::abs(jump - 2.0 * pi * I * h(k)) <= 1e-9 * (1 + std::abs(h(k))));
  }
}

TEST_CASE("piecewise boundary values by singularity subtraction") {
  RatFun r = RatFun::pole_term(cplx(0.5, 2.0), cplx(1, -1)) + RatFun::pole_term(cplx(-1, -1));
  auto pw = PiecewiseFun::restriction(r, -1.0, 2.0);
  for (double k : {-0.5, 0.3, 1.9}) {
    cplx up = boundary_value(pw, k, Side::plus), dn = boundary_value(pw, k, Side::minus);
    CHECK(std::abs(up - dn - 2.0 * pi * I * r(k)) < 1e-9);
    // oracle: close to the axis with the closed-form log correction
    cplx near = cauchy_transform_num(pw, cplx(k, 1e-8));
    CHECK(std::abs(up - near) < 1e-6);
  }
  // indicator vs the generic quadrature path
  auto ind = PiecewiseFun::indicator(0.0, 1.0, cplx(0.3, 0.2));
  auto gen = PiecewiseFun::restriction(RatFun(cplx(0.3, 0.2)), 0.0, 1.0);
  for (double k : {0.25, 0.9, 1.5, -2.0})
    CHECK(std::abs(boundary_value(ind, k, Side::minus) - boundary_value(gen, k, Side::minus)) < 1e-9);
}

TEST_CASE("cauchy_transform_num") {
  auto chi = PiecewiseFun::indicator(-0.5, 2.0);
  cplx lam(0.7, 0.4);
  CHECK(std::abs(cauchy_transform_num(chi, lam) - std::log((2.0 - lam) / (-0.5 - lam))) < 1e-14);
  CHECK(cauchy_transform_num(PiecewiseFun{}, lam) == cplx{});
  auto unit = PiecewiseFun::indicator(0.0, 1.0);
  cplx expect(std::log(std::sqrt(2.0)), pi / 4);
  CHECK(std::abs(cauchy_transform_num(unit, I) - expect) < 1e-14);
  auto gen = PiecewiseFun::restriction(RatFun(1.0), 0.0, 1.0);
  CHECK(std::abs(cauchy_transform_num(gen, I) - expect) < 1e-9);
  CHECK(std::abs(cauchy_transform_num(gen, cplx(0.5, 1e-5)) - cauchy_transform_num(unit, cplx(0.5, 1e-5))) < 1e-9);
}

TEST_CASE("blaschke_build") {
  auto b = blaschke_build(std::vector<cplx>{-2.0 * I});
  CHECK(std::abs(std::polar(1.0, b.phases[0]) - cplx(-1, 0)) < 1e-15);
  for (cplx z : {cplx(0.3, 0.2), cplx(-1, -4), cplx(2, 0)})
    CHECK(std::abs(b(z) - (-(z + 2.0 * I) / (z - 2.0 * I))) < 1e-14);

  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-2, 2), v(0.1, 3);
  for (int t = 0; t < 20; ++t) {
    std::vector<cplx> zs;
    for (int k = 0; k < 3; ++k) zs.emplace_back(u(rng), -v(rng));
    auto bb = blaschke_build(zs);
    for (std::size_t k = 0; k < zs.size(); ++k) {
      cplx w = std::polar(1.0, bb.phases[k]) * (I - zs[k]) / (I - std::conj(zs[k]));
      CHECK(std::abs(w.imag()) < 1e-12);
      CHECK(w.real() >= 0);
    }
    for (int j = 0; j < 20; ++j) CHECK(std::abs(std::abs(bb(u(rng) * 5)) - 1) < 1e-13);
    CHECK(std::abs(bb(cplx(u(rng), -v(rng)))) < 1);
    CHECK(std::abs(bb.as_ratfun()(0.7) - bb(0.7)) < 1e-13);
  }
  auto b2 = blaschke_build(std::vector<cplx>{cplx(-1, -1), cplx(1, -1)});
  CHECK(std::abs(b2(-3.0 * I)) < 1);
  CHECK_THROWS_AS(blaschke_build(std::vector<cplx>{-I}), DomainError);
  CHECK_THROWS_AS(blaschke_build(std::vector<cplx>{1.0}), DomainError);
}

TEST_CASE("factorize_rational") {
  RatFun f = RatFun::pole_term(2.0 * I, 1.0, 2);
  auto fa = factorize_rational(f);
  CHECK(fa.blaschke.count() == 0);
  CHECK(std::abs(fa.outer(0.3) - f(0.3)) < 1e-15);

  RatFun g(Poly({2.0 * I, 1.0}), {{3.0 * I, 1}});  // (z+2i)/(z-3i)
  fa = factorize_rational(g);
  REQUIRE(fa.blaschke.count() == 1);
  CHECK(std::abs(fa.blaschke.zeros[0].value + 2.0 * I) < 1e-12);
  CHECK(lower_winding(fa.outer) == 0);
  CHECK(lower_winding(g) == 1);
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-3, 3), v(0.05, 3);
  for (int k = 0; k < 20; ++k) {
    cplx z(u(rng), -v(rng));
    CHECK(std::abs(fa.blaschke(z) * fa.outer(z) - g(z)) <= 1e-8 * std::abs(g(z)));
  }

  cplx mu(0.2, 0.9);  // i + 1/mu lies in C-
  RatFun h = RatFun::pole_term(I) - RatFun(mu);
  fa = factorize_rational(h);
  REQUIRE(fa.blaschke.count() == 1);
  CHECK(std::abs(fa.blaschke.zeros[0].value - (I + 1.0 / mu)) < 1e-12);
  CHECK_THROWS_AS(factorize_rational(RatFun::pole_term(-I)), DomainError);

  RatFun bz(Poly({-1.0, 1.0}), {{I, 2}});  // zero on R
  fa = factorize_rational(bz);
  CHECK(fa.degenerate);
  CHECK(fa.boundary_zeros.size() == 1);
}

TEST_CASE("uniqueness from zero jumps and zero transforms") {
  // A rational G (x^-1 decay) passing both tests must vanish.
  auto passes = [](const RatFun& G) {
    for (int j = 0; j < 50; ++j) {
      double k = -5 + 0.2 * j + 0.01;
      if (std::abs(boundary_value(G, k, Side::plus) - boundary_value(G, k, Side::minus)) > 1e-12) return false;
    }
    for (int j = 0; j < 20; ++j) {
      cplx l(-2 + 0.2 * j, (j % 2 ? 1.0 : -1.0) * (0.5 + 0.1 * j));
      if (std::abs(cauchy_transform(G, l)) > 1e-12) return false;
    }
    return true;
  };
  CHECK(passes(RatFun{}));
  CHECK_FALSE(passes(RatFun::pole_term(I)));
  CHECK_FALSE(passes(RatFun::pole_term(-I) - RatFun::pole_term(cplx(1, -1))));
  std::mt19937_64 rng(1);
  for (int t = 0; t < 20; ++t) {
    RatFun G = random_ratfun(rng, 1 + t % 4);
    CHECK_FALSE(passes(G));
  }
}

#include <random>

#include "doctest.h"
#include "friedlab/recon.hpp"
#include "random_models.hpp"

using namespace friedlab;
using testing_support::random_ratfun;

namespace {

FriedrichsModel generic_model(cplx B = cplx(0.3, -0.2)) {
  return {RatFun::pole_term(cplx(0.4, -1.0)) + RatFun::pole_term(cplx(-0.8, 0.7), cplx(0.5, 0.2)),
          RatFun::pole_term(cplx(1.1, 0.9), 0.8) + RatFun::pole_term(cplx(-0.2, -0.6), cplx(-0.3, 0.4)), B};
}

double rel(const RatFun& a, const RatFun& b) {
  double e = 0, s = 0;
  for (double x : {-2.3, -0.9, 0.1, 0.8, 1.7, 3.1}) {
    e = std::max(e, std::abs(a(x) - b(x)));
    s = std::max(s, std::abs(b(x)));
  }
  return e / s;
}

}  // namespace

TEST_CASE("recover_from_ranges round trip") {
  std::mt19937_64 rng(33);
  int done = 0;
  for (int t = 0; t < 20; ++t) {
    FriedrichsModel m(random_ratfun(rng, 2), random_ratfun(rng, 2), cplx(0.1 * t, 0.2));
    cplx l(0.3, 0.9), mu(-0.5, -0.7);
    RatFun u, v;
    cplx tau, tau_t;
    try {
      u = kernel_element(m, l);
      v = kernel_element(tilde_model(m), mu);
      tau = m.phibar_hat(l) / d_function(m, l);
      tau_t = tilde_model(m).phibar_hat(mu);
    } catch (const SpectralError&) {
      continue;
    }
    if (std::abs(tau) < 1e-10 || std::abs(tau_t) < 1e-10) {
      // a vanishing normalizer leaves 1/(x - l) alone in the range
      CHECK_THROWS_AS(recover_from_ranges(u, v, l, mu), InsufficientInformation);
      continue;
    }
    auto r = recover_from_ranges(2.0 * u, cplx(0, 3) * v, l, mu);
    CHECK(rel(r.psi, tau * m.psi()) < 1e-9);
    CHECK(rel(r.phi, (1.0 / std::conj(tau)) * m.phi()) < 1e-9);
    CHECK(r.consistency < 1e-9);
    // re-fed through the solution operators
    FriedrichsModel rec(r.phi, r.psi, m.B());
    CHECK(rel(kernel_element(rec, l), u) < 1e-8);
    CHECK(rel(kernel_element(tilde_model(rec), mu), v) < 1e-8);
    ++done;
  }
  CHECK(done > 8);

  // H2+ data: u = M/(x - l)
  FriedrichsModel h(RatFun::pole_term(-I), RatFun::pole_term(-2.0 * I), 0.0);
  cplx l(0.3, 0.9);
  CHECK_THROWS_AS(recover_from_ranges(kernel_element(h, l), kernel_element(tilde_model(h), cplx(0.2, -0.5)), l,
                                      cplx(0.2, -0.5)),
                  InsufficientInformation);
}

TEST_CASE("restricted resolvent reconstruction") {
  auto m = generic_model();
  auto oracle = ResolventOracle::from_model(m);
  RecoverySettings s;
  for (int j = 0; j < 20; ++j) s.lambda_grid.emplace_back(-2 + 0.21 * j, j % 2 ? 0.6 + 0.05 * j : -0.5 - 0.07 * j);
  auto r = recover_from_restricted_resolvent(oracle, s);
  CHECK_FALSE(r.trivial);
  CHECK(gauge_quotient_error(m.psi(), r.psi) < 1e-3);
  CHECK(std::abs(r.B - m.B()) < 1e-3);
  for (std::size_t j = 0; j < r.lambda.size(); ++j) {
    cplx want = m_function(m, r.lambda[j]).M;
    CHECK(std::abs(r.M[j] - want) < 1e-3 * (1 + std::abs(want)));
  }
  CHECK(r.psi_error < 1e-8);
  CHECK(!oracle.transcript().empty());

  // stage-2 convergence order in 1/Im mu
  auto& b = r.B_ladder;
  double e1 = std::abs(b[0] - m.B()), e2 = std::abs(b[1] - m.B()), e3 = std::abs(b[2] - m.B());
  CHECK(e2 < e1);
  CHECK(e3 < e2);
  CHECK(std::log10(e1 / e2) > 0.9);
}

TEST_CASE("reconstruction trivial and pathological branches") {
  FriedrichsModel zero(RatFun::pole_term(cplx(0.2, -1)), RatFun{}, cplx(0.7, 0.1));
  RecoverySettings s;
  s.lambda_grid = {cplx(0.1, 0.8), cplx(-0.4, -1.2)};
  auto r = recover_from_restricted_resolvent(ResolventOracle::from_model(zero), s);
  CHECK(r.trivial);
  CHECK(std::abs(r.B - zero.B()) < 1e-6);
  for (std::size_t j = 0; j < r.lambda.size(); ++j)
    CHECK(std::abs(r.M[j] - m_function(zero, r.lambda[j]).M) < 1e-6);

  // H2+ data with B = i pi: every point of C+ is an eigenvalue
  FriedrichsModel path(RatFun::pole_term(-I), RatFun::pole_term(-2.0 * I), pi * I);
  CHECK_THROWS_AS(recover_from_restricted_resolvent(ResolventOracle::from_model(path), s), PathologicalModel);
}

TEST_CASE("M from two resolvents") {
  auto m = generic_model(0.0);
  RatFun g = RatFun::pole_term(cplx(0.5, -1.3)), f = RatFun::pole_term(cplx(-0.2, 0.8), cplx(1, 0.5));
  for (cplx l : {cplx(0.4, 0.9), cplx(-0.7, -1.1), cplx(1.5, 0.3)}) {
    auto d = two_resolvent_data(m, 1.0, l, g, f);
    auto r = m_from_two_resolvents(d);
    CHECK(std::abs(r.M - m_function(m, l).M) < 1e-9);
    CHECK_FALSE(r.degenerate);
    // roles swapped give M_C
    auto dc = two_resolvent_data(m.with_B(1.0), 0.0, l, g, f);
    CHECK(std::abs(m_from_two_resolvents(dc).M - m_function(m.with_B(1.0), l).M) < 1e-9);
    // a gauge-equivalent presentation has the same resolvents, hence the same M
    cplx tau(0.6, -1.1);
    FriedrichsModel eq((1.0 / std::conj(tau)) * m.phi(), tau * m.psi(), 0.0);
    CHECK(std::abs(m_from_two_resolvents(two_resolvent_data(eq, 1.0, l, g, f)).M - r.M) < 1e-9);
  }
  TwoResolventData d{0.0, 1.0, 0.0, 0.5, 0.3};
  auto r = m_from_two_resolvents(d);
  CHECK(r.degenerate);
  CHECK(std::abs(r.M - 1.0 / (d.C - d.B)) < 1e-15);
  d.C = d.B;
  CHECK_THROWS_AS(m_from_two_resolvents(d), DomainError);
}

TEST_CASE("M from one bordered resolvent") {
  PiecewiseModel m(PiecewiseFun::indicator(0, 1), PiecewiseFun::reciprocal_cauchy_of(-2, -1, 0, 1), 0.3);
  PiecewiseResolvent oracle = [&](cplx l, const PiecewiseFun& v) { return apply_resolvent(m, l, MixedFun(v)); };
  auto v = PiecewiseFun::indicator(-4, -3);
  std::vector<cplx> ls{{0.5, 0.7}, {-1.5, -0.3}, {-3.5, 0.2}, {2, -2}, {0, 1e3}};
  auto r = m_from_one_bordered(oracle, v, v, ls);
  for (std::size_t j = 0; j < ls.size(); ++j) {
    REQUIRE_FALSE(r.skipped[j]);
    cplx want = m_function(m, ls[j]).M;
    CHECK(std::abs(r.M[j] - want) < 1e-6 * (1 + std::abs(want)));
  }
  // large lambda: M ~ (pi i - B)^-1
  CHECK(std::abs(r.M.back() - 1.0 / (pi * I - m.B())) < 1e-3);
  // denominators are logarithms: <v/(x-l),1> = log((-3-l)/(-4-l))
  cplx l = ls[0];
  CHECK(std::abs(cauchy_transform_num(v, l) - std::log((-3.0 - l) / (-4.0 - l))) < 1e-14);
}

TEST_CASE("bordered resolvent from M") {
  std::mt19937_64 rng(8);
  int done = 0;
  for (int t = 0; t < 50; ++t) {
    FriedrichsModel m(random_ratfun(rng, 2), random_ratfun(rng, 2), cplx(0.2, -0.1));
    cplx l = testing_support::random_offaxis(rng, 0.3), mu = testing_support::random_offaxis(rng, 0.3),
         mt = testing_support::random_offaxis(rng, 0.3);
    cplx f(0.7, -0.4), w(-1.1, 0.3);
    try {
      auto F = solution_operator(m, mu, f);
      auto v = solution_operator(tilde_model(m), mt, w);
      cplx direct = inner_product(apply_resolvent(m, l, F.f).f, v.f);
      cplx M = m_function(m, l).M;
      cplx Fv = inner_product(F.f, v.f);
      cplx p = bordered_from_m(M, mu, mt, f, w, l, Fv, v.gamma2);
      CHECK(std::abs(p - direct) < 1e-9 * (1 + std::abs(direct)));
      CHECK(std::abs(m_from_bordered(p, mu, mt, f, w, l, Fv, v.gamma2) - M) < 1e-9 * (1 + std::abs(M)));
      ++done;
    } catch (const SpectralError&) {
    }
  }
  CHECK(done > 40);
  CHECK(bordered_from_m(1.0, cplx(0, 1), cplx(0, 1), 0.0, 1.0, cplx(1, 1), 0.0, 0.0) == cplx{});
  CHECK_THROWS_AS(bordered_from_m(1.0, cplx(0, 1), cplx(0, 1), 1.0, 1.0, cplx(0, 1), 0.0, 0.0), DomainError);
}

TEST_CASE("continuation across R shows the pole factors") {
  // phi in H2-, psi in H2+: the pairing times (l - mu)(l - conj mu~) is regular at mu
  FriedrichsModel m(RatFun::pole_term(cplx(0.3, 1.0)), RatFun::pole_term(cplx(-0.5, -0.8)), 0.4);
  cplx mu(0.2, -0.6), mt(-0.1, 0.9);
  RatFun F = RatFun::pole_term(mu), v = RatFun::pole_term(mt);
  cplx l(0.5, 0.7);
  cplx direct = inner_product(apply_resolvent(m, l, F).f, v);
  cplx M = m_function(m, l).M;
  cplx cont = -(pi * I + m.B()) * (M * (pi * I + m.B()) + 1.0) / ((l - mu) * (l - std::conj(mt)));
  CHECK(std::abs(direct - cont) < 1e-9);
}

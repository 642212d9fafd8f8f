#include "friedlab/identities.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace friedlab {

namespace {

constexpr std::array<double, 7> sample_x = {-3.1, -1.2, -0.4, 0.3, 0.9, 2.5, 4.7};

IdentityReport scalar_report(IdentityKind k, cplx lhs, cplx rhs) {
  IdentityReport r{k};
  r.residual = std::abs(lhs - rhs);
  r.scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
  return r;
}

// pointwise comparison of two rational functions plus their traces
IdentityReport function_report(IdentityKind k, const RatFun& lhs, const RatFun& rhs) {
  IdentityReport r{k};
  r.residual = 0;
  r.scale = 1;
  for (double x : sample_x) {
    cplx a = lhs(x), b = rhs(x);
    r.residual = std::max(r.residual, std::abs(a - b));
    r.scale = std::max({r.scale, std::abs(a), std::abs(b)});
  }
  return r;
}

}  // namespace

std::string to_string(IdentityKind k) {
  switch (k) {
    case IdentityKind::green: return "green";
    case IdentityKind::krein: return "krein";
    case IdentityKind::aronszajn: return "aronszajn";
    case IdentityKind::fund: return "fund";
    case IdentityKind::sdiff: return "sdiff";
    case IdentityKind::continuation: return "continuation";
    case IdentityKind::resolvent: return "resolvent";
  }
  return "?";
}

std::optional<IdentityKind> parse_identity_kind(const std::string& s) {
  for (auto k : {IdentityKind::green, IdentityKind::krein, IdentityKind::aronszajn, IdentityKind::fund,
                 IdentityKind::sdiff, IdentityKind::continuation, IdentityKind::resolvent})
    if (to_string(k) == s) return k;
  return std::nullopt;
}

cplx continuation_formula(const FriedrichsModel& m, cplx lambda, cplx mu, cplx mu_tilde) {
  const cplx B = m.B();
  const cplx psi_l = m.psi()(lambda), phibar_l = m.phibar()(lambda);
  cplx bracket = (pi * I - B) / (pi * I + B) - 2.0 * pi * I * psi_l * phibar_l;
  return -2.0 * pi * I / bracket / ((lambda - mu) * (lambda - std::conj(mu_tilde)));
}

IdentityReport verify_identity(IdentityKind kind, const FriedrichsModel& m, const IdentityInputs& in) {
  switch (kind) {
    case IdentityKind::green: {
      // <A* u, v> - <u, tilde A* v> = G1u conj(G2v) - G2u conj(G1v)
      auto u = traces(in.u), v = traces(in.v);
      cplx lhs = inner_product(apply_adjoint(m, u, Adjoint::star), in.v) -
                 inner_product(in.u, apply_adjoint(m, v, Adjoint::tilde_star));
      cplx rhs = u.gamma1 * std::conj(v.gamma2) - u.gamma2 * std::conj(v.gamma1);
      return scalar_report(kind, lhs, rhs);
    }
    case IdentityKind::krein: {
      auto mc = m.with_B(in.C);
      auto fb = apply_resolvent(m, in.lambda, in.g);
      auto fc = apply_resolvent(mc, in.lambda, in.g);
      cplx MB = m_function(m, in.lambda).M;
      cplx d = m.B() - in.C;
      cplx coef = (1.0 + d * MB) * (-d) * fc.gamma2;
      if (in.corrupt_krein) coef = -coef;
      RatFun rhs = solution_operator(mc, in.lambda, coef).f;
      return function_report(kind, fc.f - fb.f, rhs);
    }
    case IdentityKind::aronszajn: {
      cplx MB = m_function(m, in.lambda).M;
      cplx MC = m_function(m.with_B(in.C), in.lambda).M;
      return scalar_report(kind, MB, (1.0 + MB * (m.B() - in.C)) * MC);
    }
    case IdentityKind::fund: {
      auto F = solution_operator(m, in.mu, in.f);
      auto v = solution_operator(tilde_model(m), in.mu_tilde, in.w);
      cplx lhs = inner_product(apply_resolvent(m, in.lambda, F.f).f, v.f);
      cplx M = m_function(m, in.lambda).M;
      cplx mt = std::conj(in.mu_tilde);
      cplx rhs = ((mt - in.lambda) * inner_product(F.f, v.f) - M * in.f * std::conj(in.w) +
                  in.f * std::conj(v.gamma2)) /
                 ((in.mu - in.lambda) * (mt - in.lambda));
      return scalar_report(kind, lhs, rhs);
    }
    case IdentityKind::sdiff: {
      auto s = solution_operator(m, in.lambda, in.f);
      auto s0 = solution_operator(m, in.lambda0, in.f);
      RatFun rhs = s0.f + (in.lambda - in.lambda0) * apply_resolvent(m, in.lambda, s0.f).f;
      return function_report(kind, s.f, rhs);
    }
    case IdentityKind::continuation: {
      RatFun F = RatFun::pole_term(in.mu), v = RatFun::pole_term(in.mu_tilde);
      cplx lhs = inner_product(apply_resolvent(m, in.lambda, F).f, v);
      return scalar_report(kind, lhs, continuation_formula(m, in.lambda, in.mu, in.mu_tilde));
    }
    case IdentityKind::resolvent: {
      auto f = apply_resolvent(m, in.lambda, in.g);
      RatFun res = apply_adjoint(m, f) - in.lambda * f.f;
      auto r = function_report(kind, res, in.g);
      r.residual = std::max(r.residual, std::abs(f.gamma1 - m.B() * f.gamma2));
      return r;
    }
  }
  throw DomainError("verify_identity: unknown kind");
}

}  // namespace friedlab

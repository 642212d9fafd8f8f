#pragma once

#include <optional>
#include <string>

#include "friedlab/model.hpp"

namespace friedlab {

enum class IdentityKind { green, krein, aronszajn, fund, sdiff, continuation, resolvent };

std::string to_string(IdentityKind k);
std::optional<IdentityKind> parse_identity_kind(const std::string& s);

// Each kind reads only the fields it needs.
//   green        u, v
//   krein        g, lambda, C
//   aronszajn    lambda, C
//   fund         lambda, mu, mu_tilde, f, w
//   sdiff        lambda, lambda0, f
//   continuation lambda (C+), mu (C-), mu_tilde (C+); phi in H2-, psi in H2+
//   resolvent    g, lambda
struct IdentityInputs {
  RatFun u, v, g;
  cplx lambda{0, 1}, lambda0{0, 2}, mu{0, -1}, mu_tilde{0, 1};
  cplx C = 1.0;
  cplx f = 1.0, w = 1.0;
  // flips the sign of the Krein correction term; mutation testing only
  bool corrupt_krein = false;
};

struct IdentityReport {
  IdentityKind kind;
  double residual = 0;  // |LHS - RHS| (max over sample points for function identities)
  double scale = 1;     // max(1, |LHS|, |RHS|)
  double relative() const { return residual / scale; }
};

IdentityReport verify_identity(IdentityKind kind, const FriedrichsModel& m, const IdentityInputs& in);

// <(A_B - l)^-1 F, v> for F = 1/(x-mu), v = 1/(x-mu~) with phi in H2-, psi in H2+
cplx continuation_formula(const FriedrichsModel& m, cplx lambda, cplx mu, cplx mu_tilde);

}  // namespace friedlab

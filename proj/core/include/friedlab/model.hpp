#pragma once

#include <vector>

#include "friedlab/hardy.hpp"
#include "friedlab/ratfun.hpp"

namespace friedlab {

// A f = x f + <f, phi> psi with boundary condition (Gamma1 - B Gamma2) u = 0.
class FriedrichsModel {
 public:
  FriedrichsModel() : FriedrichsModel(RatFun{}, RatFun{}, 0.0) {}
  FriedrichsModel(RatFun phi, RatFun psi, cplx B);

  const RatFun& phi() const { return phi_; }
  const RatFun& psi() const { return psi_; }
  cplx B() const { return B_; }
  FriedrichsModel with_B(cplx B) const { return {phi_, psi_, B}; }
  FriedrichsModel with_psi_scaled(cplx alpha) const { return {phi_, alpha * psi_, B_}; }

  const RatFun& phibar() const { return phibar_; }

  // Cauchy transforms from the Riesz parts: for Im l > 0, h^(l) = 2 pi i h_+(l)
  cplx psi_hat(cplx lambda) const;
  cplx phibar_hat(cplx lambda) const;
  cplx product_hat(cplx lambda) const;  // (psi phibar)^

  // zeros of D, located once per half-plane
  const std::vector<cplx>& d_zeros() const { return d_zeros_; }

 private:
  struct Halves {
    RatFun plus, minus;
    cplx hat(cplx lambda) const;
  };
  RatFun phi_, psi_, phibar_;
  cplx B_;
  Halves psi_h_, phibar_h_, prod_h_;
  std::vector<cplx> d_zeros_;
};

struct DomainElement {
  RatFun f;
  cplx c_f = 0;
  cplx gamma1 = 0;
  cplx gamma2 = 0;
};

struct MValue {
  cplx lambda;
  cplx D;
  cplx psi_hat;
  cplx phibar_hat;
  cplx bracket;  // sign(Im l) pi i - psi_hat phibar_hat / D - B
  cplx M;
  bool infinite = false;
};

DomainElement traces(const RatFun& f);

cplx d_function(const FriedrichsModel& m, cplx lambda);
MValue m_function(const FriedrichsModel& m, cplx lambda);

// u in ker(tilde A* - lambda) with (Gamma1 - B Gamma2) u = f
DomainElement solution_operator(const FriedrichsModel& m, cplx lambda, cplx f);
// 1/(x-l) - (phibar^(l)/D(l)) psi/(x-l), the kernel element with Gamma2 = 1
RatFun kernel_element(const FriedrichsModel& m, cplx lambda);

DomainElement apply_resolvent(const FriedrichsModel& m, cplx lambda, const RatFun& g);

enum class Adjoint { tilde_star, star };
// tilde_star: x f - c_f + <f,phi> psi ; star: x f - c_f + <f,psi> phi
RatFun apply_adjoint(const FriedrichsModel& m, const DomainElement& f,
                     Adjoint which = Adjoint::tilde_star);

FriedrichsModel tilde_model(const FriedrichsModel& m);

}  // namespace friedlab

#pragma once

#include <vector>

#include "friedlab/hardy.hpp"
#include "friedlab/model.hpp"
#include "friedlab/piecewise.hpp"

namespace friedlab {

// Sum of terms r(x) h(x) with r rational and h either 1 or a compactly
// supported piecewise function. Resolvent outputs and kernel elements of a
// piecewise model live in this class.
class MixedFun {
 public:
  struct Term {
    RatFun r;
    int tag = 0;  // 0: h = 1; terms with equal positive tags share h
    PiecewiseFun h;
  };

  MixedFun() = default;
  explicit MixedFun(const RatFun& r) { add(r); }
  explicit MixedFun(const PiecewiseFun& h, int tag = -1) { add(RatFun(1.0), h, tag); }

  void add(const RatFun& r);
  void add(const RatFun& r, const PiecewiseFun& h, int tag = -1);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  cplx operator()(double x) const;

  MixedFun scaled(cplx s) const;
  MixedFun over_linear(cplx z) const;
  friend MixedFun operator+(const MixedFun& a, const MixedFun& b);

 private:
  std::vector<Term> terms_;
};

// int F conj(G) dx
cplx pairing(const MixedFun& F, const MixedFun& G);
// int F(t) w(t) / (t - lambda) dt, w = 1 when omitted
cplx cauchy(const MixedFun& F, cplx lambda);
cplx cauchy(const MixedFun& F, cplx lambda, const PiecewiseFun& w);
double l2_norm(const MixedFun& F);

// Friedrichs model with compactly supported piecewise phi, psi
class PiecewiseModel {
 public:
  static constexpr int phi_tag = 1, psi_tag = 2;

  PiecewiseModel(PiecewiseFun phi, PiecewiseFun psi, cplx B);

  const PiecewiseFun& phi() const { return phi_; }
  const PiecewiseFun& psi() const { return psi_; }
  const PiecewiseFun& phibar() const { return phibar_; }
  cplx B() const { return B_; }
  PiecewiseModel with_B(cplx B) const { return {phi_, psi_, B}; }
  PiecewiseModel with_psi_scaled(cplx a) const { return {phi_, psi_.scaled(a), B_}; }

  cplx psi_hat(cplx lambda) const { return cauchy_transform_num(psi_, lambda); }
  cplx phibar_hat(cplx lambda) const { return cauchy_transform_num(phibar_, lambda); }
  cplx product_hat(cplx lambda) const { return cauchy_transform_num(prod_, lambda); }
  cplx psi_bv(double k, Side s) const { return boundary_value(psi_, k, s); }
  cplx phibar_bv(double k, Side s) const { return boundary_value(phibar_, k, s); }
  cplx product_bv(double k, Side s) const { return boundary_value(prod_, k, s); }

 private:
  PiecewiseFun phi_, psi_, phibar_, prod_;
  cplx B_;
};

PiecewiseModel tilde_model(const PiecewiseModel& m);

MValue m_function(const PiecewiseModel& m, cplx lambda);
// M^-1(k +- i0) from one-sided boundary values
cplx minv_boundary(const PiecewiseModel& m, double k, Side side);

// (1 - sigma psi)/(x - l), sigma = phibar^(l)/D(l)
MixedFun kernel_element(const PiecewiseModel& m, cplx lambda);
MixedFun solution_operator(const PiecewiseModel& m, cplx lambda, cplx f);
MixedFun apply_resolvent(const PiecewiseModel& m, cplx lambda, const MixedFun& g);

}  // namespace friedlab

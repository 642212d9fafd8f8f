#include "friedlab/model.hpp"

#include <cmath>

namespace friedlab {

cplx FriedrichsModel::Halves::hat(cplx lambda) const {
  return spectral_sign(lambda) > 0 ? 2.0 * pi * I * plus(lambda) : -2.0 * pi * I * minus(lambda);
}

FriedrichsModel::FriedrichsModel(RatFun phi, RatFun psi, cplx B)
    : phi_(std::move(phi)), psi_(std::move(psi)), B_(B) {
  if (!phi_.is_L2()) throw DomainError("model: phi not in L2");
  if (!psi_.is_L2()) throw DomainError("model: psi not in L2");
  if (!std::isfinite(B_.real()) || !std::isfinite(B_.imag())) throw DomainError("model: B not finite");
  phibar_ = phi_.conj_reflect();
  auto split = [](const RatFun& f) {
    auto r = riesz_split(f);
    return Halves{r.plus, r.minus};
  };
  psi_h_ = split(psi_);
  phibar_h_ = split(phibar_);
  prod_h_ = split(psi_ * phibar_);

  // D = 1 + 2 pi i (psi phibar)_+ on C+, 1 - 2 pi i (psi phibar)_- on C-
  auto collect = [&](const RatFun& part, cplx s, int want) {
    RatFun d = RatFun(1.0) + s * part;
    if (d.num_degree() < 1) return;
    for (auto& r : poly_roots(d.num()))
      if (half_plane_sign(r.value) == want) d_zeros_.push_back(r.value);
  };
  collect(prod_h_.plus, 2.0 * pi * I, 1);
  collect(prod_h_.minus, -2.0 * pi * I, -1);
}

cplx FriedrichsModel::psi_hat(cplx lambda) const { return psi_h_.hat(lambda); }
cplx FriedrichsModel::phibar_hat(cplx lambda) const { return phibar_h_.hat(lambda); }
cplx FriedrichsModel::product_hat(cplx lambda) const { return prod_h_.hat(lambda); }

DomainElement traces(const RatFun& f) {
  if (f.has_real_pole()) throw DomainError("not in D(tilde A*): real pole");
  if (!f.is_zero() && f.den_degree() < f.num_degree() + 1)
    throw DomainError("not in D(tilde A*): no decay");
  DomainElement e;
  e.f = f;
  e.c_f = f.c_infinity();
  e.gamma1 = pv_integral(f);
  e.gamma2 = e.c_f;
  return e;
}

cplx d_function(const FriedrichsModel& m, cplx lambda) {
  spectral_sign(lambda);
  for (auto z : m.d_zeros())
    if (same_point(z, lambda)) throw SpectralError(SpectralError::Kind::d_zero, "D-zero");
  cplx d = 1.0 + m.product_hat(lambda);
  if (std::abs(d) < tol::d_zero) throw SpectralError(SpectralError::Kind::d_zero, "D-zero");
  return d;
}

MValue m_function(const FriedrichsModel& m, cplx lambda) {
  MValue v;
  v.lambda = lambda;
  const int s = spectral_sign(lambda);
  v.D = d_function(m, lambda);
  v.psi_hat = m.psi_hat(lambda);
  v.phibar_hat = m.phibar_hat(lambda);
  v.bracket = static_cast<double>(s) * pi * I - v.psi_hat * v.phibar_hat / v.D - m.B();
  if (std::abs(v.bracket) <= tol::m_finite * (1 + std::abs(m.B()))) {
    v.infinite = true;
    v.M = cplx(INFINITY, 0);
  } else {
    v.M = 1.0 / v.bracket;
  }
  return v;
}

RatFun kernel_element(const FriedrichsModel& m, cplx lambda) {
  cplx sigma = m.phibar_hat(lambda) / d_function(m, lambda);
  RatFun top = RatFun(1.0) - sigma * m.psi();
  return top.over_linear(lambda);
}

DomainElement solution_operator(const FriedrichsModel& m, cplx lambda, cplx f) {
  MValue mv = m_function(m, lambda);
  if (mv.infinite) throw SpectralError(SpectralError::Kind::eigenvalue, "lambda is an eigenvalue of A_B");
  if (f == cplx{}) return traces(RatFun{});
  return traces((mv.M * f) * kernel_element(m, lambda));
}

DomainElement apply_resolvent(const FriedrichsModel& m, cplx lambda, const RatFun& g) {
  MValue mv = m_function(m, lambda);
  if (mv.infinite) throw SpectralError(SpectralError::Kind::eigenvalue, "lambda is an eigenvalue of A_B");
  if (g.is_zero()) return traces(RatFun{});
  if (!g.is_L2()) throw DomainError("apply_resolvent: g not in L2");
  for (auto& p : g.poles())
    if (same_point(p.loc, lambda)) throw DomainError("apply_resolvent: lambda is a pole of g");

  // K = <g/(t-l), phi>, ghat = <1/(t-l), conj g>
  const cplx K = cauchy_transform(g * m.phibar(), lambda);
  const cplx ghat = cauchy_transform(g, lambda);
  const cplx sigma = mv.phibar_hat / mv.D;
  const cplx c = mv.M * (-ghat + K * mv.psi_hat / mv.D);
  RatFun top = g + RatFun(c) - (K / mv.D + c * sigma) * m.psi();
  return traces(top.over_linear(lambda));
}

RatFun apply_adjoint(const FriedrichsModel& m, const DomainElement& f, Adjoint which) {
  if (f.f.is_zero()) return {};
  // x f - c_f is the proper part of x f, the polynomial part being c_f
  RatFun xf = f.f.times_x().proper_part();
  if (which == Adjoint::tilde_star) return xf + inner_product(f.f, m.phi()) * m.psi();
  return xf + inner_product(f.f, m.psi()) * m.phi();
}

FriedrichsModel tilde_model(const FriedrichsModel& m) {
  return {m.psi(), m.phi(), std::conj(m.B())};
}

}  // namespace friedlab

#include "friedlab/pwmodel.hpp"

#include <cmath>

namespace friedlab {

void MixedFun::add(const RatFun& r) { add(r, PiecewiseFun{}, 0); }

void MixedFun::add(const RatFun& r, const PiecewiseFun& h, int tag) {
  if (r.is_zero()) return;
  if (tag != 0 && h.is_zero()) return;
  if (tag >= 0)
    for (auto& t : terms_)
      if (t.tag == tag) {
        t.r = t.r + r;
        return;
      }
  terms_.push_back({r, tag, tag == 0 ? PiecewiseFun{} : h});
}

cplx MixedFun::operator()(double x) const {
  cplx v{};
  for (auto& t : terms_) v += t.r(x) * (t.tag == 0 ? cplx(1.0) : t.h(x));
  return v;
}

MixedFun MixedFun::scaled(cplx s) const {
  MixedFun out;
  if (s == cplx{}) return out;
  out.terms_ = terms_;
  for (auto& t : out.terms_) t.r = s * t.r;
  return out;
}

MixedFun MixedFun::over_linear(cplx z) const {
  MixedFun out;
  out.terms_ = terms_;
  for (auto& t : out.terms_) t.r = t.r.over_linear(z);
  return out;
}

MixedFun operator+(const MixedFun& a, const MixedFun& b) {
  MixedFun out = a;
  for (auto& t : b.terms_) out.add(t.r, t.h, t.tag);
  return out;
}

cplx pairing(const MixedFun& F, const MixedFun& G) {
  cplx v{};
  for (auto& a : F.terms())
    for (auto& b : G.terms()) {
      bool ua = a.tag == 0, ub = b.tag == 0;
      if (ua && ub) {
        v += inner_product(a.r, b.r);
        continue;
      }
      RatFun q = a.r * b.r.conj_reflect();
      if (ua)
        v += integrate_rational_times(q, b.h.conj());
      else if (ub)
        v += integrate_rational_times(q, a.h);
      else
        v += integrate_rational_times(q, product(a.h, b.h.conj()));
    }
  return v;
}

cplx cauchy(const MixedFun& F, cplx lambda) {
  cplx v{};
  for (auto& t : F.terms())
    v += t.tag == 0 ? cauchy_transform(t.r, lambda) : integrate_rational_times(t.r.over_linear(lambda), t.h);
  return v;
}

cplx cauchy(const MixedFun& F, cplx lambda, const PiecewiseFun& w) {
  cplx v{};
  for (auto& t : F.terms()) {
    RatFun q = t.r.over_linear(lambda);
    v += integrate_rational_times(q, t.tag == 0 ? w : product(t.h, w));
  }
  return v;
}

double l2_norm(const MixedFun& F) { return std::sqrt(std::max(0.0, pairing(F, F).real())); }

PiecewiseModel::PiecewiseModel(PiecewiseFun phi, PiecewiseFun psi, cplx B)
    : phi_(std::move(phi)), psi_(std::move(psi)), B_(B) {
  phibar_ = phi_.conj();
  prod_ = product(psi_, phibar_);
}

PiecewiseModel tilde_model(const PiecewiseModel& m) { return {m.psi(), m.phi(), std::conj(m.B())}; }

MValue m_function(const PiecewiseModel& m, cplx lambda) {
  MValue v;
  v.lambda = lambda;
  const int s = spectral_sign(lambda);
  v.D = 1.0 + m.product_hat(lambda);
  if (std::abs(v.D) < tol::d_zero) throw SpectralError(SpectralError::Kind::d_zero, "D-zero");
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

cplx minv_boundary(const PiecewiseModel& m, double k, Side side) {
  const double s = side == Side::plus ? 1.0 : -1.0;
  cplx D = 1.0 + m.product_bv(k, side);
  if (std::abs(D) < tol::d_zero) throw SpectralError(SpectralError::Kind::d_zero, "D-zero on the boundary");
  return s * pi * I - m.psi_bv(k, side) * m.phibar_bv(k, side) / D - m.B();
}

MixedFun kernel_element(const PiecewiseModel& m, cplx lambda) {
  auto mv = m_function(m, lambda);
  MixedFun u(RatFun::pole_term(lambda));
  u.add(RatFun::pole_term(lambda, -mv.phibar_hat / mv.D), m.psi(), PiecewiseModel::psi_tag);
  return u;
}

MixedFun solution_operator(const PiecewiseModel& m, cplx lambda, cplx f) {
  auto mv = m_function(m, lambda);
  if (mv.infinite) throw SpectralError(SpectralError::Kind::eigenvalue, "lambda is an eigenvalue of A_B");
  return kernel_element(m, lambda).scaled(mv.M * f);
}

MixedFun apply_resolvent(const PiecewiseModel& m, cplx lambda, const MixedFun& g) {
  auto mv = m_function(m, lambda);
  if (mv.infinite) throw SpectralError(SpectralError::Kind::eigenvalue, "lambda is an eigenvalue of A_B");
  if (g.is_zero()) return {};
  const cplx K = cauchy(g, lambda, m.phibar());
  const cplx ghat = cauchy(g, lambda);
  const cplx sigma = mv.phibar_hat / mv.D;
  const cplx c = mv.M * (-ghat + K * mv.psi_hat / mv.D);
  MixedFun f = g.over_linear(lambda);
  f.add(RatFun::pole_term(lambda, c));
  f.add(RatFun::pole_term(lambda, -(K / mv.D + c * sigma)), m.psi(), PiecewiseModel::psi_tag);
  return f;
}

}  // namespace friedlab

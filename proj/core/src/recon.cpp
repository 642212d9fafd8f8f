#include "friedlab/recon.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

namespace friedlab {

namespace {

// (x - l) f, cancelling a pole at l when present
RatFun times_linear(const RatFun& f, cplx l) {
  if (f.is_zero()) return f;
  auto poles = f.poles();
  for (auto& p : poles)
    if (same_point(p.loc, l)) {
      --p.order;
      std::erase_if(poles, [](const Pole& q) { return q.order <= 0; });
      return RatFun(f.num(), poles);
    }
  return RatFun(f.num() * Poly({-l, 1.0}), poles);
}

bool negligible(const RatFun& f, double scale) {
  return f.is_zero() || l2_norm(f) <= 1e-9 * std::max(scale, 1e-300);
}

// quadratic extrapolation to h = 0 through three points; spread against the
// linear extrapolation from the two smallest h
std::pair<cplx, double> extrapolate(const std::vector<double>& h, const std::vector<cplx>& y) {
  const double h0 = h[0], h1 = h[1], h2 = h[2];
  cplx quad = y[0] * (h1 * h2) / ((h0 - h1) * (h0 - h2)) + y[1] * (h0 * h2) / ((h1 - h0) * (h1 - h2)) +
              y[2] * (h0 * h1) / ((h2 - h0) * (h2 - h1));
  cplx lin = (y[1] * h2 - y[2] * h1) / (h2 - h1);
  return {quad, std::abs(quad - lin)};
}

std::uint64_t fnv1a(const void* data, std::size_t n, std::uint64_t h = 14695981039346656037ull) {
  auto p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

RangeRecovery recover_from_ranges(const RatFun& u, const RatFun& v, cplx lambda, cplx mu) {
  const cplx cu = traces(u).c_f, cv = traces(v).c_f;
  if (cu == cplx{} || cv == cplx{}) throw DomainError("recover_from_ranges: range element with c = 0");
  const RatFun u1 = (1.0 / cu) * u, v1 = (1.0 / cv) * v;

  // 1 - (x - l) u = sigma psi
  RatFun psi = -times_linear(u1, lambda).proper_part();
  RatFun rho = -times_linear(v1, mu).proper_part();
  if (negligible(psi, l2_norm(u1)))
    throw InsufficientInformation("recover_from_ranges: Ran S_{lambda,B} is spanned by 1/(x-lambda)");
  if (negligible(rho, l2_norm(v1)))
    throw InsufficientInformation("recover_from_ranges: Ran tilde S_{mu,B*} is spanned by 1/(x-mu)");

  const cplx den = cauchy_transform(psi.conj_reflect(), mu);
  if (std::abs(den) < 1e-14) throw InsufficientInformation("recover_from_ranges: <(t-mu)^-1, psi> vanishes");
  const RatFun chi = (1.0 / den) * rho;

  // phi = beta chi; lambda normalization fixes conj(beta) = 1/(a - J)
  const cplx a = cauchy_transform(chi.conj_reflect(), lambda);
  const cplx J = cauchy_transform(psi * chi.conj_reflect(), lambda);
  if (std::abs(a - J) < 1e-14) throw InsufficientInformation("recover_from_ranges: normalization degenerate");
  const cplx beta = std::conj(1.0 / (a - J));
  // the mu side gives beta = 1/(1 - tilde J)
  const cplx Jt = cauchy_transform(chi * psi.conj_reflect(), mu);
  RangeRecovery r;
  r.psi = psi;
  r.phi = beta * chi;
  r.consistency = std::abs(beta * (1.0 - Jt) - 1.0);
  return r;
}

ResolventOracle::ResolventOracle(Range range, Apply apply, std::string access_model)
    : range_(std::move(range)), apply_(std::move(apply)), access_(std::move(access_model)) {}

ResolventOracle ResolventOracle::from_model(const FriedrichsModel& m) {
  return ResolventOracle([m](cplx mu) { return kernel_element(m, mu); },
                         [m](cplx l, cplx mu) { return apply_resolvent(m, l, kernel_element(m, mu)); },
                         "restricted resolvent on Ran S_{mu,B}, sigma = phibar^/D");
}

DomainElement ResolventOracle::apply(cplx lambda, cplx mu) const {
  DomainElement f = apply_(lambda, mu);
  double buf[4] = {f.c_f.real(), f.c_f.imag(), f.gamma1.real(), f.gamma1.imag()};
  std::lock_guard<std::mutex> lock(log_mu_);
  log_.push_back({lambda, mu, fnv1a(buf, sizeof buf)});
  return f;
}

std::vector<ResolventOracle::Query> ResolventOracle::transcript() const {
  std::lock_guard<std::mutex> lock(log_mu_);
  return log_;
}

RatFun gauge_normalize(const RatFun& psi) {
  if (psi.is_zero()) return psi;
  auto terms = partial_fractions(psi).terms;
  std::erase_if(terms, [](const PFTerm& t) { return std::abs(t.coeff) == 0; });
  if (terms.empty()) return psi;
  std::sort(terms.begin(), terms.end(), [](const PFTerm& a, const PFTerm& b) {
    if (a.pole.imag() != b.pole.imag()) return a.pole.imag() < b.pole.imag();
    if (a.pole.real() != b.pole.real()) return a.pole.real() < b.pole.real();
    return a.order < b.order;
  });
  return (1.0 / terms.front().coeff) * psi;
}

double gauge_quotient_error(const RatFun& a, const RatFun& b) {
  const double na = l2_norm(a);
  if (na == 0) return l2_norm(b) == 0 ? 0 : INFINITY;
  const double nb = l2_norm(b);
  if (nb == 0) return 1;
  const cplx c = inner_product(a, b) / (nb * nb);
  return l2_norm(a - c * b) / na;
}

RecoveryResult recover_from_restricted_resolvent(const ResolventOracle& oracle, const RecoverySettings& s) {
  if (s.ladder.size() != 3) throw DomainError("recover_from_restricted_resolvent: ladder needs three values");
  RecoveryResult out;

  // stage 1: (x - l) f - g - c_f = A(l) psi
  const std::vector<cplx> lambdas{{0.3, 1.1}, {-0.6, -0.9}, {1.2, 0.5}, {-1.4, -1.6}};
  const std::vector<cplx> mus{{0.7, -1.3}, {-0.4, 0.8}, {1.5, 1.7}};
  std::vector<RatFun> cands;
  for (cplx l : lambdas)
    for (cplx mu : mus) {
      if (same_point(l, mu)) continue;
      try {
        RatFun g = oracle.range_element(mu);
        DomainElement f = oracle.apply(l, mu);
        RatFun c = (times_linear(f.f, l) - g).proper_part();
        if (!negligible(c, l2_norm(g))) cands.push_back(c);
      } catch (const SpectralError&) {
      }
    }
  if (cands.empty()) {
    out.trivial = true;
  } else {
    out.psi = gauge_normalize(cands.front());
    for (std::size_t i = 1; i < cands.size(); ++i)
      out.psi_error = std::max(out.psi_error, gauge_quotient_error(cands[i], out.psi));
  }

  // stage 2: (i pi s - B) c_f ~ -pi i s / l at l = i s y, mu = -l
  std::vector<double> h;
  for (double y : s.ladder) h.push_back(1.0 / y);
  bool have_B = false;
  double best_gap = -1;
  for (double sg : {1.0, -1.0}) {
    std::vector<cplx> est;
    try {
      for (double y : s.ladder) {
        cplx l(0, sg * y);
        DomainElement f = oracle.apply(l, -l);
        if (f.c_f == cplx{}) throw InsufficientInformation("recover: c_f vanished in the B asymptotics");
        est.push_back(sg * pi * I + sg * pi * I / (l * f.c_f));
      }
    } catch (const SpectralError&) {
      continue;
    }
    auto [Bs, spread] = extrapolate(h, est);
    double gap = std::abs(sg * pi * I - Bs);
    if (gap > best_gap) {
      best_gap = gap;
      out.B = Bs;
      out.B_error = spread;
      out.B_ladder = est;
      have_B = true;
    }
  }
  if (!have_B) throw PathologicalModel("recover: no half-plane admits resolvent queries");

  // stage 3: (mu - l) A(l) -> M phibar^/D (i pi s - B) as Im mu -> inf
  for (cplx l : s.lambda_grid) {
    const double sg = spectral_sign(l);
    const cplx gap = sg * pi * I - out.B;
    if (std::abs(gap) < 1e-6 * (1 + std::abs(out.B)))
      throw PathologicalModel("recover: B = i pi sign(Im lambda); this half-plane is the excluded case");
    out.lambda.push_back(l);
    if (out.trivial) {
      out.phibar_over_D.push_back(0);
      out.M.push_back(1.0 / gap);
      continue;
    }
    const double pp = l2_norm(out.psi);
    std::vector<cplx> q;
    try {
      for (double y : s.ladder) {
        cplx mu(l.real(), sg * y);
        RatFun g = oracle.range_element(mu);
        DomainElement f = oracle.apply(l, mu);
        RatFun c = (times_linear(f.f, l) - g).proper_part();
        cplx A = inner_product(c, out.psi) / (pp * pp);
        q.push_back((mu - l) * A);
      }
    } catch (const SpectralError&) {
      throw PathologicalModel("recover: resolvent unavailable at a grid point");
    }
    auto [Qinf, spread] = extrapolate(h, q);
    out.phibar_error = std::max(out.phibar_error, spread);
    const cplx alpha = Qinf / gap;
    const cplx ph = cauchy_transform(out.psi, l);
    const cplx pod = Qinf / (1.0 + alpha * ph);
    out.phibar_over_D.push_back(pod);
    out.M.push_back(1.0 / (gap - ph * pod));
  }
  return out;
}

TwoResolventData two_resolvent_data(const FriedrichsModel& m, cplx C, cplx lambda, const RatFun& g,
                                    const RatFun& f) {
  const auto mc = m.with_B(C);
  TwoResolventData d;
  d.B = m.B();
  d.C = C;
  auto rc = apply_resolvent(mc, lambda, g);
  d.delta = inner_product(apply_resolvent(m, lambda, g).f - rc.f, f);
  d.s = rc.gamma2;
  d.a = apply_resolvent(tilde_model(mc), std::conj(lambda), f).gamma2;
  return d;
}

TwoResolventM m_from_two_resolvents(const TwoResolventData& d) {
  const cplx bc = d.B - d.C;
  if (std::abs(bc) == 0) throw DomainError("m_from_two_resolvents: B = C");
  // delta = -(1 + (B - C) M_B)(B - C) s conj(a)
  const cplx den = bc * d.s * std::conj(d.a);
  if (std::abs(den) < 1e-14) throw DomainError("m_from_two_resolvents: vanishing Gamma2 data");
  TwoResolventM r;
  r.M = (-d.delta / den - 1.0) / bc;
  r.degenerate = std::abs(d.delta) <= 1e-14 * std::abs(den);
  return r;
}

SampledM m_from_one_bordered(const PiecewiseResolvent& oracle, const PiecewiseFun& v, const PiecewiseFun& vt,
                             const std::vector<cplx>& lambdas) {
  SampledM out;
  const PiecewiseFun vvt = product(v, vt.conj());
  const MixedFun vtm(vt);
  for (cplx l : lambdas) {
    spectral_sign(l);
    const cplx free = integrate_rational_times(RatFun::pole_term(l), vvt);
    const cplx c1 = cauchy_transform_num(v, l), c2 = cauchy_transform_num(vt.conj(), l);
    out.lambda.push_back(l);
    if (std::abs(c1 * c2) < 1e-12) {
      out.M.push_back(0);
      out.skipped.push_back(true);
      continue;
    }
    const cplx pr = pairing(oracle(l, v), vtm);
    out.M.push_back((free - pr) / (c1 * c2));
    out.skipped.push_back(false);
  }
  return out;
}

namespace {
void check_bordered_poles(cplx lambda, cplx mu, cplx mu_tilde) {
  if (same_point(lambda, mu) || same_point(lambda, std::conj(mu_tilde)))
    throw DomainError("bordered resolvent: lambda at mu or conj(mu~)");
}
}  // namespace

cplx bordered_from_m(cplx M, cplx mu, cplx mu_tilde, cplx f, cplx w, cplx lambda, cplx Fv, cplx gamma2_v) {
  check_bordered_poles(lambda, mu, mu_tilde);
  const cplx mt = std::conj(mu_tilde);
  return ((mt - lambda) * Fv - M * f * std::conj(w) + f * std::conj(gamma2_v)) / ((mu - lambda) * (mt - lambda));
}

cplx m_from_bordered(cplx pairing_value, cplx mu, cplx mu_tilde, cplx f, cplx w, cplx lambda, cplx Fv,
                     cplx gamma2_v) {
  check_bordered_poles(lambda, mu, mu_tilde);
  const cplx fw = f * std::conj(w);
  if (std::abs(fw) == 0) throw DomainError("m_from_bordered: f conj(w) = 0");
  const cplx mt = std::conj(mu_tilde);
  return ((mt - lambda) * Fv + f * std::conj(gamma2_v) - pairing_value * (mu - lambda) * (mt - lambda)) / fw;
}

}  // namespace friedlab

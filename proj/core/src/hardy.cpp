#include "friedlab/hardy.hpp"

#include <algorithm>
#include <cmath>

namespace friedlab {

RieszParts riesz_split(const RatFun& f) {
  if (f.has_real_pole()) throw DomainError("riesz_split: real pole");
  if (!f.is_L2()) throw DomainError("riesz_split: argument not in L2");
  auto pf = partial_fractions(f);
  std::vector<PFTerm> lo, up;
  for (auto& t : pf.terms) (t.pole.imag() < 0 ? lo : up).push_back(t);
  return {RatFun::from_partial_fractions(lo), RatFun::from_partial_fractions(up)};
}

cplx boundary_value(const RatFun& f, double k, Side side) {
  if (f.is_zero()) return 0;
  if (f.has_real_pole()) throw DomainError("boundary_value: real pole");
  if (!f.is_L2()) throw DomainError("boundary_value: argument not in L2");
  // int dt / ((t-p)^j (t-lambda)) = 2 pi i ([lambda in C+] - [p in C+]) / (lambda-p)^j
  const double s = side == Side::plus ? 1.0 : 0.0;
  cplx v{};
  for (auto& t : partial_fractions(f).terms) {
    double w = s - (t.pole.imag() > 0 ? 1.0 : 0.0);
    if (w != 0) v += w * t.coeff / std::pow(cplx(k) - t.pole, t.order);
  }
  return 2.0 * pi * I * v;
}

namespace {

cplx log_ratio(double b, double a, cplx lambda) {
  return std::log(cplx(b) - lambda) - std::log(cplx(a) - lambda);
}

// int_a^b f(t)/(t - lambda) dt for lambda off the closed interval (may be real)
cplx cauchy_piece(const Piece& p, cplx lambda, double abs_tol) {
  if (lambda.imag() == 0 && lambda.real() >= p.a && lambda.real() <= p.b)
    throw DomainError("cauchy transform evaluated on the support");
  if (p.kind == Piece::Kind::indicator) return p.value * log_ratio(p.b, p.a, lambda);
  const double k = lambda.real();
  if (k > p.a && k < p.b) {
    // singularity subtraction around Re lambda
    cplx fk = p(k);
    auto g = [&](double t) { return (p(t) - fk) / (t - lambda); };
    return integrate(g, p.a, p.b, abs_tol).value + fk * log_ratio(p.b, p.a, lambda);
  }
  auto g = [&](double t) { return p(t) / (t - lambda); };
  return integrate(g, p.a, p.b, abs_tol).value;
}

}  // namespace

cplx boundary_value(const PiecewiseFun& f, double k, Side side) {
  if (f.is_zero()) return 0;
  if (f.endpoint_distance(k) < 1e-12 * (1 + std::abs(k)))
    throw DomainError("boundary_value: k at a piece endpoint");
  const double sg = side == Side::plus ? 1.0 : -1.0;
  const double t = tol::quad_abs / static_cast<double>(f.pieces().size());
  cplx v{};
  for (auto& p : f.pieces()) {
    if (k > p.a && k < p.b) {
      cplx fk = p(k);
      cplx pv = fk * std::log((p.b - k) / (k - p.a));
      if (p.kind != Piece::Kind::indicator) {
        auto g = [&](double x) { return x == k ? cplx{} : (p(x) - fk) / (x - k); };
        pv += integrate(g, p.a, p.b, t).value;
      }
      v += pv + sg * I * pi * fk;
    } else {
      v += cauchy_piece(p, cplx(k), t);
    }
  }
  return v;
}

cplx cauchy_transform_num(const PiecewiseFun& f, cplx lambda) {
  if (f.is_zero()) return 0;
  const double t = tol::quad_abs / static_cast<double>(f.pieces().size());
  cplx v{};
  for (auto& p : f.pieces()) v += cauchy_piece(p, lambda, t);
  return v;
}

cplx integrate_rational_times(const RatFun& r, const PiecewiseFun& h) {
  if (r.is_zero() || h.is_zero()) return 0;
  auto pf = partial_fractions(r);
  const double t = tol::quad_abs / static_cast<double>(h.pieces().size() * (pf.terms.size() + 1));
  cplx v{};
  for (auto& term : pf.terms) {
    if (term.coeff == cplx{}) continue;
    for (auto& p : h.pieces()) {
      if (term.order == 1) {
        v += term.coeff * cauchy_piece(p, term.pole, t);
      } else {
        auto g = [&](double x) { return p(x) / std::pow(x - term.pole, term.order); };
        v += term.coeff * integrate(g, p.a, p.b, t).value;
      }
    }
  }
  if (!pf.poly_part.is_zero())
    for (auto& p : h.pieces()) {
      auto g = [&](double x) { return pf.poly_part(x) * p(x); };
      v += integrate(g, p.a, p.b, t).value;
    }
  return v;
}

int BlaschkeProduct::count() const {
  int n = 0;
  for (auto& z : zeros) n += z.multiplicity;
  return n;
}

cplx BlaschkeProduct::operator()(cplx z) const {
  cplx v = 1.0;
  for (std::size_t k = 0; k < zeros.size(); ++k) {
    cplx zk = zeros[k].value;
    v *= std::pow(std::polar(1.0, phases[k]) * (z - zk) / (z - std::conj(zk)), zeros[k].multiplicity);
  }
  return v;
}

RatFun BlaschkeProduct::as_ratfun() const {
  cplx lead = 1.0;
  std::vector<cplx> top;
  std::vector<Pole> poles;
  for (std::size_t k = 0; k < zeros.size(); ++k) {
    lead *= std::polar(1.0, phases[k] * zeros[k].multiplicity);
    for (int m = 0; m < zeros[k].multiplicity; ++m) top.push_back(zeros[k].value);
    poles.push_back({std::conj(zeros[k].value), zeros[k].multiplicity, PoleClass::upper});
  }
  return RatFun(Poly::from_roots(top, lead), poles);
}

BlaschkeProduct blaschke_build(const std::vector<Root>& zeros) {
  BlaschkeProduct b;
  for (auto& z : zeros) {
    if (!(z.value.imag() < 0) || half_plane_sign(z.value) == 0)
      throw DomainError("blaschke_build: zero not strictly in C-");
    if (same_point(z.value, -I)) throw DomainError("blaschke_build: zero at -i is not normalizable");
    b.zeros.push_back(z);
    b.phases.push_back(-std::arg((I - z.value) / (I - std::conj(z.value))));
  }
  return b;
}

BlaschkeProduct blaschke_build(const std::vector<cplx>& zeros) {
  std::vector<Root> r;
  for (auto z : zeros) r.push_back({z, 1});
  return blaschke_build(r);
}

Factorization factorize_rational(const RatFun& f) {
  if (f.is_zero()) throw DomainError("factorize_rational: zero symbol");
  for (auto& p : f.poles())
    if (p.cls != PoleClass::upper) throw DomainError("factorize_rational: pole outside C+");
  Factorization out;
  std::vector<Root> lower;
  Poly num = f.num();
  for (auto& r : poly_roots(f.num())) {
    switch (half_plane_sign(r.value)) {
      case -1: lower.push_back(r); break;
      case 0: out.boundary_zeros.push_back(r); break;
      default: out.upper_zeros.push_back(r); break;
    }
  }
  out.degenerate = !out.boundary_zeros.empty();
  if (lower.empty()) {
    out.outer = f;
    return out;
  }
  // a zero at -i cannot carry the normalized phase; treat it as unit phase
  std::vector<Root> regular, at_minus_i;
  for (auto& r : lower) (same_point(r.value, -I) ? at_minus_i : regular).push_back(r);
  out.blaschke = blaschke_build(regular);
  for (auto& r : at_minus_i) {
    out.blaschke.zeros.push_back(r);
    out.blaschke.phases.push_back(0.0);
  }
  cplx phase = 1.0;
  for (std::size_t k = 0; k < out.blaschke.zeros.size(); ++k) {
    auto& z = out.blaschke.zeros[k];
    phase *= std::polar(1.0, -out.blaschke.phases[k] * z.multiplicity);
    for (int m = 0; m < z.multiplicity; ++m)
      num = num.deflate(z.value) * Poly({-std::conj(z.value), 1.0});
  }
  out.outer = RatFun(phase * num, f.poles());
  return out;
}

int lower_winding(const RatFun& f, double R, int samples) {
  double total = 0;
  cplx prev{};
  bool first = true;
  auto step = [&](cplx z) {
    cplx v = f(z);
    if (!first) total += std::arg(v / prev);
    prev = v;
    first = false;
  };
  const double th = std::atan(R);
  // real axis from +R to -R, then the lower arc from -R back to +R
  for (int j = 0; j <= samples; ++j) step(std::tan(th - 2 * th * j / samples));
  for (int j = 1; j <= samples; ++j) step(R * std::polar(1.0, pi + pi * j / samples));
  return static_cast<int>(std::lround(total / (2 * pi)));
}

}  // namespace friedlab

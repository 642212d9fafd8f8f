#include "friedlab/ratfun.hpp"

#include <algorithm>
#include <cmath>

namespace friedlab {

PoleClass classify(cplx z) {
  switch (half_plane_sign(z)) {
    case 1: return PoleClass::upper;
    case -1: return PoleClass::lower;
    default: return PoleClass::real;
  }
}

namespace {

// (x - p)^m expanded
Poly linear_power(cplx p, int m) {
  return Poly::from_roots(std::vector<cplx>(std::max(m, 0), p));
}

int find_pole(const std::vector<Pole>& poles, cplx z) {
  for (std::size_t i = 0; i < poles.size(); ++i)
    if (same_point(poles[i].loc, z)) return static_cast<int>(i);
  return -1;
}

std::vector<Pole> normalized(std::vector<Pole> in) {
  std::vector<Pole> out;
  for (auto& p : in) {
    if (p.order <= 0) continue;
    int j = find_pole(out, p.loc);
    if (j >= 0)
      out[j].order += p.order;
    else
      out.push_back({p.loc, p.order, classify(p.loc)});
  }
  return out;
}

// Principal part of num / prod(x-q)^{m_q} at poles[i]: coefficients for
// orders 1..m, index k-1.
std::vector<cplx> principal_part(const Poly& num, const std::vector<Pole>& poles, std::size_t i) {
  const cplx p = poles[i].loc;
  const int m = poles[i].order;
  std::vector<cplx> h = num.taylor_at(p, m);
  h.resize(m);
  for (std::size_t j = 0; j < poles.size(); ++j) {
    if (j == i) continue;
    const cplx d = p - poles[j].loc;
    const int mq = poles[j].order;
    // (d + t)^{-mq} = d^{-mq} sum_n binom(-mq, n) (t/d)^n
    std::vector<cplx> s(m);
    cplx dn = std::pow(d, -mq);
    double b = 1;
    for (int n = 0; n < m; ++n) {
      s[n] = b * dn;
      b *= -static_cast<double>(mq + n) / (n + 1);
      dn /= d;
    }
    std::vector<cplx> r(m);
    for (int a = 0; a < m; ++a)
      for (int c = 0; a + c < m; ++c) r[a + c] += h[a] * s[c];
    h = std::move(r);
  }
  std::vector<cplx> out(m);
  for (int j = 0; j < m; ++j) out[m - 1 - j] = h[j];
  return out;
}

}  // namespace

RatFun::RatFun(Poly num, std::vector<Pole> poles) : num_(std::move(num)) {
  if (num_.degree() > tol::max_degree) throw DomainError("numerator degree above 64");
  poles_ = normalized(std::move(poles));
  if (den_degree() > tol::max_degree) throw DomainError("denominator degree above 64");
  reduce();
}

void RatFun::reduce() {
  if (num_.is_zero()) {
    poles_.clear();
    return;
  }
  for (auto& p : poles_) {
    while (p.order > 0 && num_.degree() > 0) {
      cplx v = num_(p.loc);
      bool root = std::abs(v) <= 1e-14 * num_.eval_scale(p.loc);
      if (!root) {
        cplx d = num_.derivative()(p.loc);
        root = d != cplx{} && std::abs(v / d) <= tol::cluster * (1 + std::abs(p.loc));
      }
      if (!root) break;
      num_ = num_.deflate(p.loc);
      --p.order;
    }
  }
  std::erase_if(poles_, [](const Pole& p) { return p.order <= 0; });
}

RatFun RatFun::from_num_den(const Poly& num, const Poly& den) {
  if (den.is_zero()) throw DomainError("zero denominator");
  std::vector<Pole> poles;
  for (auto& r : poly_roots(den)) poles.push_back({r.value, r.multiplicity, classify(r.value)});
  return RatFun((1.0 / den.leading()) * num, std::move(poles));
}

RatFun RatFun::pole_term(cplx z, cplx c, int k) {
  return RatFun(Poly::constant(c), {{z, k, classify(z)}});
}

RatFun RatFun::from_partial_fractions(const std::vector<PFTerm>& terms, const Poly& poly_part) {
  std::vector<Pole> poles;
  for (auto& t : terms) {
    if (t.coeff == cplx{}) continue;
    int j = find_pole(poles, t.pole);
    if (j < 0)
      poles.push_back({t.pole, t.order, classify(t.pole)});
    else
      poles[j].order = std::max(poles[j].order, t.order);
  }
  Poly all = Poly::constant(1.0);
  for (auto& p : poles) all = all * linear_power(p.loc, p.order);
  Poly num = poly_part * all;
  for (auto& t : terms) {
    if (t.coeff == cplx{}) continue;
    int j = find_pole(poles, t.pole);
    Poly f = Poly::constant(t.coeff) * linear_power(poles[j].loc, poles[j].order - t.order);
    for (std::size_t q = 0; q < poles.size(); ++q)
      if (static_cast<int>(q) != j) f = f * linear_power(poles[q].loc, poles[q].order);
    num = num + f;
  }
  return RatFun(num, poles);
}

Poly RatFun::den() const {
  Poly d = Poly::constant(1.0);
  for (auto& p : poles_) d = d * linear_power(p.loc, p.order);
  return d;
}

int RatFun::den_degree() const {
  int n = 0;
  for (auto& p : poles_) n += p.order;
  return n;
}

bool RatFun::has_real_pole() const {
  return std::any_of(poles_.begin(), poles_.end(),
                     [](const Pole& p) { return p.cls == PoleClass::real; });
}

bool RatFun::is_L2() const {
  if (is_zero()) return true;
  return den_degree() >= num_degree() + 1 && !has_real_pole();
}

cplx RatFun::operator()(cplx x) const {
  cplx v = num_(x);
  for (auto& p : poles_) v /= std::pow(x - p.loc, p.order);
  return v;
}

cplx RatFun::c_infinity() const {
  if (is_zero()) return 0;
  int gap = den_degree() - num_degree();
  if (gap >= 2) return 0;
  if (gap == 1) return num_.leading();
  throw DomainError("x f(x) has no finite limit");
}

RatFun RatFun::conj_reflect() const {
  std::vector<Pole> p = poles_;
  for (auto& q : p) q.loc = std::conj(q.loc);
  return RatFun(num_.conj(), std::move(p));
}

RatFun RatFun::times_x() const { return RatFun(num_ * Poly::x(), poles_); }

RatFun RatFun::over_linear(cplx z) const {
  auto p = poles_;
  p.push_back({z, 1, classify(z)});
  return RatFun(num_, std::move(p));
}

RatFun RatFun::proper_part() const {
  if (num_degree() < den_degree()) return *this;
  return RatFun(num_.divmod(den()).second, poles_);
}

RatFun RatFun::operator-() const {
  RatFun f = *this;
  f.num_ = -f.num_;
  return f;
}

RatFun operator+(const RatFun& a, const RatFun& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  std::vector<Pole> u = a.poles_;
  for (auto& q : b.poles_) {
    int j = find_pole(u, q.loc);
    if (j < 0)
      u.push_back(q);
    else
      u[j].order = std::max(u[j].order, q.order);
  }
  auto missing = [&](const std::vector<Pole>& own) {
    Poly f = Poly::constant(1.0);
    for (auto& p : u) {
      int j = find_pole(own, p.loc);
      int have = j < 0 ? 0 : own[j].order;
      f = f * linear_power(p.loc, p.order - have);
    }
    return f;
  };
  Poly num = a.num_ * missing(a.poles_) + b.num_ * missing(b.poles_);
  return RatFun(std::move(num), std::move(u));
}

RatFun operator*(const RatFun& a, const RatFun& b) {
  if (a.is_zero() || b.is_zero()) return {};
  auto p = a.poles_;
  p.insert(p.end(), b.poles_.begin(), b.poles_.end());
  return RatFun(a.num_ * b.num_, std::move(p));
}

RatFun operator*(cplx s, const RatFun& f) {
  if (s == cplx{}) return {};
  RatFun g = f;
  g.num_ *= s;
  return g;
}

RatFun operator/(const RatFun& a, const RatFun& b) {
  if (b.is_zero()) throw DomainError("rational division by zero");
  if (a.is_zero()) return {};
  std::vector<Pole> p = a.poles_;
  for (auto& r : poly_roots(b.num_)) p.push_back({r.value, r.multiplicity, classify(r.value)});
  return RatFun((1.0 / b.num_.leading()) * (a.num_ * b.den()), std::move(p));
}

PartialFractions partial_fractions(const RatFun& f) {
  PartialFractions out;
  if (f.is_zero()) return out;
  if (f.num_degree() >= f.den_degree()) out.poly_part = f.num().divmod(f.den()).first;
  for (std::size_t i = 0; i < f.poles().size(); ++i) {
    auto c = principal_part(f.num(), f.poles(), i);
    for (int k = 1; k <= static_cast<int>(c.size()); ++k)
      out.terms.push_back({f.poles()[i].loc, k, c[k - 1]});
  }
  return out;
}

RatFun resum(const PartialFractions& pf) {
  return RatFun::from_partial_fractions(pf.terms, pf.poly_part);
}

cplx residue(const RatFun& f, cplx pole) {
  int j = find_pole(f.poles(), pole);
  if (j < 0) return 0;
  return principal_part(f.num(), f.poles(), j)[0];
}

cplx pv_integral(const RatFun& f) {
  if (f.is_zero()) return 0;
  if (f.has_real_pole()) throw DomainError("principal value at real pole unsupported here");
  if (f.den_degree() < f.num_degree() + 1) throw DomainError("pv_integral: integrand does not decay");
  cplx s{};
  for (std::size_t i = 0; i < f.poles().size(); ++i) {
    const auto& p = f.poles()[i];
    s += principal_part(f.num(), f.poles(), i)[0] * (p.cls == PoleClass::upper ? 1.0 : -1.0);
  }
  return pi * I * s;
}

cplx cauchy_transform(const RatFun& f, cplx lambda) {
  if (std::abs(lambda.imag()) < tol::im_lambda) throw DomainError("cauchy_transform: lambda on R");
  if (f.is_zero()) return 0;
  for (auto& p : f.poles())
    if (same_point(p.loc, lambda)) throw DomainError("cauchy_transform: lambda is a pole");
  return pv_integral(f.over_linear(lambda));
}

cplx inner_product(const RatFun& f, const RatFun& g) {
  if (f.is_zero() || g.is_zero()) return 0;
  if (f.has_real_pole() || g.has_real_pole()) throw DomainError("inner_product: real singularity");
  if (!f.is_L2() || !g.is_L2()) throw DomainError("inner_product: argument not in L2");
  return pv_integral(f * g.conj_reflect());
}

}  // namespace friedlab

#include "friedlab/piecewise.hpp"

#include <algorithm>
#include <cmath>

namespace friedlab {

cplx Piece::operator()(double x) const {
  switch (kind) {
    case Kind::indicator: return value;
    case Kind::rational_restriction: return rational(x);
    case Kind::reciprocal_cauchy_of: return value / std::log((src_b - x) / (src_a - x));
    case Kind::custom: return fn(x);
  }
  return 0;
}

PiecewiseFun::PiecewiseFun(std::vector<Piece> pieces) : pieces_(std::move(pieces)) {
  std::sort(pieces_.begin(), pieces_.end(), [](const Piece& p, const Piece& q) { return p.a < q.a; });
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const auto& p = pieces_[i];
    if (!(p.b > p.a)) throw DomainError("piecewise: empty or reversed interval");
    if (i > 0 && p.a < pieces_[i - 1].b) throw DomainError("piecewise: overlapping intervals");
    if (p.kind == Piece::Kind::reciprocal_cauchy_of && p.b > p.src_a && p.a < p.src_b)
      throw DomainError("piecewise: reciprocal-cauchy piece overlaps its source interval");
    if (p.kind == Piece::Kind::rational_restriction)
      for (auto& q : p.rational.poles())
        if (q.cls == PoleClass::real && q.loc.real() >= p.a && q.loc.real() <= p.b)
          throw DomainError("piecewise: rational piece has a pole on its interval");
    for (int k = 0; k < 64; ++k) {
      double x = p.a + (p.b - p.a) * (k + 0.5) / 64;
      cplx v = p(x);
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw DomainError("piecewise: evaluator unbounded on its interval");
    }
  }
}

PiecewiseFun PiecewiseFun::indicator(double a, double b, cplx height) {
  Piece p;
  p.a = a;
  p.b = b;
  p.value = height;
  return PiecewiseFun({p});
}

PiecewiseFun PiecewiseFun::restriction(const RatFun& r, double a, double b) {
  Piece p;
  p.a = a;
  p.b = b;
  p.kind = Piece::Kind::rational_restriction;
  p.rational = r;
  return PiecewiseFun({p});
}

PiecewiseFun PiecewiseFun::reciprocal_cauchy_of(double a, double b, double c, double d, cplx value) {
  Piece p;
  p.a = a;
  p.b = b;
  p.kind = Piece::Kind::reciprocal_cauchy_of;
  p.src_a = c;
  p.src_b = d;
  p.value = value;
  return PiecewiseFun({p});
}

cplx PiecewiseFun::operator()(double x) const {
  for (auto& p : pieces_)
    if (x >= p.a && x <= p.b) return p(x);
  return 0;
}

bool PiecewiseFun::in_support(double x) const {
  return std::any_of(pieces_.begin(), pieces_.end(),
                     [x](const Piece& p) { return x >= p.a && x <= p.b; });
}

double PiecewiseFun::endpoint_distance(double x) const {
  double d = INFINITY;
  for (auto& p : pieces_) d = std::min({d, std::abs(x - p.a), std::abs(x - p.b)});
  return d;
}

PiecewiseFun PiecewiseFun::conj() const {
  std::vector<Piece> out;
  for (auto& p : pieces_) {
    Piece q = p;
    switch (p.kind) {
      case Piece::Kind::indicator:
      case Piece::Kind::reciprocal_cauchy_of: q.value = std::conj(p.value); break;
      case Piece::Kind::rational_restriction: q.rational = p.rational.conj_reflect(); break;
      case Piece::Kind::custom: q.fn = [f = p.fn](double x) { return std::conj(f(x)); }; break;
    }
    out.push_back(std::move(q));
  }
  PiecewiseFun r;
  r.pieces_ = std::move(out);
  return r;
}

PiecewiseFun PiecewiseFun::scaled(cplx s) const {
  std::vector<Piece> out;
  for (auto& p : pieces_) {
    Piece q = p;
    switch (p.kind) {
      case Piece::Kind::indicator:
      case Piece::Kind::reciprocal_cauchy_of: q.value = s * p.value; break;
      case Piece::Kind::rational_restriction: q.rational = s * p.rational; break;
      case Piece::Kind::custom: q.fn = [f = p.fn, s](double x) { return s * f(x); }; break;
    }
    out.push_back(std::move(q));
  }
  PiecewiseFun r;
  r.pieces_ = std::move(out);
  return r;
}

PiecewiseFun product(const PiecewiseFun& f, const PiecewiseFun& g) {
  std::vector<Piece> out;
  for (auto& p : f.pieces_)
    for (auto& q : g.pieces_) {
      double a = std::max(p.a, q.a), b = std::min(p.b, q.b);
      if (!(b > a)) continue;
      Piece r;
      r.a = a;
      r.b = b;
      if (p.kind == Piece::Kind::indicator && q.kind == Piece::Kind::indicator) {
        r.value = p.value * q.value;
      } else {
        r.kind = Piece::Kind::custom;
        r.fn = [p, q](double x) { return p(x) * q(x); };
      }
      out.push_back(std::move(r));
    }
  PiecewiseFun r;
  r.pieces_ = std::move(out);
  return r;
}

PiecewiseFun disjoint_sum(const PiecewiseFun& f, const PiecewiseFun& g) {
  auto p = f.pieces_;
  p.insert(p.end(), g.pieces_.begin(), g.pieces_.end());
  return PiecewiseFun(std::move(p));
}

}  // namespace friedlab

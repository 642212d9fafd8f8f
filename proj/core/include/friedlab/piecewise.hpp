#pragma once

#include <functional>
#include <vector>

#include "friedlab/ratfun.hpp"

namespace friedlab {

// Function with compact support made of finitely many interval pieces.
struct Piece {
  enum class Kind { indicator, rational_restriction, reciprocal_cauchy_of, custom };
  double a = 0, b = 0;
  Kind kind = Kind::indicator;
  cplx value = 1.0;          // indicator height, or scale for reciprocal_cauchy_of
  RatFun rational;           // rational_restriction
  double src_a = 0, src_b = 0;  // reciprocal_cauchy_of: value / int_{src} dt/(t-x)
  std::function<cplx(double)> fn;  // custom

  cplx operator()(double x) const;
};

class PiecewiseFun {
 public:
  PiecewiseFun() = default;
  explicit PiecewiseFun(std::vector<Piece> pieces);

  static PiecewiseFun indicator(double a, double b, cplx height = 1.0);
  static PiecewiseFun restriction(const RatFun& r, double a, double b);
  // value / int_{c}^{d} dt/(t-x) on [a,b], with [a,b] and [c,d] disjoint
  static PiecewiseFun reciprocal_cauchy_of(double a, double b, double c, double d,
                                           cplx value = 1.0);

  const std::vector<Piece>& pieces() const { return pieces_; }
  bool is_zero() const { return pieces_.empty(); }
  cplx operator()(double x) const;
  bool in_support(double x) const;
  // distance from x to the nearest piece endpoint
  double endpoint_distance(double x) const;

  PiecewiseFun conj() const;
  PiecewiseFun scaled(cplx s) const;
  friend PiecewiseFun product(const PiecewiseFun& f, const PiecewiseFun& g);
  // union of pieces; supports must be disjoint
  friend PiecewiseFun disjoint_sum(const PiecewiseFun& f, const PiecewiseFun& g);

 private:
  std::vector<Piece> pieces_;
};

}  // namespace friedlab

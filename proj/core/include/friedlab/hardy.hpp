#pragma once

#include <utility>
#include <vector>

#include "friedlab/piecewise.hpp"
#include "friedlab/quadrature.hpp"
#include "friedlab/ratfun.hpp"

namespace friedlab {

enum class Side { plus = 1, minus = -1 };

struct RieszParts {
  RatFun plus;   // poles in C-, boundary value of H2+
  RatFun minus;  // poles in C+
};

RieszParts riesz_split(const RatFun& f);

// f^(k +- i0) = p.v. int f(t)/(t-k) dt +- i pi f(k)
cplx boundary_value(const RatFun& f, double k, Side side);
cplx boundary_value(const PiecewiseFun& f, double k, Side side);

// int f(t)/(t - lambda) dt over the pieces
cplx cauchy_transform_num(const PiecewiseFun& f, cplx lambda);

// int r(x) h(x) dx for rational r without poles on the support of h
cplx integrate_rational_times(const RatFun& r, const PiecewiseFun& h);

struct BlaschkeProduct {
  std::vector<Root> zeros;     // in C-
  std::vector<double> phases;  // one per distinct zero

  int count() const;
  cplx operator()(cplx z) const;
  RatFun as_ratfun() const;
};

BlaschkeProduct blaschke_build(const std::vector<Root>& zeros);
BlaschkeProduct blaschke_build(const std::vector<cplx>& zeros);

struct Factorization {
  BlaschkeProduct blaschke;
  bool singular_trivial = true;  // always for rational input
  RatFun outer;
  std::vector<Root> boundary_zeros;  // zeros inside the real band
  std::vector<Root> upper_zeros;
  bool degenerate = false;           // boundary zeros present
};

// f bounded on C- (poles in C+ only), f != 0
Factorization factorize_rational(const RatFun& f);

// winding number of f about 0 along the boundary of the lower half-disc of
// radius R (counterclockwise: along R then the lower arc back)
int lower_winding(const RatFun& f, double R = 1e4, int samples = 40000);

}  // namespace friedlab

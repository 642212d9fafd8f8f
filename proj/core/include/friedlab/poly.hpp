#pragma once

#include <utility>
#include <vector>

#include "friedlab/common.hpp"

namespace friedlab {

// Complex polynomial, coefficients in ascending degree.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<cplx> coeffs);
  Poly(std::initializer_list<cplx> coeffs) : Poly(std::vector<cplx>(coeffs)) {}

  static Poly constant(cplx c) { return Poly(std::vector<cplx>{c}); }
  static Poly x() { return Poly({0.0, 1.0}); }
  // leading * prod (x - r)
  static Poly from_roots(const std::vector<cplx>& roots, cplx leading = 1.0);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<cplx>& coeffs() const { return c_; }
  cplx coeff(int k) const { return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[k] : cplx{}; }
  cplx leading() const { return c_.empty() ? cplx{} : c_.back(); }
  double max_abs_coeff() const;

  cplx operator()(cplx x) const;
  // sum |c_k| |x|^k, the natural scale of a rounding error in p(x)
  double eval_scale(cplx x) const;

  Poly derivative() const;
  Poly conj() const;
  // coefficients of p(p0 + t) in powers of t, truncated to n terms (n<0: all)
  std::vector<cplx> taylor_at(cplx p0, int n = -1) const;
  // synthetic division by (x - r); remainder is p(r)
  Poly deflate(cplx r, cplx* remainder = nullptr) const;
  std::pair<Poly, Poly> divmod(const Poly& d) const;

  Poly operator-() const;
  Poly& operator*=(cplx s);
  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(cplx s, const Poly& p);
  friend Poly operator*(const Poly& p, cplx s) { return s * p; }

 private:
  void trim();
  std::vector<cplx> c_;
};

struct Root {
  cplx value;
  int multiplicity = 1;
};

// Aberth-Ehrlich simultaneous iteration plus multiplicity clustering.
std::vector<Root> poly_roots(const Poly& p);

// expand lead * prod (x - r)^m
Poly poly_from_roots(const std::vector<Root>& roots, cplx lead = 1.0);

}  // namespace friedlab

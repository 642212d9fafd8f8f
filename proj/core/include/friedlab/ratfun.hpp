#pragma once

#include <vector>

#include "friedlab/poly.hpp"

namespace friedlab {

enum class PoleClass { upper, lower, real };

struct Pole {
  cplx loc;
  int order = 1;
  PoleClass cls = PoleClass::upper;
};

PoleClass classify(cplx z);

struct PFTerm {
  cplx pole;
  int order;   // k in c / (x - pole)^k
  cplx coeff;
};

struct PartialFractions {
  std::vector<PFTerm> terms;
  Poly poly_part;
};

// Rational function num / prod (x - p)^m. The denominator is kept factored;
// den() expands it (monic). Construction cancels numerator roots sitting on
// poles within the clustering radius.
class RatFun {
 public:
  RatFun() = default;
  RatFun(Poly num, std::vector<Pole> poles);
  RatFun(cplx c) : RatFun(Poly::constant(c), {}) {}  // NOLINT: constants convert

  // den is root-found; leading coefficient folds into the numerator
  static RatFun from_num_den(const Poly& num, const Poly& den);
  // c / (x - z)^k
  static RatFun pole_term(cplx z, cplx c = 1.0, int k = 1);
  static RatFun from_partial_fractions(const std::vector<PFTerm>& terms,
                                       const Poly& poly_part = {});
  static RatFun x() { return RatFun(Poly::x(), {}); }

  const Poly& num() const { return num_; }
  Poly den() const;
  const std::vector<Pole>& poles() const { return poles_; }
  int num_degree() const { return num_.degree(); }
  int den_degree() const;
  bool is_zero() const { return num_.is_zero(); }
  bool has_real_pole() const;
  bool is_L2() const;
  // deg den >= deg num + 1 and no real pole (the L1 + symmetric limit class)
  bool decays() const { return !is_zero() ? den_degree() >= num_degree() + 1 : true; }

  cplx operator()(cplx x) const;
  // lim x->inf x f(x); zero when the degree gap exceeds one
  cplx c_infinity() const;

  RatFun conj_reflect() const;
  RatFun times_x() const;
  // f / (x - z)
  RatFun over_linear(cplx z) const;
  // drop the polynomial part
  RatFun proper_part() const;

  RatFun operator-() const;
  friend RatFun operator+(const RatFun& a, const RatFun& b);
  friend RatFun operator-(const RatFun& a, const RatFun& b) { return a + (-b); }
  friend RatFun operator*(const RatFun& a, const RatFun& b);
  friend RatFun operator*(cplx s, const RatFun& f);
  friend RatFun operator*(const RatFun& f, cplx s) { return s * f; }
  // division by a rational requires root finding its numerator
  friend RatFun operator/(const RatFun& a, const RatFun& b);

 private:
  void reduce();
  Poly num_;
  std::vector<Pole> poles_;
};

inline RatFun conj_reflect(const RatFun& f) { return f.conj_reflect(); }

PartialFractions partial_fractions(const RatFun& f);
RatFun resum(const PartialFractions& pf);

cplx residue(const RatFun& f, cplx pole);

// Symmetric-limit integral over R, closed form from partial fractions.
cplx pv_integral(const RatFun& f);

// int f(t)/(t - lambda) dt
cplx cauchy_transform(const RatFun& f, cplx lambda);

// <f, g> = int f conj(g) dx
cplx inner_product(const RatFun& f, const RatFun& g);

inline double l2_norm(const RatFun& f) {
  return std::sqrt(std::max(0.0, inner_product(f, f).real()));
}

}  // namespace friedlab

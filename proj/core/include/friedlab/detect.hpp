#pragma once

#include <optional>
#include <string>
#include <vector>

#include "friedlab/model.hpp"
#include "friedlab/pwmodel.hpp"

namespace friedlab {

enum class RootClass { lower, real, upper };
enum class DefectRoute { hardy_plus, toeplitz, disjoint };

struct ClassifiedRoot {
  cplx loc;
  RootClass cls;
  int multiplicity = 1;
};

struct DefectReport {
  DefectRoute route = DefectRoute::hardy_plus;
  int N = 0, P = 0, M = 0, M0 = 0;
  int defect = 0;
  bool infinite = false;
  std::vector<ClassifiedRoot> roots;
  bool degenerate = false;  // a root fell in the real band
  std::vector<std::string> flags;
};

std::string to_string(DefectRoute r);

// psi = sum c_j/(x - z_j) simple poles in C-, phi with poles in C-
DefectReport defect_hardy_plus(const FriedrichsModel& m);

// numerator of D_+ : prod(mu - z_j) + 2 pi i sum c_j phibar(z_j) prod_{l != j}(mu - z_l)
Poly d_plus_numerator(const FriedrichsModel& m);

std::vector<RatFun> sperp_basis(const FriedrichsModel& m);

// max over a fixed probe set of |<u_mu, g>| / (|u_mu| |g|), u_mu the kernel
// elements spanning the detectable subspace
double sperp_residual(const FriedrichsModel& m, const RatFun& g);
double sperp_residual(const PiecewiseModel& m, const MixedFun& g);
// probe points used by sperp_residual
const std::vector<cplx>& sperp_probes();

struct ToeplitzReport {
  DefectReport report;
  cplx mu_alpha;
  std::vector<RatFun> sperp;  // phi / (x - conj z)^n per Blaschke zero z
};

// phi with poles in C+, a = psi phibar with poles in C+ (H1-)
ToeplitzReport toeplitz_defect(const FriedrichsModel& m, cplx alpha);

enum class Membership { interior, boundary, outside };
std::string to_string(Membership m);

struct SpectrumReport {
  Membership membership;
  bool point_spectrum = false;
  bool isolated = false;
  int lower_roots = 0;
};

// a rational with poles in C+, decaying at infinity
SpectrumReport spectrum_T_membership(const RatFun& a, cplx mu);

enum class SupportClass { full, infinite_defect, unresolved };
std::string to_string(SupportClass c);

struct DisjointReport {
  SupportClass cls;
  std::vector<std::pair<double, double>> omega_zero;  // near-zero intervals on the finer grid
  double min_abs = 0;      // min |1 - psi phibar^| over the grid
  double side_mismatch = 0;  // max |(k-i0) - (k+i0)| version difference
};

DisjointReport disjoint_support_classify(const PiecewiseFun& phi, const PiecewiseFun& psi, int grid = 400);

struct JumpReport {
  double k = 0;
  cplx jump_Minv;
  cplx jump_M;
  int rank = 0;
  bool closed_form = true;
};

JumpReport mb_jump(const FriedrichsModel& m, double k);
JumpReport mb_jump(const PiecewiseModel& m, double k);

struct JumpRankResult {
  int rank_resolvent = 0;
  int rank_M = 0;
  bool equal = false;
  bool resolved = true;
  std::vector<double> singular_values;
};

// Jump across k of [<(A_B - l)^-1 F_{i,l}, v_{j,n}>] with F = S_{mu_l,B} f_i and
// v = tilde S_{mu~_n,B*} w_j, extrapolated from l = k +- i eps.
JumpRankResult jump_rank_check(const PiecewiseModel& m, double k, const std::vector<cplx>& fs,
                               const std::vector<cplx>& ws, const std::vector<cplx>& mus,
                               const std::vector<cplx>& mu_tildes,
                               const std::vector<double>& eps = {1e-2, 1e-3, 1e-4});

// 2 pi i M(k) with M = (P+ phibar) psi - P+(psi phibar)
cplx symbol_value(const FriedrichsModel& m, double k);
cplx symbol_value(const PiecewiseModel& m, double k);

struct SymbolCurve {
  std::vector<double> t;
  std::vector<cplx> points;
};

SymbolCurve symbol_M_curve(const FriedrichsModel& m, int samples = 4000);

struct CurveMembership {
  bool on_curve = false;
  double distance = 0;
  int winding = 0;
};

// point is a candidate 1/alpha
CurveMembership curve_membership(const SymbolCurve& c, cplx point, double tol = 1e-6);

}  // namespace friedlab

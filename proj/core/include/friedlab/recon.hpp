#pragma once

#include <cstdint>
#include <functional>
#include <mutex>
#include <string>
#include <vector>

#include "friedlab/model.hpp"
#include "friedlab/pwmodel.hpp"

namespace friedlab {

// ---- Ranges of the solution operators -------------------------------------

struct RangeRecovery {
  RatFun psi;
  RatFun phi;
  // |beta from the lambda normalization - beta from the mu identity|
  double consistency = 0;
};

// u in Ran S_{lambda,B}, v in Ran tilde S_{mu,B*}; both rescaled to c = 1
// internally. Gauge: <(t-l)^-1, phi>/D(l) = 1.
RangeRecovery recover_from_ranges(const RatFun& u, const RatFun& v, cplx lambda, cplx mu);

// ---- Restricted resolvent --------------------------------------------------

// Access to (A_B - l)^-1 on the detectable subspace only: the caller gets
// range elements g_mu (c = 1) and resolvent outputs on them, nothing else.
class ResolventOracle {
 public:
  using Range = std::function<RatFun(cplx mu)>;
  using Apply = std::function<DomainElement(cplx lambda, cplx mu)>;
  struct Query {
    cplx lambda, mu;
    std::uint64_t hash;
  };

  ResolventOracle(Range range, Apply apply, std::string access_model);
  // sigma(mu) = phibar^(mu)/D(mu), the only choice keeping g_mu in S-bar
  static ResolventOracle from_model(const FriedrichsModel& m);

  RatFun range_element(cplx mu) const { return range_(mu); }
  // (A_B - lambda)^-1 g_mu
  DomainElement apply(cplx lambda, cplx mu) const;
  const std::string& access_model() const { return access_; }
  std::vector<Query> transcript() const;

 private:
  Range range_;
  Apply apply_;
  std::string access_;
  mutable std::mutex log_mu_;
  mutable std::vector<Query> log_;
};

struct RecoverySettings {
  std::vector<double> ladder{1e2, 1e3, 1e4};  // Im mu for the limits
  std::vector<cplx> lambda_grid;               // where phibar^/D and M are reported
};

struct RecoveryResult {
  RatFun psi;  // gauge: first partial-fraction coefficient (poles by (Im, Re)) is 1
  cplx B;
  bool trivial = false;  // A(l) vanished on every probe: psi = 0 branch
  std::vector<cplx> lambda;
  std::vector<cplx> phibar_over_D;  // in the gauge of psi
  std::vector<cplx> M;
  // per stage: held-out disagreement of psi; B extrapolation spread; worst
  // phibar^/D extrapolation spread
  double psi_error = 0, B_error = 0, phibar_error = 0;
  std::vector<cplx> B_ladder;  // raw B estimates along the ladder
};

RecoveryResult recover_from_restricted_resolvent(const ResolventOracle& oracle, const RecoverySettings& s);

// psi scaled so its first partial-fraction coefficient is 1
RatFun gauge_normalize(const RatFun& psi);
// min over c of |a - c b| / |a|
double gauge_quotient_error(const RatFun& a, const RatFun& b);

// ---- M from bordered resolvents --------------------------------------------

// Data for one lambda: delta = <R_B g - R_C g, f>, s = Gamma2 R_C g,
// a = tilde Gamma2 (A_C - l)^-* f
struct TwoResolventData {
  cplx B, C;
  cplx delta, s, a;
};

TwoResolventData two_resolvent_data(const FriedrichsModel& m, cplx C, cplx lambda, const RatFun& g,
                                    const RatFun& f);

struct TwoResolventM {
  cplx M;
  // delta = 0: 1 + (B - C) M_B = 0 and M_B = 1/(C - B)
  bool degenerate = false;
};

TwoResolventM m_from_two_resolvents(const TwoResolventData& d);

using PiecewiseResolvent = std::function<MixedFun(cplx lambda, const PiecewiseFun& v)>;

struct SampledM {
  std::vector<cplx> lambda;
  std::vector<cplx> M;
  std::vector<bool> skipped;
};

// v, vt >= 0 supported on an interval disjoint from the supports of phi, psi
SampledM m_from_one_bordered(const PiecewiseResolvent& oracle, const PiecewiseFun& v, const PiecewiseFun& vt,
                             const std::vector<cplx>& lambdas);

// <(A_B - l)^-1 F, v> for F = S_{mu,B} f, v = tilde S_{mu~,B*} w given
// <F, v> and tilde Gamma2 v
cplx bordered_from_m(cplx M, cplx mu, cplx mu_tilde, cplx f, cplx w, cplx lambda, cplx Fv, cplx gamma2_v);
// the same relation solved for M
cplx m_from_bordered(cplx pairing, cplx mu, cplx mu_tilde, cplx f, cplx w, cplx lambda, cplx Fv,
                     cplx gamma2_v);

}  // namespace friedlab

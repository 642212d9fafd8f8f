#include "friedlab/detect.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

namespace friedlab {

namespace {

constexpr double zero_band = 1e-10;

// order of vanishing of p at r, judged on Taylor coefficients
int zero_order(const Poly& p, cplx r, int max_order) {
  if (p.is_zero()) return max_order;
  auto c = p.taylor_at(r, max_order + 1);
  double scale = std::max(p.eval_scale(r), p.max_abs_coeff());
  int n = 0;
  while (n < static_cast<int>(c.size()) && std::abs(c[n]) <= zero_band * scale) ++n;
  return n;
}

RootClass root_class(cplx z) {
  switch (half_plane_sign(z)) {
    case -1: return RootClass::lower;
    case 0: return RootClass::real;
    default: return RootClass::upper;
  }
}

struct HardyData {
  std::vector<cplx> z, c;
  Poly Q;
  DefectReport rep;
  // lower and real Q-roots with their effective pole order in phibar/D+
  std::vector<std::pair<cplx, int>> constrained;
  std::vector<int> m0_index;
};

HardyData hardy_data(const FriedrichsModel& m) {
  for (auto& p : m.phi().poles())
    if (p.cls != PoleClass::lower) throw DomainError("defect_hardy_plus: phi must have poles in C-");
  HardyData h;
  auto pf = partial_fractions(m.psi());
  if (!pf.poly_part.is_zero()) throw DomainError("defect_hardy_plus: psi has a polynomial part");
  for (auto& t : pf.terms) {
    if (t.coeff == cplx{}) continue;
    if (t.pole.imag() >= 0) throw DomainError("defect_hardy_plus: psi must have poles in C-");
    if (t.order != 1) throw DomainError("defect_hardy_plus: repeated pole z_j");
    h.z.push_back(t.pole);
    h.c.push_back(t.coeff);
  }
  const std::size_t n = h.z.size();
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t l = j + 1; l < n; ++l)
      if (same_point(h.z[j], h.z[l])) throw DomainError("defect_hardy_plus: repeated pole z_j");
  h.Q = d_plus_numerator(m);

  auto& rep = h.rep;
  rep.route = DefectRoute::hardy_plus;
  rep.N = static_cast<int>(n);
  const RatFun& phibar = m.phibar();
  const Poly& pnum = phibar.num();

  auto near_z = [&](cplx r) {
    for (std::size_t j = 0; j < n; ++j)
      if (std::abs(r - h.z[j]) <= 1e-7 * (1 + std::abs(r))) return static_cast<int>(j);
    return -1;
  };

  if (h.Q.degree() >= 1)
    for (auto& r : poly_roots(h.Q)) {
      if (near_z(r.value) >= 0) continue;
      RootClass cls = root_class(r.value);
      rep.roots.push_back({r.value, cls, r.multiplicity});
      if (cls == RootClass::upper) continue;
      int eff = r.multiplicity - zero_order(pnum, r.value, r.multiplicity);
      if (eff <= 0) continue;
      h.constrained.emplace_back(r.value, eff);
      if (cls == RootClass::lower) {
        rep.P += eff;
      } else {
        rep.M += eff;
        rep.degenerate = true;
        rep.flags.push_back("real-band root of D+");
      }
    }

  for (std::size_t j = 0; j < n; ++j) {
    if (std::abs(phibar(h.z[j])) > zero_band) continue;
    // L_j = lim 2 pi i phibar(mu) c_j / (D+(mu)(mu - z_j)) by l'Hopital
    const int cap = 2 * static_cast<int>(n) + pnum.degree() + 2;
    int mp = zero_order(pnum, h.z[j], cap), mq = zero_order(h.Q, h.z[j], cap);
    bool degenerate;
    if (mp > mq) {
      degenerate = true;  // L = 0
    } else if (mp < mq) {
      degenerate = true;  // L infinite
    } else {
      cplx prod = 1.0;
      for (std::size_t l = 0; l < n; ++l)
        if (l != j) prod *= h.z[j] - h.z[l];
      cplx np = pnum.taylor_at(h.z[j], mp + 1)[mp];
      cplx qp = h.Q.taylor_at(h.z[j], mq + 1)[mq];
      cplx L = 2.0 * pi * I * h.c[j] * np / phibar.den()(h.z[j]) * prod / qp;
      degenerate = std::abs(L - 1.0) > 1e-8;
    }
    if (degenerate) {
      ++rep.M0;
      h.m0_index.push_back(static_cast<int>(j));
    }
  }
  rep.defect = rep.N - rep.P - rep.M - rep.M0;
  if (rep.defect < 0) {
    rep.flags.push_back("negative count");
    rep.degenerate = true;
    rep.defect = 0;
  }
  return h;
}

double probe_residual(double num, double nu, double ng) {
  if (nu == 0 || ng == 0) return 0;
  return num / (nu * ng);
}

}  // namespace

std::string to_string(DefectRoute r) {
  switch (r) {
    case DefectRoute::hardy_plus: return "HARDY_PLUS";
    case DefectRoute::toeplitz: return "TOEPLITZ";
    case DefectRoute::disjoint: return "DISJOINT";
  }
  return "?";
}

std::string to_string(Membership m) {
  switch (m) {
    case Membership::interior: return "INTERIOR";
    case Membership::boundary: return "BOUNDARY";
    case Membership::outside: return "OUTSIDE";
  }
  return "?";
}

std::string to_string(SupportClass c) {
  switch (c) {
    case SupportClass::full: return "FULL";
    case SupportClass::infinite_defect: return "INFINITE_DEFECT";
    case SupportClass::unresolved: return "UNRESOLVED";
  }
  return "?";
}

Poly d_plus_numerator(const FriedrichsModel& m) {
  auto pf = partial_fractions(m.psi());
  std::vector<cplx> z, a;
  for (auto& t : pf.terms) {
    if (t.coeff == cplx{}) continue;
    z.push_back(t.pole);
    a.push_back(t.coeff * m.phibar()(t.pole));
  }
  Poly Q = Poly::from_roots(z);
  for (std::size_t j = 0; j < z.size(); ++j) {
    std::vector<cplx> rest;
    for (std::size_t l = 0; l < z.size(); ++l)
      if (l != j) rest.push_back(z[l]);
    Q = Q + Poly::from_roots(rest, 2.0 * pi * I * a[j]);
  }
  return Q;
}

DefectReport defect_hardy_plus(const FriedrichsModel& m) { return hardy_data(m).rep; }

std::vector<RatFun> sperp_basis(const FriedrichsModel& m) {
  auto h = hardy_data(m);
  if (h.rep.defect == 0) return {};
  const long n = static_cast<long>(h.z.size());
  std::vector<Eigen::RowVectorXcd> rows;
  for (auto& [mu, p] : h.constrained)
    for (int k = 1; k <= p; ++k) {
      Eigen::RowVectorXcd r(n);
      for (long j = 0; j < n; ++j) r[j] = h.c[j] / std::pow(mu - h.z[j], k);
      rows.push_back(r);
    }
  for (int j : h.m0_index) {
    Eigen::RowVectorXcd r = Eigen::RowVectorXcd::Zero(n);
    r[j] = 1.0;
    rows.push_back(r);
  }
  Eigen::MatrixXcd null;
  if (rows.empty()) {
    null = Eigen::MatrixXcd::Identity(n, n);
  } else {
    Eigen::MatrixXcd A(static_cast<long>(rows.size()), n);
    for (long i = 0; i < A.rows(); ++i) A.row(i) = rows[i];
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A, Eigen::ComputeFullV);
    auto sv = svd.singularValues();
    long rank = 0;
    for (long i = 0; i < sv.size(); ++i)
      if (sv[i] > 1e-10 * sv[0]) ++rank;
    null = svd.matrixV().rightCols(n - rank);
  }

  std::vector<Pole> qpoles;
  for (auto& r : poly_roots(h.Q)) qpoles.push_back({r.value, r.multiplicity, classify(r.value)});
  std::vector<RatFun> out;
  for (long col = 0; col < null.cols(); ++col) {
    Poly S;
    for (long j = 0; j < n; ++j) {
      std::vector<cplx> rest;
      for (long l = 0; l < n; ++l)
        if (l != j) rest.push_back(h.z[l]);
      S = S + Poly::from_roots(rest, h.c[j] * null(j, col));
    }
    RatFun gbar = RatFun(2.0 * pi * I * S, qpoles) * m.phibar();
    RatFun g = gbar.conj_reflect();
    double nrm = l2_norm(g);
    out.push_back(nrm > 0 ? (1.0 / nrm) * g : g);
  }
  return out;
}

const std::vector<cplx>& sperp_probes() {
  static const std::vector<cplx> probes = [] {
    std::vector<cplx> p;
    for (double re : {-3.0, -1.3, -0.2, 0.7, 1.9, 3.4})
      for (double im : {0.45, 1.7, -0.45, -1.7}) p.emplace_back(re, im);
    return p;
  }();
  return probes;
}

double sperp_residual(const FriedrichsModel& m, const RatFun& g) {
  if (g.is_zero()) return 0;
  const double ng = l2_norm(g);
  double worst = 0;
  for (cplx mu : sperp_probes()) {
    RatFun u;
    try {
      u = kernel_element(m, mu);
    } catch (const SpectralError&) {
      continue;
    }
    worst = std::max(worst, probe_residual(std::abs(inner_product(u, g)), l2_norm(u), ng));
  }
  return worst;
}

double sperp_residual(const PiecewiseModel& m, const MixedFun& g) {
  if (g.is_zero()) return 0;
  const double ng = l2_norm(g);
  double worst = 0;
  for (cplx mu : sperp_probes()) {
    MixedFun u;
    try {
      u = kernel_element(m, mu);
    } catch (const SpectralError&) {
      continue;
    }
    worst = std::max(worst, probe_residual(std::abs(pairing(u, g)), l2_norm(u), ng));
  }
  return worst;
}

ToeplitzReport toeplitz_defect(const FriedrichsModel& m, cplx alpha) {
  if (alpha == cplx{}) throw DomainError("toeplitz_defect: alpha = 0");
  for (auto& p : m.phi().poles())
    if (p.cls != PoleClass::upper) throw DomainError("toeplitz_defect: phi must lie in H2-");
  RatFun a = m.psi() * m.phibar();
  if (a.is_zero()) throw DomainError("toeplitz_defect: a = psi phibar vanishes");
  for (auto& p : a.poles())
    if (p.cls != PoleClass::upper) throw DomainError("toeplitz_defect: a must lie in H1-");

  ToeplitzReport out;
  out.mu_alpha = 1.0 / (2.0 * pi * I * alpha);
  auto fa = factorize_rational(a - RatFun(out.mu_alpha));
  auto& rep = out.report;
  rep.route = DefectRoute::toeplitz;
  rep.defect = fa.blaschke.count();
  for (auto& z : fa.blaschke.zeros) {
    rep.roots.push_back({z.value, RootClass::lower, z.multiplicity});
    RatFun g = m.phi();
    for (int k = 0; k < z.multiplicity; ++k) {
      g = g.over_linear(std::conj(z.value));
      out.sperp.push_back(g);
    }
  }
  for (auto& z : fa.boundary_zeros) rep.roots.push_back({z.value, RootClass::real, z.multiplicity});
  if (fa.degenerate) {
    rep.degenerate = true;
    rep.flags.push_back("real-band zero of a - mu_alpha");
  }
  return out;
}

SpectrumReport spectrum_T_membership(const RatFun& a, cplx mu) {
  for (auto& p : a.poles())
    if (p.cls != PoleClass::upper) throw DomainError("spectrum_T_membership: a must have poles in C+");
  if (a.is_zero() || a.den_degree() <= a.num_degree())
    throw DomainError("spectrum_T_membership: a must decay at infinity");

  auto classify_point = [&](cplx w) {
    SpectrumReport r;
    Poly top = a.num() - w * a.den();
    bool on_real = false;
    if (top.degree() >= 1)
      for (auto& z : poly_roots(top)) {
        int s = half_plane_sign(z.value);
        if (s < 0) r.lower_roots += z.multiplicity;
        if (s == 0) on_real = true;
      }
    bool at_infinity = std::abs(w) <= 1e-12;  // a(inf) = 0
    if (r.lower_roots > 0)
      r.membership = Membership::interior;
    else if (on_real || at_infinity)
      r.membership = Membership::boundary;
    else
      r.membership = Membership::outside;
    r.point_spectrum = r.membership == Membership::interior || at_infinity;
    return r;
  };

  SpectrumReport r = classify_point(mu);
  if (r.membership == Membership::boundary) {
    const double rad = 1e-3 * std::max(1.0, std::abs(mu));
    r.isolated = true;
    for (int j = 0; j < 8; ++j)
      if (classify_point(mu + std::polar(rad, 2 * pi * (j + 0.5) / 8)).membership != Membership::interior)
        r.isolated = false;
  }
  return r;
}

DisjointReport disjoint_support_classify(const PiecewiseFun& phi, const PiecewiseFun& psi, int grid) {
  for (auto& p : phi.pieces())
    for (auto& q : psi.pieces())
      if (std::min(p.b, q.b) > std::max(p.a, q.a))
        throw DomainError("disjoint_support_classify: supports overlap");
  const PiecewiseFun phibar = phi.conj();
  constexpr double near_zero = 1e-8, margin = 1e-6;

  DisjointReport rep;
  rep.min_abs = INFINITY;
  bool infinite_all = true;
  for (int level = 0; level < 2; ++level) {
    const int n = grid << level;
    bool found = false;
    std::vector<std::pair<double, double>> runs;
    for (auto& piece : psi.pieces()) {
      const double h = (piece.b - piece.a) / n;
      int run = 0;
      double start = 0;
      for (int i = 0; i <= n; ++i) {
        bool z = false;
        double k = piece.a + (i + 0.5) * h;
        if (i < n) {
          cplx psik = psi(k);
          cplx vm = 1.0 - psik * boundary_value(phibar, k, Side::minus);
          cplx vp = 1.0 - psik * boundary_value(phibar, k, Side::plus);
          rep.side_mismatch = std::max(rep.side_mismatch, std::abs(vm - vp));
          rep.min_abs = std::min(rep.min_abs, std::abs(vm));
          z = std::abs(vm) < near_zero;
        }
        if (z) {
          if (run == 0) start = k;
          ++run;
        } else if (run > 0) {
          if (run >= 3) {  // span >= 2 grid spacings
            found = true;
            runs.emplace_back(start - 0.5 * h, k - 0.5 * h);
          }
          run = 0;
        }
      }
    }
    infinite_all = infinite_all && found;
    if (level == 1) rep.omega_zero = runs;
  }
  if (rep.side_mismatch > 1e-8) throw DomainError("disjoint_support_classify: one-sided values disagree");
  if (infinite_all)
    rep.cls = SupportClass::infinite_defect;
  else if (rep.min_abs > margin)
    rep.cls = SupportClass::full;
  else
    rep.cls = SupportClass::unresolved;
  return rep;
}

namespace {

JumpReport finish_jump(double k, cplx up, cplx dn, bool closed) {
  JumpReport r;
  r.k = k;
  r.closed_form = closed;
  r.jump_Minv = up - dn;
  if (up == cplx{} || dn == cplx{}) {
    r.jump_M = cplx(INFINITY, 0);
    r.rank = 1;
    return r;
  }
  cplx Mu = 1.0 / up, Md = 1.0 / dn;
  r.jump_M = Mu - Md;
  r.rank = std::abs(r.jump_M) > 1e-9 * (1 + std::abs(Mu) + std::abs(Md)) ? 1 : 0;
  return r;
}

}  // namespace

JumpReport mb_jump(const FriedrichsModel& m, double k) {
  auto side = [&](Side s) {
    double sg = s == Side::plus ? 1.0 : -1.0;
    cplx D = 1.0 + boundary_value(m.psi() * m.phibar(), k, s);
    if (std::abs(D) < tol::d_zero) throw SpectralError(SpectralError::Kind::d_zero, "D-zero on the boundary");
    return sg * pi * I - boundary_value(m.psi(), k, s) * boundary_value(m.phibar(), k, s) / D - m.B();
  };
  return finish_jump(k, side(Side::plus), side(Side::minus), true);
}

JumpReport mb_jump(const PiecewiseModel& m, double k) {
  return finish_jump(k, minv_boundary(m, k, Side::plus), minv_boundary(m, k, Side::minus), false);
}

JumpRankResult jump_rank_check(const PiecewiseModel& m, double k, const std::vector<cplx>& fs,
                               const std::vector<cplx>& ws, const std::vector<cplx>& mus,
                               const std::vector<cplx>& mu_tildes, const std::vector<double>& eps) {
  if (eps.size() != 3) throw DomainError("jump_rank_check: the eps ladder needs three values");
  JumpRankResult out;
  const auto tm = tilde_model(m);
  std::vector<MixedFun> F, V;
  for (cplx mu : mus) F.push_back(solution_operator(m, mu, 1.0));
  for (cplx mt : mu_tildes) V.push_back(solution_operator(tm, mt, 1.0));
  const std::size_t nl = mus.size(), nv = mu_tildes.size();

  // J[e][l*nv + v] = P(k + i eps) - P(k - i eps)
  std::vector<std::vector<cplx>> J(3, std::vector<cplx>(nl * nv));
  double scale = 0;
  for (std::size_t e = 0; e < 3; ++e)
    for (double s : {1.0, -1.0}) {
      cplx lam(k, s * eps[e]);
      for (std::size_t l = 0; l < nl; ++l) {
        MixedFun R = apply_resolvent(m, lam, F[l]);
        for (std::size_t v = 0; v < nv; ++v) {
          cplx p = pairing(R, V[v]);
          scale = std::max(scale, std::abs(p));
          J[e][l * nv + v] += s * p;
        }
      }
    }

  // quadratic Neville extrapolation to eps = 0; linear from the two smallest as a check
  const double e0 = eps[0], e1 = eps[1], e2 = eps[2];
  std::vector<cplx> jump(nl * nv);
  double spread = 0;
  for (std::size_t q = 0; q < jump.size(); ++q) {
    cplx y0 = J[0][q], y1 = J[1][q], y2 = J[2][q];
    cplx quad = y0 * (e1 * e2) / ((e0 - e1) * (e0 - e2)) + y1 * (e0 * e2) / ((e1 - e0) * (e1 - e2)) +
                y2 * (e0 * e1) / ((e2 - e0) * (e2 - e1));
    cplx lin = (y1 * e2 - y2 * e1) / (e2 - e1);
    spread = std::max(spread, std::abs(quad - lin));
    if (std::abs(quad - lin) > 1e-4 * (1 + scale)) out.resolved = false;
    jump[q] = quad;
  }

  const long rows = static_cast<long>(fs.size() * nl), cols = static_cast<long>(ws.size() * nv);
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(rows, cols);
  double fw = 0;
  for (std::size_t i = 0; i < fs.size(); ++i)
    for (std::size_t l = 0; l < nl; ++l)
      for (std::size_t j = 0; j < ws.size(); ++j)
        for (std::size_t v = 0; v < nv; ++v) {
          A(static_cast<long>(i * nl + l), static_cast<long>(j * nv + v)) =
              fs[i] * std::conj(ws[j]) * jump[l * nv + v];
          fw = std::max(fw, std::abs(fs[i] * ws[j]));
        }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A);
  auto sv = svd.singularValues();
  // singular values inside the extrapolation uncertainty are noise
  const double abs_t = std::max(1e-6 * (1 + scale), 10 * spread * std::sqrt(double(A.size()))) * std::max(fw, 1e-300);
  for (long i = 0; i < sv.size(); ++i) {
    out.singular_values.push_back(sv[i]);
    if (sv[i] > std::max(1e-6 * sv[0], abs_t)) ++out.rank_resolvent;
  }
  bool nontrivial = fw > 0;
  out.rank_M = nontrivial ? mb_jump(m, k).rank : 0;
  out.equal = out.resolved && out.rank_M == out.rank_resolvent;
  return out;
}

cplx symbol_value(const FriedrichsModel& m, double k) {
  return boundary_value(m.phibar(), k, Side::plus) * m.psi()(k) -
         boundary_value(m.psi() * m.phibar(), k, Side::plus);
}

cplx symbol_value(const PiecewiseModel& m, double k) {
  return m.phibar_bv(k, Side::plus) * m.psi()(k) - m.product_bv(k, Side::plus);
}

SymbolCurve symbol_M_curve(const FriedrichsModel& m, int samples) {
  SymbolCurve c;
  for (int i = 1; i < samples; ++i) {
    double th = -0.5 * pi + pi * i / samples;
    double t = std::tan(th);
    c.t.push_back(t);
    c.points.push_back(symbol_value(m, t));
  }
  return c;
}

CurveMembership curve_membership(const SymbolCurve& c, cplx point, double tol) {
  CurveMembership r;
  r.distance = INFINITY;
  const std::size_t n = c.points.size();
  double turn = 0;
  for (std::size_t i = 0; i < n; ++i) {
    cplx a = c.points[i], b = c.points[(i + 1) % n];
    cplx d = b - a;
    double s = std::norm(d) > 0 ? std::clamp(((point - a) * std::conj(d)).real() / std::norm(d), 0.0, 1.0) : 0.0;
    r.distance = std::min(r.distance, std::abs(a + s * d - point));
    turn += std::arg((b - point) / (a - point));
  }
  r.on_curve = r.distance <= tol;
  r.winding = static_cast<int>(std::lround(turn / (2 * pi)));
  return r;
}

}  // namespace friedlab

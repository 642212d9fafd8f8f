#include "friedlab/poly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace friedlab {

namespace {
constexpr double eps = std::numeric_limits<double>::epsilon();
}

Poly::Poly(std::vector<cplx> coeffs) : c_(std::move(coeffs)) { trim(); }

void Poly::trim() {
  while (!c_.empty() && c_.back() == cplx{}) c_.pop_back();
}

Poly Poly::from_roots(const std::vector<cplx>& roots, cplx leading) {
  std::vector<cplx> c{leading};
  for (cplx r : roots) {
    c.push_back(0.0);
    for (std::size_t k = c.size() - 1; k > 0; --k) c[k] = c[k - 1] - r * c[k];
    c[0] = -r * c[0];
  }
  return Poly(std::move(c));
}

double Poly::max_abs_coeff() const {
  double m = 0;
  for (auto& z : c_) m = std::max(m, std::abs(z));
  return m;
}

cplx Poly::operator()(cplx x) const {
  cplx s{};
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) s = s * x + *it;
  return s;
}

double Poly::eval_scale(cplx x) const {
  double ax = std::abs(x), s = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) s = s * ax + std::abs(*it);
  return s;
}

Poly Poly::derivative() const {
  if (c_.size() < 2) return {};
  std::vector<cplx> d(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = static_cast<double>(k) * c_[k];
  return Poly(std::move(d));
}

Poly Poly::conj() const {
  std::vector<cplx> d(c_.size());
  for (std::size_t k = 0; k < c_.size(); ++k) d[k] = std::conj(c_[k]);
  return Poly(std::move(d));
}

std::vector<cplx> Poly::taylor_at(cplx p0, int n) const {
  std::vector<cplx> w = c_;
  const int deg = degree();
  if (n < 0 || n > deg + 1) n = deg + 1;
  std::vector<cplx> out(std::max(n, 0));
  // repeated Horner: after pass j, w[j] holds the j-th Taylor coefficient
  for (int j = 0; j < n; ++j) {
    for (int k = deg - 1; k >= j; --k) w[k] += p0 * w[k + 1];
    out[j] = w[j];
  }
  return out;
}

Poly Poly::deflate(cplx r, cplx* remainder) const {
  if (c_.empty()) {
    if (remainder) *remainder = 0;
    return {};
  }
  const int n = degree();
  std::vector<cplx> q(std::max(n, 0));
  cplx acc = c_[n];
  for (int k = n - 1; k >= 0; --k) {
    q[k] = acc;
    acc = c_[k] + r * acc;
  }
  if (remainder) *remainder = acc;
  return Poly(std::move(q));
}

std::pair<Poly, Poly> Poly::divmod(const Poly& d) const {
  if (d.is_zero()) throw DomainError("polynomial division by zero");
  if (degree() < d.degree()) return {Poly{}, *this};
  std::vector<cplx> r = c_;
  const int nd = d.degree(), nq = degree() - nd;
  std::vector<cplx> q(nq + 1);
  for (int k = nq; k >= 0; --k) {
    q[k] = r[k + nd] / d.c_[nd];
    for (int j = 0; j <= nd; ++j) r[k + j] -= q[k] * d.c_[j];
  }
  r.resize(nd);
  return {Poly(std::move(q)), Poly(std::move(r))};
}

Poly Poly::operator-() const {
  Poly p = *this;
  for (auto& z : p.c_) z = -z;
  return p;
}

Poly& Poly::operator*=(cplx s) {
  for (auto& z : c_) z *= s;
  trim();
  return *this;
}

// Sum with cancellation-aware trimming of the top coefficients: a trailing
// coefficient at the rounding level of its summands is taken as exact zero.
Poly operator+(const Poly& a, const Poly& b) {
  const std::size_t n = std::max(a.c_.size(), b.c_.size());
  std::vector<cplx> c(n);
  std::vector<double> mag(n);
  for (std::size_t k = 0; k < n; ++k) {
    cplx x = k < a.c_.size() ? a.c_[k] : cplx{};
    cplx y = k < b.c_.size() ? b.c_[k] : cplx{};
    c[k] = x + y;
    mag[k] = std::abs(x) + std::abs(y);
  }
  while (!c.empty() && std::abs(c.back()) <= 8 * eps * mag[c.size() - 1]) c.pop_back();
  return Poly(std::move(c));
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<cplx> c(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  return Poly(std::move(c));
}

Poly operator*(cplx s, const Poly& p) {
  Poly q = p;
  q *= s;
  return q;
}

Poly poly_from_roots(const std::vector<Root>& roots, cplx lead) {
  std::vector<cplx> flat;
  for (auto& r : roots)
    for (int k = 0; k < r.multiplicity; ++k) flat.push_back(r.value);
  return Poly::from_roots(flat, lead);
}

namespace {

std::vector<cplx> aberth(const Poly& p) {
  const int n = p.degree();
  const Poly dp = p.derivative();
  const cplx lead = p.leading();
  const cplx center = -p.coeff(n - 1) / (static_cast<double>(n) * lead);
  auto shifted = p.taylor_at(center);
  double r0 = 0;
  for (int k = 0; k < n; ++k) {
    double a = std::abs(shifted[k] / lead);
    if (a > 0) r0 = std::max(r0, std::pow(a, 1.0 / (n - k)));
  }
  if (r0 == 0) r0 = 1;

  std::vector<cplx> z(n);
  for (int k = 0; k < n; ++k) {
    double ang = 2 * pi * k / n + 0.4;
    z[k] = center + r0 * (1.0 + 0.01 * k) * std::polar(1.0, ang);
  }

  std::vector<bool> done(n, false);
  const int budget = 200 * n;
  for (int it = 0; it < budget; ++it) {
    bool all = true;
    for (int i = 0; i < n; ++i) {
      if (done[i]) continue;
      cplx pv = p(z[i]);
      if (pv == cplx{}) {
        done[i] = true;
        continue;
      }
      cplx ratio = pv / dp(z[i]);
      cplx s{};
      for (int j = 0; j < n; ++j)
        if (j != i) s += 1.0 / (z[i] - z[j]);
      cplx w = ratio / (1.0 - ratio * s);
      if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) w = ratio;
      z[i] -= w;
      if (std::abs(w) < tol::root_step * (1 + std::abs(z[i])))
        done[i] = true;
      else
        all = false;
    }
    if (all) break;
  }

  // Multiple roots stall above the step threshold; accept them on residual.
  const double mc = p.max_abs_coeff();
  double worst = 0;
  for (int i = 0; i < n; ++i) {
    double bound = tol::root_residual * mc * std::pow(1 + std::abs(z[i]), n);
    double rel = std::abs(p(z[i])) / bound;
    worst = std::max(worst, rel);
  }
  if (worst > 1.0)
    throw ConvergenceError("poly_roots: Aberth iteration did not converge",
                           worst * tol::root_residual);
  return z;
}

struct Cluster {
  std::vector<cplx> members;
  cplx centroid() const {
    cplx s{};
    for (auto& m : members) s += m;
    return s / static_cast<double>(members.size());
  }
};

// |t_j| small against the rounding scale for every j < m means the factor
// (x-c)^m reproduces p near c.
bool is_multiple_root(const Poly& p, cplx c, int m) {
  auto t = p.taylor_at(c, m);
  std::vector<cplx> absc;
  for (auto& z : p.coeffs()) absc.push_back(std::abs(z));
  auto s = Poly(absc).taylor_at(std::abs(c), m);
  for (int j = 0; j < m; ++j)
    if (std::abs(t[j]) > 1e-11 * std::abs(s[j])) return false;
  return true;
}

}  // namespace

std::vector<Root> poly_roots(const Poly& p) {
  if (p.is_zero()) throw DomainError("poly_roots: zero polynomial");
  if (p.degree() > tol::max_degree) throw DomainError("poly_roots: degree above 64");
  const int n = p.degree();
  if (n == 0) return {};
  if (n == 1) return {{-p.coeff(0) / p.coeff(1), 1}};

  auto z = aberth(p);

  // single-linkage inside the clustering radius
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (same_point(z[i], z[j])) parent[find(i)] = find(j);
  std::vector<Cluster> cl;
  {
    std::vector<int> idx(n, -1);
    for (int i = 0; i < n; ++i) {
      int r = find(i);
      if (idx[r] < 0) {
        idx[r] = static_cast<int>(cl.size());
        cl.emplace_back();
      }
      cl[idx[r]].members.push_back(z[i]);
    }
  }

  // A double root found in floating point splits by ~sqrt(eps), which can
  // exceed the clustering radius. Merge nearby clusters when the merged
  // factor is certified by the Taylor test.
  bool merged = true;
  while (merged) {
    merged = false;
    for (std::size_t a = 0; a < cl.size() && !merged; ++a) {
      for (std::size_t b = a + 1; b < cl.size() && !merged; ++b) {
        cplx ca = cl[a].centroid(), cb = cl[b].centroid();
        if (std::abs(ca - cb) > 1e-5 * (1 + std::abs(ca))) continue;
        Cluster u = cl[a];
        u.members.insert(u.members.end(), cl[b].members.begin(), cl[b].members.end());
        if (is_multiple_root(p, u.centroid(), static_cast<int>(u.members.size()))) {
          cl[a] = u;
          cl.erase(cl.begin() + b);
          merged = true;
        }
      }
    }
  }

  std::vector<Root> out;
  for (auto& c : cl) {
    int m = static_cast<int>(c.members.size());
    cplx r = c.centroid();
    if (m > 1) {
      // Newton on p^(m-1), which has a simple root there
      Poly q = p;
      for (int k = 0; k < m - 1; ++k) q = q.derivative();
      Poly dq = q.derivative();
      for (int it = 0; it < 5; ++it) {
        cplx d = dq(r);
        if (d == cplx{}) break;
        cplx step = q(r) / d;
        if (!(std::abs(step) < 1e-6 * (1 + std::abs(r)))) break;
        r -= step;
      }
    }
    out.push_back({r, m});
  }
  std::sort(out.begin(), out.end(), [](const Root& a, const Root& b) {
    if (a.value.imag() != b.value.imag()) return a.value.imag() < b.value.imag();
    return a.value.real() < b.value.real();
  });
  return out;
}

}  // namespace friedlab

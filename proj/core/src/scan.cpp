#include "friedlab/scan.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <deque>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <sstream>
#include <thread>

namespace friedlab {

namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

int thread_count(int requested) {
  if (requested > 0) return requested;
  unsigned h = std::thread::hardware_concurrency();
  return h == 0 ? 1 : static_cast<int>(h);
}

// runs body(i) for i in [0, n) on the given number of threads
template <class F>
void parallel_for(std::size_t n, int threads, F body) {
  threads = std::max(1, std::min<int>(threads, static_cast<int>(std::max<std::size_t>(n, 1))));
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) body(i);
    });
  for (auto& th : pool) th.join();
}

int count_lower(const DefectReport& r) {
  int n = 0;
  for (auto& c : r.roots)
    if (c.cls == RootClass::lower) n += c.multiplicity;
  return n;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

RatFun draw_ratfun(std::mt19937_64& rng, int npoles, double min_dist) {
  std::uniform_real_distribution<double> re(-2.0, 2.0), im(min_dist, 2.0), co(-1.0, 1.0);
  std::bernoulli_distribution up(0.5);
  std::vector<Pole> poles;
  for (int k = 0; k < npoles; ++k) {
    cplx z(re(rng), (up(rng) ? 1 : -1) * im(rng));
    poles.push_back({z, 1, classify(z)});
  }
  std::vector<cplx> c;
  for (int k = 0; k < npoles; ++k) c.emplace_back(co(rng), co(rng));
  return RatFun(Poly(c), poles);
}

cplx draw_offaxis(std::mt19937_64& rng, double min_im) {
  std::uniform_real_distribution<double> re(-2.0, 2.0), im(min_im, 2.0);
  std::bernoulli_distribution up(0.5);
  return {re(rng), (up(rng) ? 1 : -1) * im(rng)};
}

}  // namespace

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

// ---- grids -------------------------------------------------------------------

std::string to_string(Plane p) {
  switch (p) {
    case Plane::alpha: return "ALPHA";
    case Plane::mu: return "MU";
    case Plane::mu_hat: return "MU_HAT";
    case Plane::inv_alpha: return "INV_ALPHA";
  }
  return "?";
}

std::optional<Plane> parse_plane(const std::string& s) {
  for (auto p : {Plane::alpha, Plane::mu, Plane::mu_hat, Plane::inv_alpha})
    if (to_string(p) == s) return p;
  return std::nullopt;
}

cplx GridSpec::node(int i, int j) const { return {x0 + i * dx(), y0 + j * dy()}; }

GridSpec parse_grid(const std::string& s) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size()) throw DomainError("");
    } catch (const std::exception&) {
      throw DomainError("grid: bad number '" + item + "'");
    }
  }
  if (v.size() != 6) throw DomainError("grid: expected x0,x1,y0,y1,nx,ny");
  GridSpec g{v[0], v[1], v[2], v[3], static_cast<int>(v[4]), static_cast<int>(v[5])};
  if (g.nx < 1 || g.ny < 1 || g.nx != v[4] || g.ny != v[5]) throw DomainError("grid: nx, ny must be positive integers");
  return g;
}

std::optional<cplx> alpha_of(const FriedrichsModel& base, Plane plane, cplx p) {
  switch (plane) {
    case Plane::alpha: return p;
    case Plane::mu:
      if (p == cplx{}) return std::nullopt;
      return 1.0 / (2.0 * pi * I * p);
    case Plane::inv_alpha:
      if (p == cplx{}) return std::nullopt;
      return 1.0 / p;
    case Plane::mu_hat: {
      const auto& wp = base.phibar().poles();
      if (wp.size() != 1 || wp[0].order != 1) throw DomainError("MU_HAT plane needs phibar with one simple pole");
      cplx prod = 1.0;
      for (auto& t : partial_fractions(base.psi()).terms) {
        if (t.order != 1) throw DomainError("MU_HAT plane needs simple poles in psi");
        prod *= t.pole - wp[0].loc;
      }
      return p * prod / (2.0 * pi * I);
    }
  }
  return std::nullopt;
}

ScanCell classify_point(const FriedrichsModel& base, Plane plane, cplx point) {
  ScanCell c;
  c.point = point;
  try {
    auto a = alpha_of(base, plane, point);
    if (!a) {
      c.flag = "UNRESOLVED";
      return c;
    }
    auto rep = defect_hardy_plus(base.with_psi_scaled(*a));
    c.lower_roots = count_lower(rep);
    if (rep.infinite) {
      c.flag = "INFINITE";
    } else if (rep.degenerate) {
      c.flag = "UNRESOLVED";
    } else {
      c.defect = rep.defect;
    }
  } catch (const Error&) {
    c.flag = "UNRESOLVED";
  }
  return c;
}

ScanGrid scan_defect_grid(const FriedrichsModel& base, Plane plane, const GridSpec& grid, int threads) {
  ScanGrid g;
  g.plane = plane;
  g.grid = grid;
  const std::size_t n = static_cast<std::size_t>(grid.nx) * grid.ny;
  g.cells.resize(n);
  parallel_for(n, thread_count(threads), [&](std::size_t k) {
    int i = static_cast<int>(k % grid.nx), j = static_cast<int>(k / grid.nx);
    g.cells[k] = classify_point(base, plane, grid.node(i, j));
  });
  return g;
}

std::string scan_csv(const ScanGrid& g) {
  std::string out = "re,im,defect,flag\n";
  for (auto& c : g.cells) {
    out += fmt(c.point.real()) + "," + fmt(c.point.imag()) + ",";
    if (c.defect >= 0) out += std::to_string(c.defect);
    out += "," + c.flag + "\n";
  }
  return out;
}

cplx bisect_defect_boundary(const FriedrichsModel& base, Plane plane, cplx a, cplx b, double tol) {
  auto da = classify_point(base, plane, a), db = classify_point(base, plane, b);
  if (da.defect < 0 || db.defect < 0 || da.defect == db.defect)
    throw DomainError("bisect_defect_boundary: endpoints need distinct resolved defects");
  while (std::abs(b - a) > tol) {
    cplx m = 0.5 * (a + b);
    auto dm = classify_point(base, plane, m);
    if (dm.defect < 0) return m;  // landed in the real-root band
    if (dm.defect == da.defect)
      a = m;
    else
      b = m;
  }
  return 0.5 * (a + b);
}

// ---- curve ---------------------------------------------------------------------

cplx XiData::operator()(cplx l) const {
  cplx s = 0;
  for (std::size_t k = 0; k < z.size(); ++k) s += a[k] / (z[k] - l);
  return s;
}

cplx XiData::derivative(cplx l) const {
  cplx s = 0;
  for (std::size_t k = 0; k < z.size(); ++k) s += a[k] / ((z[k] - l) * (z[k] - l));
  return s;
}

XiData xi_data(const FriedrichsModel& base) {
  XiData x;
  for (auto& t : partial_fractions(base.psi()).terms) {
    if (t.coeff == cplx{}) continue;
    if (t.order != 1 || classify(t.pole) != PoleClass::lower)
      throw DomainError("real-root curve: psi needs simple poles in C-");
    x.z.push_back(t.pole);
    x.a.push_back(t.coeff * base.phibar()(t.pole));
  }
  if (x.z.empty()) throw DomainError("real-root curve: psi is zero");
  if (partial_fractions(base.psi()).poly_part.degree() >= 0) throw DomainError("real-root curve: psi not proper");
  return x;
}

int Components::label_at(cplx p) const {
  if (grid.nx < 2 || grid.ny < 2) return -2;
  long i = std::lround((p.real() - grid.x0) / grid.dx()), j = std::lround((p.imag() - grid.y0) / grid.dy());
  if (i < 0 || j < 0 || i >= grid.nx || j >= grid.ny) return -2;
  return label[static_cast<std::size_t>(j) * grid.nx + i];
}

namespace {

Components label_components(const GridSpec& g, const std::vector<cplx>& pts) {
  Components c;
  c.grid = g;
  const int nx = g.nx, ny = g.ny;
  const double dx = g.dx(), dy = g.dy();
  std::vector<int> lab(static_cast<std::size_t>(nx) * ny, -3);  // -3 unvisited
  auto mark = [&](cplx p) {
    long i = std::lround((p.real() - g.x0) / dx), j = std::lround((p.imag() - g.y0) / dy);
    if (i >= 0 && j >= 0 && i < nx && j < ny) lab[static_cast<std::size_t>(j) * nx + i] = -1;
  };
  const double h = 0.5 * std::min(dx, dy);
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    int steps = static_cast<int>(std::ceil(std::abs(pts[k + 1] - pts[k]) / h));
    steps = std::clamp(steps, 1, 100000);
    for (int s = 0; s <= steps; ++s) mark(pts[k] + (pts[k + 1] - pts[k]) * (double(s) / steps));
  }
  if (pts.size() == 1) mark(pts[0]);

  // distance (4-steps) to the band, for the probes
  std::vector<int> dist(lab.size(), std::numeric_limits<int>::max());
  std::deque<std::size_t> q;
  for (std::size_t k = 0; k < lab.size(); ++k)
    if (lab[k] == -1) {
      dist[k] = 0;
      q.push_back(k);
    }
  auto nbrs = [&](std::size_t k, auto&& f) {
    int i = static_cast<int>(k % nx), j = static_cast<int>(k / nx);
    if (i > 0) f(k - 1);
    if (i + 1 < nx) f(k + 1);
    if (j > 0) f(k - nx);
    if (j + 1 < ny) f(k + nx);
  };
  while (!q.empty()) {
    auto k = q.front();
    q.pop_front();
    nbrs(k, [&](std::size_t m) {
      if (dist[m] == std::numeric_limits<int>::max()) {
        dist[m] = dist[k] + 1;
        q.push_back(m);
      }
    });
  }

  for (std::size_t s = 0; s < lab.size(); ++s) {
    if (lab[s] != -3) continue;
    const int id = c.count++;
    int size = 0;
    bool border = false;
    std::size_t best = s;
    lab[s] = id;
    q.push_back(s);
    while (!q.empty()) {
      auto k = q.front();
      q.pop_front();
      ++size;
      int i = static_cast<int>(k % nx), j = static_cast<int>(k / nx);
      if (i == 0 || j == 0 || i == nx - 1 || j == ny - 1) border = true;
      if (dist[k] > dist[best] || (dist[k] == dist[best] && k < best)) best = k;
      nbrs(k, [&](std::size_t m) {
        if (lab[m] == -3) {
          lab[m] = id;
          q.push_back(m);
        }
      });
    }
    c.size.push_back(size);
    c.unbounded.push_back(border);
    c.probe.push_back(g.node(static_cast<int>(best % nx), static_cast<int>(best / nx)));
  }
  c.label = std::move(lab);
  return c;
}

// p(t) - p(s) = 0 by Newton in (t, s)
bool refine_intersection(const XiData& xi, double& t, double& s) {
  for (int it = 0; it < 40; ++it) {
    cplx F = 2.0 * pi * I * (xi(t) - xi(s));
    if (std::abs(F) < 1e-14 * (1 + std::abs(2.0 * pi * I * xi(t)))) return std::abs(t - s) > 1e-6;
    cplx pt = 2.0 * pi * I * xi.derivative(t), ps = -2.0 * pi * I * xi.derivative(s);
    Eigen::Matrix2d J;
    J << pt.real(), ps.real(), pt.imag(), ps.imag();
    Eigen::Vector2d d = J.fullPivLu().solve(Eigen::Vector2d(-F.real(), -F.imag()));
    if (!d.allFinite()) return false;
    t += d[0];
    s += d[1];
  }
  return false;
}

bool segments_cross(cplx a, cplx b, cplx c, cplx d, double& u, double& v) {
  cplx r = b - a, s = d - c;
  double den = r.real() * s.imag() - r.imag() * s.real();
  if (std::abs(den) < 1e-300) return false;
  cplx w = c - a;
  u = (w.real() * s.imag() - w.imag() * s.real()) / den;
  v = (w.real() * r.imag() - w.imag() * r.real()) / den;
  return u >= 0 && u < 1 && v >= 0 && v < 1;
}

}  // namespace

CurveTrace trace_real_root_curve(const FriedrichsModel& base, const CurveSettings& s) {
  const XiData xi = xi_data(base);
  auto point = [&](double theta) {
    if (std::abs(theta) >= pi / 2) return cplx{};
    return 2.0 * pi * I * xi(std::tan(theta));
  };

  // coarse pass fixes the reference box
  const int n0 = std::max(8, s.initial_samples);
  std::vector<double> th;
  th.push_back(-pi / 2);
  for (int i = 0; i < n0; ++i) th.push_back(-pi / 2 + pi * (i + 0.5) / n0);
  th.push_back(pi / 2);

  GridSpec ref = s.reference;
  if (ref.nx < 2 || ref.ny < 2) {
    double xa = 0, xb = 0, ya = 0, yb = 0;
    for (double t : th) {
      cplx p = point(t);
      xa = std::min(xa, p.real());
      xb = std::max(xb, p.real());
      ya = std::min(ya, p.imag());
      yb = std::max(yb, p.imag());
    }
    double ext = std::max(xb - xa, yb - ya), mx = 0.25 * ext;
    ref = {xa - mx, xb + mx, ya - mx, yb + mx, s.reference_n, s.reference_n};
  }
  const double step = s.max_step > 0 ? s.max_step : 0.2 * std::min(ref.dx(), ref.dy());

  CurveTrace c;
  std::vector<double> thetas;
  std::vector<int> branch;
  int br = 0;
  std::function<void(double, double, cplx, cplx, int)> fill = [&](double a, double b, cplx pa, cplx pb, int depth) {
    if (std::abs(pb - pa) <= step) return;
    if (depth >= s.max_depth) {
      ++br;  // unresolved jump: start a new branch at b
      return;
    }
    double m = 0.5 * (a + b);
    cplx pm = point(m);
    fill(a, m, pa, pm, depth + 1);
    thetas.push_back(m);
    branch.push_back(br);
    fill(m, b, pm, pb, depth + 1);
  };
  thetas.push_back(th[0]);
  branch.push_back(br);
  for (std::size_t k = 0; k + 1 < th.size(); ++k) {
    fill(th[k], th[k + 1], point(th[k]), point(th[k + 1]), 0);
    thetas.push_back(th[k + 1]);
    branch.push_back(br);
  }
  c.branches = br + 1;
  c.branch = branch;
  for (double t : thetas) {
    c.t.push_back(std::abs(t) >= pi / 2 ? std::copysign(std::numeric_limits<double>::infinity(), t) : std::tan(t));
    c.points.push_back(point(t));
  }

  // re-certify: D+ for alpha = 1/p has a root at t
  for (std::size_t k = 0; k < c.t.size(); ++k) {
    if (!std::isfinite(c.t[k]) || std::abs(c.points[k]) < 1e-12) {
      ++c.uncertified;
      continue;
    }
    auto roots = poly_roots(d_plus_numerator(base.with_psi_scaled(1.0 / c.points[k])));
    double best = std::numeric_limits<double>::infinity(), im = 0;
    for (auto& r : roots)
      if (std::abs(r.value - c.t[k]) < best) {
        best = std::abs(r.value - c.t[k]);
        im = std::abs(r.value.imag());
      }
    c.certificate = std::max(c.certificate, im);
  }

  // covering number at a generic parameter
  {
    const double tg = 0.6180339887498949;
    cplx pg = point(std::atan(tg));
    c.covering = 0;
    for (auto& r : poly_roots(d_plus_numerator(base.with_psi_scaled(1.0 / pg))))
      if (std::abs(r.value.imag()) < 1e-7 * (1 + std::abs(r.value))) c.covering += r.multiplicity;
  }

  if (c.covering == 1) {
    // bucket segments by reference cell, then refine crossings by Newton
    const double cw = std::max(ref.dx(), ref.dy()) * 4;
    std::map<std::pair<long, long>, std::vector<std::size_t>> buckets;
    const std::size_t ns = c.points.size() - 1;
    for (std::size_t k = 0; k < ns; ++k) {
      cplx a = c.points[k], b = c.points[k + 1];
      long i0 = std::lround(std::floor(std::min(a.real(), b.real()) / cw)),
           i1 = std::lround(std::floor(std::max(a.real(), b.real()) / cw));
      long j0 = std::lround(std::floor(std::min(a.imag(), b.imag()) / cw)),
           j1 = std::lround(std::floor(std::max(a.imag(), b.imag()) / cw));
      for (long i = i0; i <= i1; ++i)
        for (long j = j0; j <= j1; ++j) buckets[{i, j}].push_back(k);
    }
    std::vector<std::pair<std::size_t, std::size_t>> hits;
    for (auto& [key, segs] : buckets)
      for (std::size_t x = 0; x < segs.size(); ++x)
        for (std::size_t y = x + 1; y < segs.size(); ++y) {
          std::size_t p = segs[x], q = segs[y];
          if (q <= p + 1 || (p == 0 && q == ns - 1)) continue;
          double u, v;
          if (segments_cross(c.points[p], c.points[p + 1], c.points[q], c.points[q + 1], u, v)) hits.emplace_back(p, q);
        }
    std::sort(hits.begin(), hits.end());
    hits.erase(std::unique(hits.begin(), hits.end()), hits.end());
    const double zero_tol = 1e-8;
    for (auto [p, q] : hits) {
      if (!std::isfinite(c.t[p]) || !std::isfinite(c.t[p + 1]) || !std::isfinite(c.t[q]) ||
          !std::isfinite(c.t[q + 1]))
        continue;  // the segments touching t = +-inf meet at 0
      double t = 0.5 * (c.t[p] + c.t[p + 1]), u = 0.5 * (c.t[q] + c.t[q + 1]);
      if (!refine_intersection(xi, t, u)) continue;
      cplx z = 2.0 * pi * I * xi(t);
      if (std::abs(z) < zero_tol) continue;
      bool dup = false;
      for (auto& w : c.self_intersections) dup = dup || std::abs(w - z) < 1e-7 * (1 + std::abs(z));
      if (!dup) c.self_intersections.push_back(z);
    }
    std::sort(c.self_intersections.begin(), c.self_intersections.end(), [](cplx a, cplx b) {
      return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
  }

  c.components = label_components(ref, c.points);
  return c;
}

std::string curve_csv(const CurveTrace& c) {
  std::string out = "t,re,im,branch\n";
  for (std::size_t k = 0; k < c.t.size(); ++k)
    out += fmt(c.t[k]) + "," + fmt(c.points[k].real()) + "," + fmt(c.points[k].imag()) + "," +
           std::to_string(c.branch[k]) + "\n";
  return out;
}

// ---- four-pole petal construction ------------------------------------------------

Figure2Model figure2_model(const Figure2Params& p) {
  const std::size_t N = p.z.size();
  if (N < 1 || p.lambda.size() != N - 1) throw DomainError("figure2: need N-1 real zeros for N poles");
  Eigen::MatrixXcd Z(N - 1, N - 1);
  Eigen::VectorXcd rhs(N - 1);
  for (std::size_t j = 0; j + 1 < N; ++j) {
    for (std::size_t k = 0; k + 1 < N; ++k) Z(j, k) = 1.0 / (p.z[k] - p.lambda[j]);
    rhs[j] = -p.a_last / (p.z[N - 1] - p.lambda[j]);
  }
  Eigen::VectorXcd a = Z.fullPivLu().solve(rhs);
  Figure2Model f;
  for (std::size_t k = 0; k + 1 < N; ++k) f.a.push_back(a[k]);
  f.a.push_back(p.a_last);
  RatFun psi;
  for (std::size_t k = 0; k < N; ++k) {
    f.c.push_back(f.a[k] * (p.z[k] - p.w));
    psi = psi + RatFun::pole_term(p.z[k], f.c[k]);
  }
  f.model = FriedrichsModel(RatFun::pole_term(std::conj(p.w)), psi, 0.0);
  return f;
}

namespace {

int lower_root_count(const FriedrichsModel& m) {
  int n = 0;
  for (auto& r : poly_roots(d_plus_numerator(m)))
    if (r.value.imag() < 0) n += r.multiplicity;
  return n;
}

}  // namespace

Figure2Report figure2_pipeline(const Figure2Params& p, int crossings, int reference_n) {
  Figure2Report rep;
  rep.fig = figure2_model(p);
  const auto& m = rep.fig.model;
  const int N = static_cast<int>(p.z.size());
  CurveSettings cs;
  cs.reference_n = reference_n;
  rep.curve = trace_real_root_curve(m, cs);
  const auto& comp = rep.curve.components;

  rep.components_match_root_count = true;
  rep.far_field_zero = true;
  bool any_unbounded = false;
  for (int id = 0; id < comp.count; ++id) {
    ComponentReport cr;
    cr.label = id;
    cr.probe = comp.probe[id];
    cr.unbounded = comp.unbounded[id];
    cr.cells = comp.size[id];
    auto cell = classify_point(m, Plane::inv_alpha, cr.probe);
    // probe in a degeneracy band: nudge inside the component
    for (int k = 1; cell.defect < 0 && k < 8; ++k) {
      cplx q = cr.probe + cplx(comp.grid.dx(), comp.grid.dy()) * (0.1 * k);
      if (comp.label_at(q) == id) cell = classify_point(m, Plane::inv_alpha, q);
    }
    cr.defect = cell.defect;
    cr.lower_roots = lower_root_count(m.with_psi_scaled(1.0 / cr.probe));
    if (cr.defect != N - cr.lower_roots) rep.components_match_root_count = false;
    if (cr.unbounded) {
      any_unbounded = true;
      if (cr.defect != 0) rep.far_field_zero = false;
    }
    rep.components.push_back(cr);
  }
  rep.far_field_zero = rep.far_field_zero && any_unbounded;

  // crossings away from self-intersections, the origin and other branches
  const auto& pts = rep.curve.points;
  const auto& ts = rep.curve.t;
  double scale = 0;
  for (auto& q : pts) scale = std::max(scale, std::abs(q));
  const double delta = 1e-4 * scale, clear = 50 * delta;
  const XiData xi = xi_data(m);
  std::vector<std::size_t> cand;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    if (!std::isfinite(ts[k]) || std::abs(pts[k]) < 0.05 * scale) continue;
    bool ok = true;
    for (auto& w : rep.curve.self_intersections) ok = ok && std::abs(pts[k] - w) > clear;
    if (ok) cand.push_back(k);
  }
  rep.crossings_unit = !cand.empty();
  rep.on_curve_min = !cand.empty();
  const int want = std::min<int>(crossings, static_cast<int>(cand.size()));
  int taken = 0;
  for (int i = 0; taken < want && i < static_cast<int>(cand.size()); ++i) {
    std::size_t k = cand[(static_cast<std::size_t>(i) * 7919u) % cand.size()];
    // the nearest other part of the curve must be well clear of the probes
    double near = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < pts.size(); ++j) {
      if (!std::isfinite(ts[j]) || std::abs(ts[j] - ts[k]) < 1e-3 * (1 + std::abs(ts[k]))) continue;
      if (std::abs(std::atan(ts[j]) - std::atan(ts[k])) < 0.02) continue;
      near = std::min(near, std::abs(pts[j] - pts[k]));
    }
    if (near < clear) continue;
    CrossingCheck cc;
    cc.t = ts[k];
    cc.point = pts[k];
    cplx tan = 2.0 * pi * I * xi.derivative(ts[k]);
    cplx nrm = I * tan / std::abs(tan);
    auto l = classify_point(m, Plane::inv_alpha, pts[k] + delta * nrm);
    auto r = classify_point(m, Plane::inv_alpha, pts[k] - delta * nrm);
    cc.defect_left = l.defect;
    cc.defect_right = r.defect;
    cc.defect_on = defect_hardy_plus(m.with_psi_scaled(1.0 / pts[k])).defect;
    cc.label_left = comp.label_at(pts[k] + delta * nrm);
    cc.label_right = comp.label_at(pts[k] - delta * nrm);
    if (l.defect < 0 || r.defect < 0 || std::abs(l.defect - r.defect) != 1) rep.crossings_unit = false;
    if (cc.defect_on != std::min(l.defect, r.defect)) rep.on_curve_min = false;
    rep.crossings.push_back(cc);
    ++taken;
  }
  if (taken < want) rep.crossings_unit = false;
  return rep;
}

// ---- verification suite ---------------------------------------------------------

RandomDraw verify_draw(std::uint64_t seed, int index, int max_poles) {
  std::mt19937_64 rng(splitmix64(seed + static_cast<std::uint64_t>(index)));
  std::uniform_int_distribution<int> np(1, std::max(1, max_poles)), small(1, 3);
  std::uniform_real_distribution<double> u(-2, 2);
  RandomDraw d;
  RatFun phi = draw_ratfun(rng, np(rng), 0.1);
  RatFun psi = draw_ratfun(rng, np(rng), 0.1);
  d.model = FriedrichsModel(phi, psi, cplx(u(rng), u(rng)));
  auto& in = d.inputs;
  in.u = draw_ratfun(rng, small(rng), 0.1);
  in.v = draw_ratfun(rng, small(rng), 0.1);
  in.g = draw_ratfun(rng, small(rng), 0.1);
  in.lambda = draw_offaxis(rng, 0.3);
  in.lambda0 = draw_offaxis(rng, 0.3);
  in.mu = draw_offaxis(rng, 0.3);
  in.mu_tilde = draw_offaxis(rng, 0.3);
  in.C = cplx(u(rng), u(rng));
  in.f = cplx(u(rng), u(rng));
  in.w = cplx(u(rng), u(rng));
  return d;
}

VerifyReport run_verify_suite(const VerifySettings& s) {
  const std::size_t nk = s.kinds.size(), nm = static_cast<std::size_t>(std::max(0, s.models));
  // residual per (draw, kind); negative marks a skipped draw
  std::vector<double> res(nm * nk, 0.0);
  parallel_for(nm, thread_count(s.threads), [&](std::size_t i) {
    auto d = verify_draw(s.seed, static_cast<int>(i), s.max_poles);
    d.inputs.corrupt_krein = s.corrupt_krein;
    for (std::size_t k = 0; k < nk; ++k) {
      try {
        res[i * nk + k] = verify_identity(s.kinds[k], d.model, d.inputs).relative();
      } catch (const SpectralError&) {
        res[i * nk + k] = -1;
      }
    }
  });
  VerifyReport r;
  r.settings = s;
  for (std::size_t k = 0; k < nk; ++k) {
    VerifyLine line;
    line.kind = s.kinds[k];
    for (std::size_t i = 0; i < nm; ++i) {
      double v = res[i * nk + k];
      if (v < 0) {
        ++line.skipped;
        continue;
      }
      ++line.draws;
      if (line.worst_draw < 0 || !(v <= line.max_residual)) {
        line.max_residual = std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
        line.worst_draw = static_cast<int>(i);
      }
    }
    line.pass = line.max_residual < s.tol;
    r.pass = r.pass && line.pass;
    r.lines.push_back(line);
  }
  return r;
}

std::string VerifyReport::text() const {
  char buf[200];
  std::snprintf(buf, sizeof buf, "seed=%llu models=%d max_poles=%d tol=%.3e corrupt_krein=%d\n",
                static_cast<unsigned long long>(settings.seed), settings.models, settings.max_poles, settings.tol,
                settings.corrupt_krein ? 1 : 0);
  std::string out = buf;
  for (auto& l : lines) {
    std::snprintf(buf, sizeof buf, "%-12s draws=%d skipped=%d max_residual=%.6e worst_draw=%d %s\n",
                  to_string(l.kind).c_str(), l.draws, l.skipped, l.max_residual, l.worst_draw,
                  l.pass ? "PASS" : "FAIL");
    out += buf;
    if (!l.pass) {
      std::snprintf(buf, sizeof buf, "  reproduce: --seed %llu draw %d kind=%s\n",
                    static_cast<unsigned long long>(settings.seed), l.worst_draw, to_string(l.kind).c_str());
      out += buf;
    }
  }
  out += pass ? "overall PASS\n" : "overall FAIL\n";
  return out;
}

std::uint64_t VerifyReport::hash() const { return fnv1a64(text()); }

}  // namespace friedlab

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "friedlab/detect.hpp"
#include "friedlab/identities.hpp"
#include "friedlab/model.hpp"

namespace friedlab {

// ---- Grids ------------------------------------------------------------------

// Coordinates of the scan plane. The model family is base.with_psi_scaled(alpha).
//   ALPHA      p = alpha
//   MU         p = (2 pi i alpha)^-1
//   MU_HAT     p = 2 pi i alpha / prod_k (z_k - w), psi poles z_k, phibar pole w
//   INV_ALPHA  p = 1/alpha
enum class Plane { alpha, mu, mu_hat, inv_alpha };
std::string to_string(Plane p);
std::optional<Plane> parse_plane(const std::string& s);

// nodes x0 + (x1 - x0) i/(nx - 1), same for y
struct GridSpec {
  double x0 = -1, x1 = 1, y0 = -1, y1 = 1;
  int nx = 1, ny = 1;
  cplx node(int i, int j) const;
  double dx() const { return nx > 1 ? (x1 - x0) / (nx - 1) : 0; }
  double dy() const { return ny > 1 ? (y1 - y0) / (ny - 1) : 0; }
};
// "x0,x1,y0,y1,nx,ny"
GridSpec parse_grid(const std::string& s);

// alpha for a plane point; nullopt where the point has no finite alpha
std::optional<cplx> alpha_of(const FriedrichsModel& base, Plane plane, cplx point);

struct ScanCell {
  cplx point;
  int defect = -1;   // -1 when flagged
  std::string flag;  // "", "UNRESOLVED" or "INFINITE"
  int lower_roots = 0;
};

struct ScanGrid {
  Plane plane = Plane::alpha;
  GridSpec grid;
  std::vector<ScanCell> cells;  // row-major, j (imag) outer
  const ScanCell& at(int i, int j) const { return cells[static_cast<std::size_t>(j) * grid.nx + i]; }
};

ScanCell classify_point(const FriedrichsModel& base, Plane plane, cplx point);

// threads <= 0: hardware concurrency. Cells are written by index.
ScanGrid scan_defect_grid(const FriedrichsModel& base, Plane plane, const GridSpec& grid, int threads = 0);

// header "re,im,defect,flag", LF endings, %.17g numbers
std::string scan_csv(const ScanGrid& g);

// Bisection on the segment [a, b] whose endpoints have different defects;
// returns a point within tol of the switch.
cplx bisect_defect_boundary(const FriedrichsModel& base, Plane plane, cplx a, cplx b, double tol = 1e-12);

// ---- Real-root curve ---------------------------------------------------------

// a_k = c_k phibar(z_k) over the partial fractions c_k/(x - z_k) of psi
struct XiData {
  std::vector<cplx> z, a;
  cplx operator()(cplx lambda) const;  // sum a_k/(z_k - lambda)
  cplx derivative(cplx lambda) const;
};
XiData xi_data(const FriedrichsModel& base);

struct CurveSettings {
  int initial_samples = 2000;
  double max_step = 0;  // 0: a fifth of the reference cell size
  int max_depth = 30;
  GridSpec reference;   // nx = 0 picks a box around the curve
  int reference_n = 300;
};

struct Components {
  GridSpec grid;
  std::vector<int> label;  // -1 for cells touched by the curve
  int count = 0;
  std::vector<int> size;
  std::vector<bool> unbounded;  // touches the grid border
  std::vector<cplx> probe;      // cell centre farthest from the curve
  int label_at(cplx p) const;
};

// The curve where D+ has a real root, in the 1/alpha plane:
// 1/alpha = 2 pi i xi(t), t = tan(theta).
struct CurveTrace {
  std::vector<double> t;
  std::vector<cplx> points;
  std::vector<int> branch;
  int branches = 1;
  // real t-values mapping onto a generic curve point
  int covering = 1;
  std::vector<cplx> self_intersections;  // nonzero ones; empty when covering > 1
  // worst |Im| of the real root of D+ nearest to t, over certified samples
  double certificate = 0;
  int uncertified = 0;  // samples at 1/alpha = 0, where alpha is infinite
  Components components;
};

CurveTrace trace_real_root_curve(const FriedrichsModel& base, const CurveSettings& s = {});

// columns t,re,im,branch
std::string curve_csv(const CurveTrace& c);

// ---- Four-pole petal construction -------------------------------------------

struct Figure2Params {
  std::vector<double> lambda{0, 1, -2};
  std::vector<cplx> z{{0, -1}, {1, -1}, {-2, -1}, {3, -2}};
  cplx a_last = 1.0;
  cplx w = {0, 1};  // phibar = 1/(x - w)
};

struct Figure2Model {
  std::vector<cplx> a;  // a_1 .. a_N, the first N-1 from the Z system
  std::vector<cplx> c;  // psi coefficients c_k = a_k (z_k - w)
  FriedrichsModel model;
};

Figure2Model figure2_model(const Figure2Params& p = {});

struct ComponentReport {
  int label = 0;
  cplx probe;
  int defect = 0;
  int lower_roots = 0;  // nu_- at the probe
  bool unbounded = false;
  int cells = 0;
};

struct CrossingCheck {
  double t = 0;
  cplx point;
  int defect_left = 0, defect_right = 0, defect_on = 0;
  int label_left = -1, label_right = -1;
};

struct Figure2Report {
  Figure2Model fig;
  CurveTrace curve;
  std::vector<ComponentReport> components;
  std::vector<CrossingCheck> crossings;
  bool far_field_zero = false;
  bool components_match_root_count = false;
  bool crossings_unit = false;
  bool on_curve_min = false;
  bool ok() const { return far_field_zero && components_match_root_count && crossings_unit && on_curve_min; }
};

Figure2Report figure2_pipeline(const Figure2Params& p = {}, int crossings = 100, int reference_n = 300);

// ---- Verification suite ------------------------------------------------------

struct VerifySettings {
  std::uint64_t seed = 20240601;
  int models = 1000;
  int max_poles = 6;
  double tol = 1e-8;
  bool corrupt_krein = false;
  int threads = 0;
  std::vector<IdentityKind> kinds{IdentityKind::green, IdentityKind::krein, IdentityKind::aronszajn,
                                  IdentityKind::fund, IdentityKind::resolvent};
};

struct VerifyLine {
  IdentityKind kind;
  int draws = 0;
  int skipped = 0;  // lambda landed on a zero of D
  double max_residual = 0;
  int worst_draw = -1;
  bool pass = true;
};

struct VerifyReport {
  VerifySettings settings;
  std::vector<VerifyLine> lines;
  bool pass = true;
  std::string text() const;
  std::uint64_t hash() const;
};

// draw i uses the generator seeded by splitmix(seed + i), so a failure is
// reproducible from (seed, worst_draw) alone
struct RandomDraw {
  FriedrichsModel model;
  IdentityInputs inputs;
};
RandomDraw verify_draw(std::uint64_t seed, int index, int max_poles);

VerifyReport run_verify_suite(const VerifySettings& s);

std::uint64_t fnv1a64(const std::string& s);

}  // namespace friedlab

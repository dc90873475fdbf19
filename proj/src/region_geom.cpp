#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>

#include "json.hpp"
#include "region.hpp"

namespace cfkit {

namespace {

constexpr double kGeomEps = 1e-9;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Solve a dim x dim linear system by partial-pivot elimination. Returns
// false when (numerically) singular.
bool solve_small(std::vector<std::vector<double>> m, std::vector<double> rhs,
                 std::vector<double>& out) {
  const size_t n = rhs.size();
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    for (size_t r = col + 1; r < n; ++r)
      if (std::fabs(m[r][col]) > std::fabs(m[piv][col])) piv = r;
    if (std::fabs(m[piv][col]) < 1e-12) return false;
    std::swap(m[col], m[piv]);
    std::swap(rhs[col], rhs[piv]);
    for (size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      double f = m[r][col] / m[col][col];
      if (f == 0) continue;
      for (size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
      rhs[r] -= f * rhs[col];
    }
  }
  out.resize(n);
  for (size_t i = 0; i < n; ++i) out[i] = rhs[i] / m[i][i];
  return true;
}

bool piece_contains(const Polytope& p, const std::vector<double>& pt,
                    double margin) {
  for (double v : pt)
    if (v < -margin) return false;
  for (const auto& hs : p.halfspaces) {
    double dot = 0;
    for (size_t k = 0; k < pt.size(); ++k) dot += hs.coeffs[k] * pt[k];
    if (dot > hs.bound - margin) return false;
  }
  return true;
}

// Constraint rows: the halfspaces plus the coordinate planes, with a frame
// cap added on coordinates that no halfspace bounds (degenerate pieces such
// as R_CF with a zero coefficient are unbounded there).
struct ConstraintSet {
  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;
  size_t n_real = 0;  // rows that come from actual halfspaces
};

ConstraintSet constraints_of(const Polytope& p, size_t dim) {
  ConstraintSet cs;
  for (const auto& hs : p.halfspaces) {
    cs.rows.push_back(hs.coeffs);
    cs.rhs.push_back(hs.bound);
  }
  cs.n_real = cs.rows.size();
  double frame = 1.0;
  for (const auto& hs : p.halfspaces) frame = std::max(frame, 2.0 * hs.bound + 1.0);
  for (size_t k = 0; k < dim; ++k) {
    bool bounded = false;
    for (const auto& hs : p.halfspaces)
      if (hs.coeffs[k] > 0) bounded = true;
    if (!bounded) {
      std::vector<double> row(dim, 0.0);
      row[k] = 1.0;
      cs.rows.push_back(row);
      cs.rhs.push_back(frame);
    }
  }
  for (size_t k = 0; k < dim; ++k) {
    std::vector<double> row(dim, 0.0);
    row[k] = -1.0;
    cs.rows.push_back(row);
    cs.rhs.push_back(0.0);
  }
  return cs;
}

void piece_vertices_into(const Polytope& p, size_t dim,
                         std::vector<std::vector<double>>& out) {
  ConstraintSet cs = constraints_of(p, dim);
  const size_t m = cs.rows.size();
  std::vector<size_t> pick(dim);
  // enumerate all dim-subsets of constraints
  std::function<void(size_t, size_t)> rec = [&](size_t start, size_t depth) {
    if (depth == dim) {
      std::vector<std::vector<double>> a(dim);
      std::vector<double> b(dim);
      for (size_t i = 0; i < dim; ++i) {
        a[i] = cs.rows[pick[i]];
        b[i] = cs.rhs[pick[i]];
      }
      std::vector<double> x;
      if (!solve_small(a, b, x)) return;
      // feasibility against every constraint
      for (size_t r = 0; r < m; ++r) {
        double dot = 0;
        for (size_t k = 0; k < dim; ++k) dot += cs.rows[r][k] * x[k];
        if (dot > cs.rhs[r] + 1e-7) return;
      }
      out.push_back(std::move(x));
      return;
    }
    for (size_t i = start; i + (dim - depth) <= m; ++i) {
      pick[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
}

void dedupe_points(std::vector<std::vector<double>>& pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const auto& a, const auto& b) {
                          for (size_t i = 0; i < a.size(); ++i)
                            if (std::fabs(a[i] - b[i]) > 1e-8) return false;
                          return true;
                        }),
            pts.end());
}

bool piece_feasible(const Polytope& p) {
  for (const auto& hs : p.halfspaces)
    if (hs.bound <= kGeomEps) return false;  // clipped-at-zero empty side
  return true;
}

}  // namespace

bool region_contains(const RateRegion& r, const std::vector<double>& point,
                     double margin) {
  if (point.size() != r.dim) throw std::invalid_argument("point dimension");
  for (const auto& p : r.pieces)
    if (piece_contains(p, point, margin)) return true;
  return false;
}

std::vector<std::vector<double>> region_vertices(const RateRegion& r) {
  if (r.dim < 1 || r.dim > 4)
    throw std::invalid_argument("vertex enumeration supports 1 <= dim <= 4");
  std::vector<std::vector<double>> out;
  for (const auto& p : r.pieces) piece_vertices_into(p, r.dim, out);
  for (auto& v : out)
    for (auto& c : v)
      if (std::fabs(c) < 1e-12) c = 0.0;
  dedupe_points(out);
  return out;
}

double max_sum_rate(const RateRegion& r) {
  if (r.pieces.empty()) return 0.0;
  for (const auto& p : r.pieces)
    for (size_t k = 0; k < r.dim; ++k) {
      bool bounded = false;
      for (const auto& hs : p.halfspaces)
        if (hs.coeffs[k] > 0) bounded = true;
      if (!bounded) return kInf;
    }
  double best = 0.0;
  for (const auto& v : region_vertices(r)) {
    double s = 0;
    for (double c : v) s += c;
    best = std::max(best, s);
  }
  return best;
}

double max_symmetric_rate(const RateRegion& r) {
  double best = 0.0;
  for (const auto& p : r.pieces) {
    double t = kInf;
    for (const auto& hs : p.halfspaces) {
      double csum = 0;
      for (double c : hs.coeffs) csum += c;
      if (csum > 0) t = std::min(t, hs.bound / csum);
    }
    best = std::max(best, t);
  }
  return std::max(0.0, best);
}

RateRegion region_union(const RateRegion& a, const RateRegion& b) {
  if (a.dim != b.dim) throw std::invalid_argument("dimension mismatch");
  RateRegion out = a;
  out.pieces.insert(out.pieces.end(), b.pieces.begin(), b.pieces.end());
  return out;
}

RateRegion region_intersect(const RateRegion& a, const RateRegion& b) {
  if (a.dim != b.dim) throw std::invalid_argument("dimension mismatch");
  RateRegion out;
  out.dim = a.dim;
  for (const auto& pa : a.pieces)
    for (const auto& pb : b.pieces) {
      Polytope p = pa;
      p.halfspaces.insert(p.halfspaces.end(), pb.halfspaces.begin(),
                          pb.halfspaces.end());
      if (piece_feasible(p)) out.pieces.push_back(std::move(p));
    }
  return out;
}

namespace {

// 2-D: Andrew monotone chain over the union's vertices; emitted as one
// polytope whose upper-right hull edges become halfspaces.
RateRegion hull_2d(const RateRegion& r) {
  auto pts = region_vertices(r);
  pts.push_back({0.0, 0.0});
  double mx = 0, my = 0;
  for (const auto& p : pts) {
    mx = std::max(mx, p[0]);
    my = std::max(my, p[1]);
  }
  pts.push_back({mx, 0.0});
  pts.push_back({0.0, my});
  dedupe_points(pts);
  auto cross = [](const std::vector<double>& o, const std::vector<double>& a,
                  const std::vector<double>& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
  };
  std::sort(pts.begin(), pts.end());
  std::vector<std::vector<double>> hull(2 * pts.size());
  size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 1e-12) --k;
    hull[k++] = p;
  }
  size_t lower = k + 1;
  for (size_t i = pts.size() - 1; i-- > 0;) {
    const auto& p = pts[i];
    while (k >= lower && cross(hull[k - 2], hull[k - 1], p) <= 1e-12) --k;
    hull[k++] = p;
  }
  hull.resize(k > 1 ? k - 1 : k);

  Polytope poly;
  poly.halfspaces.push_back({{1.0, 0.0}, mx});
  poly.halfspaces.push_back({{0.0, 1.0}, my});
  for (size_t i = 0; i + 1 < hull.size() + 1; ++i) {
    const auto& a = hull[i];
    const auto& b = hull[(i + 1) % hull.size()];
    double nx = b[1] - a[1], ny = a[0] - b[0];  // outward normal of edge a->b (ccw hull)
    if (nx <= 1e-12 && ny <= 1e-12) continue;   // lower/left edges
    if (nx < 0 || ny < 0) continue;
    double bound = nx * a[0] + ny * a[1];
    // normalize for stable comparisons
    double norm = std::max(std::fabs(nx), std::fabs(ny));
    poly.halfspaces.push_back({{nx / norm, ny / norm}, bound / norm});
  }
  RateRegion out;
  out.dim = 2;
  out.pieces.push_back(std::move(poly));
  return out;
}

// 3-D: brute-force facet enumeration over the vertex set (desk scale); keeps
// facets whose outward normals are componentwise nonnegative, plus the
// coordinate caps, which is exactly the downward-closed hull of a
// comprehensive region.
RateRegion hull_3d(const RateRegion& r) {
  auto pts = region_vertices(r);
  pts.push_back({0, 0, 0});
  double cap[3] = {0, 0, 0};
  for (const auto& p : pts)
    for (int k = 0; k < 3; ++k) cap[k] = std::max(cap[k], p[k]);
  for (int k = 0; k < 3; ++k) {
    std::vector<double> axis(3, 0.0);
    axis[k] = cap[k];
    pts.push_back(axis);
  }
  dedupe_points(pts);

  Polytope poly;
  for (int k = 0; k < 3; ++k) {
    std::vector<double> row(3, 0.0);
    row[k] = 1.0;
    poly.halfspaces.push_back({row, cap[k]});
  }
  const size_t n = pts.size();
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      for (size_t l = j + 1; l < n; ++l) {
        const auto &a = pts[i], &b = pts[j], &c = pts[l];
        double ux = b[0] - a[0], uy = b[1] - a[1], uz = b[2] - a[2];
        double vx = c[0] - a[0], vy = c[1] - a[1], vz = c[2] - a[2];
        double nx = uy * vz - uz * vy, ny = uz * vx - ux * vz,
               nz = ux * vy - uy * vx;
        double norm = std::max({std::fabs(nx), std::fabs(ny), std::fabs(nz)});
        if (norm < 1e-12) continue;
        nx /= norm; ny /= norm; nz /= norm;
        double bound = nx * a[0] + ny * a[1] + nz * a[2];
        // orient outward (all points on or below)
        bool above = false, below = false;
        for (const auto& p : pts) {
          double d = nx * p[0] + ny * p[1] + nz * p[2] - bound;
          if (d > 1e-9) above = true;
          if (d < -1e-9) below = true;
        }
        if (above && below) continue;
        if (above) { nx = -nx; ny = -ny; nz = -nz; bound = -bound; }
        if (nx < -1e-12 || ny < -1e-12 || nz < -1e-12) continue;
        poly.halfspaces.push_back({{nx, ny, nz}, bound});
      }
  // drop duplicate facets
  std::sort(poly.halfspaces.begin(), poly.halfspaces.end(),
            [](const HalfSpace& a, const HalfSpace& b) {
              return std::tie(a.coeffs, a.bound) < std::tie(b.coeffs, b.bound);
            });
  poly.halfspaces.erase(
      std::unique(poly.halfspaces.begin(), poly.halfspaces.end(),
                  [](const HalfSpace& a, const HalfSpace& b) {
                    for (int k = 0; k < 3; ++k)
                      if (std::fabs(a.coeffs[k] - b.coeffs[k]) > 1e-8) return false;
                    return std::fabs(a.bound - b.bound) < 1e-8;
                  }),
      poly.halfspaces.end());
  RateRegion out;
  out.dim = 3;
  out.pieces.push_back(std::move(poly));
  return out;
}

}  // namespace

RateRegion convex_hull(const RateRegion& r) {
  if (r.pieces.empty()) return r;
  if (r.dim == 2) return hull_2d(r);
  if (r.dim == 3) return hull_3d(r);
  throw std::invalid_argument("convex hull supports dim 2 and 3");
}

double sup_r2_at(const RateRegion& r, double r1) {
  if (r.dim != 2) throw std::invalid_argument("sup_r2_at needs dim 2");
  double best = -kInf;
  if (r1 < -kGeomEps) return best;
  for (const auto& p : r.pieces) {
    double t = kInf;
    bool feasible = true;
    for (const auto& hs : p.halfspaces) {
      double rem = hs.bound - hs.coeffs[0] * r1;
      if (hs.coeffs[1] > 1e-12) {
        t = std::min(t, rem / hs.coeffs[1]);
      } else if (rem < -1e-12) {
        feasible = false;
        break;
      }
    }
    if (feasible && t >= -kGeomEps) best = std::max(best, t);
  }
  return best;
}

bool region_subset_2d(const RateRegion& a, const RateRegion& b, double tol) {
  std::set<double> xs{0.0};
  for (const auto* reg : {&a, &b})
    for (const auto& v : region_vertices(*reg)) xs.insert(v[0]);
  std::vector<double> grid(xs.begin(), xs.end());
  std::vector<double> probes;
  for (size_t i = 0; i < grid.size(); ++i) {
    probes.push_back(grid[i]);
    if (i + 1 < grid.size()) probes.push_back(0.5 * (grid[i] + grid[i + 1]));
  }
  for (double x : probes) {
    double sa = sup_r2_at(a, x);
    if (sa < 0) continue;
    double sb = sup_r2_at(b, x);
    if (sa > sb + tol) return false;
  }
  return true;
}

bool region_equal_2d(const RateRegion& a, const RateRegion& b, double tol) {
  return region_subset_2d(a, b, tol) && region_subset_2d(b, a, tol);
}

std::string region_to_json(const RateRegion& r) {
  nlohmann::json j;
  j["dim"] = r.dim;
  j["pieces"] = nlohmann::json::array();
  for (const auto& p : r.pieces) {
    nlohmann::json jp;
    jp["halfspaces"] = nlohmann::json::array();
    for (const auto& hs : p.halfspaces)
      jp["halfspaces"].push_back({{"coeffs", hs.coeffs}, {"bound", hs.bound}});
    j["pieces"].push_back(jp);
  }
  return j.dump();
}

RateRegion region_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  RateRegion r;
  r.dim = j.at("dim").get<size_t>();
  for (const auto& jp : j.at("pieces")) {
    Polytope p;
    for (const auto& jh : jp.at("halfspaces")) {
      HalfSpace hs;
      hs.coeffs = jh.at("coeffs").get<std::vector<double>>();
      hs.bound = jh.at("bound").get<double>();
      if (hs.coeffs.size() != r.dim)
        throw std::invalid_argument("halfspace dimension mismatch");
      p.halfspaces.push_back(std::move(hs));
    }
    r.pieces.push_back(std::move(p));
  }
  return r;
}

}  // namespace cfkit

#include "geocenter/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace geocenter::oracle {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Own copies of the containment tests so the oracle stays independent of
// the pipeline's polygon utilities (only exact predicates are shared).
bool pip(const Polygon& poly, Point p) {
  int n = poly.size();
  for (int i = 0; i < n; ++i) {
    if (on_segment(poly.vertex(i), poly.vertex(i + 1), p)) return true;
  }
  int winding = 0;
  for (int i = 0; i < n; ++i) {
    Point a = poly.vertex(i), b = poly.vertex(i + 1);
    if (a.y <= p.y) {
      if (b.y > p.y && orient(a, b, p) > 0) ++winding;
    } else {
      if (b.y <= p.y && orient(a, b, p) < 0) --winding;
    }
  }
  return winding != 0;
}

double seg_point_dist(Point a, Point b, Point p) {
  Point d = b - a;
  double dd = dot(d, d);
  if (dd == 0) return dist(a, p);
  double t = std::clamp(dot(p - a, d) / dd, 0.0, 1.0);
  return dist(a + t * d, p);
}

// Computed midpoints of boundary-hugging segments land half an ulp off the
// line, which the exact predicates see as outside; points that close to the
// boundary are in the closure.
bool near_boundary(const Polygon& poly, Point p, double eps) {
  int n = poly.size();
  for (int i = 0; i < n; ++i) {
    if (seg_point_dist(poly.vertex(i), poly.vertex(i + 1), p) <= eps) return true;
  }
  return false;
}

bool seg_in(const Polygon& poly, Point a, Point b) {
  if (!pip(poly, a) || !pip(poly, b)) return false;
  if (a == b) return true;
  int n = poly.size();
  std::vector<double> touch{0.0, 1.0};
  Point d = b - a;
  double dd = dot(d, d);
  for (int i = 0; i < n; ++i) {
    Point c = poly.vertex(i), e = poly.vertex(i + 1);
    int o1 = orient(a, b, c), o2 = orient(a, b, e);
    int o3 = orient(c, e, a), o4 = orient(c, e, b);
    if (o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0) return false;
    if (o1 == 0 && on_segment(a, b, c)) touch.push_back(dot(c - a, d) / dd);
    if (o2 == 0 && on_segment(a, b, e)) touch.push_back(dot(e - a, d) / dd);
  }
  std::sort(touch.begin(), touch.end());
  double eps = 1e-12 * (poly.scale() + norm(d));
  for (size_t i = 0; i + 1 < touch.size(); ++i) {
    if (touch[i + 1] - touch[i] < 1e-15) continue;
    Point mid = a + (0.5 * (touch[i] + touch[i + 1])) * d;
    if (!pip(poly, mid) && !near_boundary(poly, mid, eps)) return false;
  }
  return true;
}

double golden_min(const std::function<double(double)>& f, double a, double b, double tol,
                  double* arg) {
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > tol) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = f(x2);
    }
  }
  double xm = 0.5 * (a + b);
  if (arg) *arg = xm;
  return f(xm);
}

}  // namespace

BruteGeodesic::BruteGeodesic(const Polygon& poly) : poly_(poly), n_(poly.size()) {
  vdist_.assign(static_cast<size_t>(n_) * n_, kInf);
  auto at = [&](int i, int j) -> double& { return vdist_[static_cast<size_t>(i) * n_ + j]; };
  for (int i = 0; i < n_; ++i) {
    at(i, i) = 0.0;
    for (int j = i + 1; j < n_; ++j) {
      if (seg_in(poly_, poly_.vertex(i), poly_.vertex(j))) {
        double d = dist(poly_.vertex(i), poly_.vertex(j));
        at(i, j) = at(j, i) = d;
      }
    }
  }
  for (int k = 0; k < n_; ++k) {
    for (int i = 0; i < n_; ++i) {
      double dik = at(i, k);
      if (dik == kInf) continue;
      for (int j = 0; j < n_; ++j) {
        double v = dik + at(k, j);
        if (v < at(i, j)) at(i, j) = v;
      }
    }
  }
}

bool BruteGeodesic::visible(Point p, Point q) const { return seg_in(poly_, p, q); }

std::vector<double> BruteGeodesic::vertex_distances(Point p) const {
  std::vector<double> out(n_, kInf);
  std::vector<int> vis;
  std::vector<double> dp(n_);
  for (int w = 0; w < n_; ++w) {
    if (seg_in(poly_, p, poly_.vertex(w))) {
      vis.push_back(w);
      dp[w] = dist(p, poly_.vertex(w));
    }
  }
  for (int v = 0; v < n_; ++v) {
    double best = kInf;
    for (int w : vis) {
      double c = dp[w] + vdist_[static_cast<size_t>(w) * n_ + v];
      if (c < best) best = c;
    }
    out[v] = best;
  }
  return out;
}

double BruteGeodesic::max_vertex_distance(Point p) const {
  auto d = vertex_distances(p);
  double m = 0;
  for (double v : d) m = std::max(m, v);
  return m;
}

double BruteGeodesic::distance(Point p, Point q) const {
  if (seg_in(poly_, p, q)) return dist(p, q);
  auto dq = vertex_distances(q);
  double best = kInf;
  for (int w = 0; w < n_; ++w) {
    if (dq[w] == kInf) continue;
    if (seg_in(poly_, p, poly_.vertex(w))) {
      best = std::min(best, dist(p, poly_.vertex(w)) + dq[w]);
    }
  }
  return best;
}

std::pair<double, double> brute_constrained_center(const BruteGeodesic& bg, const Segment& seg,
                                                   double tol_t) {
  double arg = 0.5;
  double val = golden_min([&](double t) { return bg.max_vertex_distance(seg.at(t)); }, 0.0, 1.0,
                          tol_t, &arg);
  return {arg, val};
}

namespace {

// Vertical slice of the polygon at x: the y-interval containing (or nearest
// to) y_hint.
std::pair<double, double> slice_at(const Polygon& poly, double x, double y_hint) {
  std::vector<double> ys;
  int n = poly.size();
  for (int i = 0; i < n; ++i) {
    Point a = poly.vertex(i), b = poly.vertex(i + 1);
    if ((a.x < x) != (b.x < x)) {
      ys.push_back(a.y + (x - a.x) / (b.x - a.x) * (b.y - a.y));
    }
  }
  std::sort(ys.begin(), ys.end());
  double blo = 0, bhi = 0, bcost = kInf;
  for (size_t i = 0; i + 1 < ys.size(); i += 2) {
    double cost = y_hint < ys[i] ? ys[i] - y_hint : (y_hint > ys[i + 1] ? y_hint - ys[i + 1] : 0);
    if (cost < bcost) {
      bcost = cost;
      blo = ys[i];
      bhi = ys[i + 1];
    }
  }
  return {blo, bhi};
}

}  // namespace

std::pair<Point, double> brute_center(const BruteGeodesic& bg, int grid_k, int refine_iters) {
  const Polygon& poly = bg.polygon();
  double xlo = kInf, xhi = -kInf, ylo = kInf, yhi = -kInf;
  for (Point p : poly.vertices()) {
    xlo = std::min(xlo, p.x);
    xhi = std::max(xhi, p.x);
    ylo = std::min(ylo, p.y);
    yhi = std::max(yhi, p.y);
  }
  Point best{0.5 * (xlo + xhi), 0.5 * (ylo + yhi)};
  double bestv = kInf;
  for (int i = 0; i < grid_k; ++i) {
    for (int j = 0; j < grid_k; ++j) {
      Point p{xlo + (xhi - xlo) * (i + 0.5) / grid_k, ylo + (yhi - ylo) * (j + 0.5) / grid_k};
      if (!pip(poly, p)) continue;
      double v = bg.max_vertex_distance(p);
      if (v < bestv) {
        bestv = v;
        best = p;
      }
    }
  }
  if (bestv == kInf) throw GeometryError("grid missed the polygon interior");

  double cell = std::max((xhi - xlo), (yhi - ylo)) / grid_k;
  double scale = std::hypot(xhi - xlo, yhi - ylo);

  // Nested 1D convex searches from the best cell (outer x, inner y).
  auto phi = [&](double x, double* y_at) {
    auto [slo, shi] = slice_at(poly, x, best.y);
    if (!(shi > slo)) {
      if (y_at) *y_at = best.y;
      return kInf;
    }
    double ya = 0;
    double v = golden_min([&](double y) { return bg.max_vertex_distance({x, y}); }, slo, shi,
                          1e-10 * scale + 1e-14, &ya);
    if (y_at) *y_at = ya;
    return v;
  };
  double wx = 4 * cell;
  for (int round = 0; round < 4; ++round) {
    double ax = std::max(xlo, best.x - wx), bx = std::min(xhi, best.x + wx);
    double xarg = best.x;
    golden_min([&](double x) { return phi(x, nullptr); }, ax, bx, 1e-10 * scale + 1e-14, &xarg);
    double ya = best.y;
    double v = phi(xarg, &ya);
    if (v < bestv) {
      bestv = v;
      best = {xarg, ya};
    }
    if (xarg > ax + 2e-10 * scale && xarg < bx - 2e-10 * scale) break;
    wx *= 4;  // argmin pinned to the window edge: widen
  }

  // Shrinking compass polish (convex objective: pattern search converges).
  double step = cell;
  for (int it = 0; it < refine_iters; ++it) {
    bool improved = false;
    for (auto [dx, dy] : {std::pair{1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}, {0.0, -1.0},
                          {1.0, 1.0}, {1.0, -1.0}, {-1.0, 1.0}, {-1.0, -1.0}}) {
      Point p{best.x + step * dx, best.y + step * dy};
      if (!pip(poly, p)) continue;
      double v = bg.max_vertex_distance(p);
      if (v < bestv) {
        bestv = v;
        best = p;
        improved = true;
      }
    }
    if (!improved) {
      step *= 0.5;
      if (step < 1e-11 * scale) break;
    }
  }
  return {best, bestv};
}

std::pair<Point, double> min_circle_nested_search(const std::vector<CircleConstraint>& circles) {
  double xlo = kInf, xhi = -kInf, ylo = kInf, yhi = -kInf;
  double fmax = 0;
  for (const auto& c : circles) {
    xlo = std::min(xlo, c.anchor.x);
    xhi = std::max(xhi, c.anchor.x);
    ylo = std::min(ylo, c.anchor.y);
    yhi = std::max(yhi, c.anchor.y);
    fmax = std::max(fmax, c.offset);
  }
  double pad = fmax + 1.0 + 0.5 * std::hypot(xhi - xlo, yhi - ylo);
  xlo -= pad;
  xhi += pad;
  ylo -= pad;
  yhi += pad;
  double scale = std::hypot(xhi - xlo, yhi - ylo);
  auto g = [&](Point p) {
    double v = -kInf;
    for (const auto& c : circles) v = std::max(v, c.value_at(p));
    return v;
  };
  auto phi = [&](double x, double* ya) {
    return golden_min([&](double y) { return g({x, y}); }, ylo, yhi, 1e-11 * scale, ya);
  };
  double xarg = 0.5 * (xlo + xhi);
  golden_min([&](double x) { return phi(x, nullptr); }, xlo, xhi, 1e-11 * scale, &xarg);
  double ya = 0;
  double v = phi(xarg, &ya);
  return {{xarg, ya}, v};
}

std::pair<Point, double> brute_min_circle_of_circles(const std::vector<CircleConstraint>& circles) {
  auto g = [&](Point p) {
    double v = -kInf;
    for (const auto& c : circles) v = std::max(v, c.value_at(p));
    return v;
  };
  Point best{0, 0};
  double bestv = kInf;
  auto consider = [&](Point p) {
    double v = g(p);
    if (v < bestv) {
      bestv = v;
      best = p;
    }
  };
  size_t k = circles.size();
  for (size_t i = 0; i < k; ++i) consider(circles[i].anchor);
  for (size_t i = 0; i < k; ++i) {
    for (size_t j = i + 1; j < k; ++j) {
      const auto& a = circles[i];
      const auto& b = circles[j];
      double D = dist(a.anchor, b.anchor);
      if (D <= 0) continue;
      double t = (D + b.offset - a.offset) / (2 * D);
      t = std::clamp(t, 0.0, 1.0);
      consider(a.anchor + t * (b.anchor - a.anchor));
    }
  }
  // Equal-value point of circle triples by damped Newton from the centroid.
  for (size_t i = 0; i < k; ++i) {
    for (size_t j = i + 1; j < k; ++j) {
      for (size_t l = j + 1; l < k; ++l) {
        const CircleConstraint* c3[3] = {&circles[i], &circles[j], &circles[l]};
        Point x{(c3[0]->anchor.x + c3[1]->anchor.x + c3[2]->anchor.x) / 3.0,
                (c3[0]->anchor.y + c3[1]->anchor.y + c3[2]->anchor.y) / 3.0};
        bool ok = true;
        for (int it = 0; it < 60 && ok; ++it) {
          double v[3], dvx[3], dvy[3];
          for (int m = 0; m < 3; ++m) {
            Point r = x - c3[m]->anchor;
            double d = norm(r);
            if (d < 1e-14) {
              ok = false;
              break;
            }
            v[m] = d + c3[m]->offset;
            dvx[m] = r.x / d;
            dvy[m] = r.y / d;
          }
          if (!ok) break;
          double f0 = v[0] - v[1], f1 = v[0] - v[2];
          double j00 = dvx[0] - dvx[1], j01 = dvy[0] - dvy[1];
          double j10 = dvx[0] - dvx[2], j11 = dvy[0] - dvy[2];
          double det = j00 * j11 - j01 * j10;
          if (std::abs(det) < 1e-14) {
            ok = false;
            break;
          }
          double sx = (f0 * j11 - f1 * j01) / det;
          double sy = (j00 * f1 - j10 * f0) / det;
          double damp = 1.0;
          if (std::hypot(sx, sy) > 1e3) damp = 1e3 / std::hypot(sx, sy);
          x = {x.x - damp * sx, x.y - damp * sy};
          if (std::abs(f0) + std::abs(f1) < 1e-13 * (1.0 + std::abs(v[0]))) break;
        }
        if (ok) consider(x);
      }
    }
  }
  auto nested = min_circle_nested_search(circles);
  if (nested.second < bestv) return nested;
  return {best, bestv};
}

}  // namespace geocenter::oracle

#pragma once

// Deterministic polygon and fixture generators shared by the unit and
// acceptance suites.

#include <algorithm>
#include <cmath>
#include <vector>

#include "geocenter/polygon.hpp"
#include "geocenter/rng.hpp"

namespace geocenter::testgen {

inline Polygon unit_square() {
  return Polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
}

inline Polygon equilateral() {
  return Polygon({{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2}});
}

// (0,0) (2,0) (2,1) (1,1) (1,2) (0,2)
inline Polygon l_polygon() {
  return Polygon({{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}});
}

inline Polygon bowtie() {
  return Polygon({{0, 0}, {1, 1}, {1, 0}, {0, 1}});
}

/// Convex polygon: random edge vectors sorted by angle, partial sums.
inline Polygon convex_polygon(int n, Rng& rng) {
  for (int tries = 0; tries < 64; ++tries) {
    std::vector<Point> dirs(n);
    for (auto& d : dirs) {
      double a = rng.unit() * 2 * M_PI;
      double r = 0.2 + rng.unit();
      d = {r * std::cos(a), r * std::sin(a)};
    }
    Point m{0, 0};
    for (Point d : dirs) m = m + d;
    for (auto& d : dirs) d = d - (1.0 / n) * m;
    std::sort(dirs.begin(), dirs.end(),
              [](Point a, Point b) { return std::atan2(a.y, a.x) < std::atan2(b.y, b.x); });
    std::vector<Point> pts;
    Point cur{0, 0};
    for (Point d : dirs) {
      pts.push_back(cur);
      cur = cur + d;
    }
    Polygon poly(std::move(pts));
    if (validate_simple(poly).empty()) return poly;
  }
  throw std::runtime_error("convex generator failed");
}

/// Star-shaped polygon about the origin: sorted angles, random radii.
inline Polygon star_polygon(int n, Rng& rng) {
  for (int tries = 0; tries < 64; ++tries) {
    std::vector<double> ang(n);
    for (double& a : ang) a = rng.unit() * 2 * M_PI;
    std::sort(ang.begin(), ang.end());
    bool ok = true;
    for (int i = 0; i + 1 < n; ++i) {
      if (ang[i + 1] - ang[i] < 1e-4) ok = false;
    }
    if (!ok || 2 * M_PI - (ang[n - 1] - ang[0]) < 1e-4) continue;
    std::vector<Point> pts(n);
    for (int i = 0; i < n; ++i) {
      double r = 0.25 + 0.75 * rng.unit();
      pts[i] = {r * std::cos(ang[i]), r * std::sin(ang[i])};
    }
    Polygon poly(std::move(pts));
    if (validate_simple(poly).empty()) return poly;
  }
  throw std::runtime_error("star generator failed");
}

/// Rectangular comb with deep teeth (long geodesics, deep SPTs).
/// Vertex count is 4*teeth + 2.
inline Polygon comb_polygon(int teeth, Rng& rng) {
  std::vector<Point> pts;
  double x = 0;
  pts.push_back({0, 0});
  for (int t = 0; t < teeth; ++t) {
    double w1 = 0.4 + 0.4 * rng.unit();  // tooth width
    double gap = 0.4 + 0.4 * rng.unit();
    double h = 1.5 + 2.0 * rng.unit();   // tooth height
    pts.push_back({x + w1, 0});
    // Tooth interior boundary rises inside the comb.
    pts.push_back({x + w1, -h});
    pts.push_back({x + w1 + gap, -h});
    pts.push_back({x + w1 + gap, 0});
    x += w1 + gap;
  }
  pts.push_back({x + 0.5, 0});
  pts.push_back({x + 0.5, 1.0});
  pts.push_back({-0.0 - 0.5, 1.0});
  // Shift so teeth hang below the bar [0, 1] strip.
  Polygon poly(std::move(pts));
  if (!validate_simple(poly).empty()) throw std::runtime_error("comb generator invalid");
  return poly;
}

/// Any of the three families, sized about n.
inline Polygon random_polygon(int n, int family, Rng& rng) {
  switch (family % 3) {
    case 0: return convex_polygon(std::max(4, n), rng);
    case 1: return star_polygon(std::max(5, n), rng);
    default: return comb_polygon(std::max(1, (n - 2) / 4), rng);
  }
}

/// Random point strictly inside the polygon (rejection from the bbox).
inline Point interior_point(const Polygon& poly, Rng& rng) {
  double xlo = 1e300, xhi = -1e300, ylo = 1e300, yhi = -1e300;
  for (Point p : poly.vertices()) {
    xlo = std::min(xlo, p.x);
    xhi = std::max(xhi, p.x);
    ylo = std::min(ylo, p.y);
    yhi = std::max(yhi, p.y);
  }
  for (int tries = 0; tries < 100000; ++tries) {
    Point p{xlo + rng.unit() * (xhi - xlo), ylo + rng.unit() * (yhi - ylo)};
    double m = 1e-9 * std::max(xhi - xlo, yhi - ylo);
    Point q{p.x + m, p.y + m};
    if (point_in_polygon(poly, p) && point_in_polygon(poly, q) &&
        segment_in_polygon(poly, p, q)) {
      return p;
    }
  }
  throw std::runtime_error("no interior point found");
}

/// Random segment with both endpoints strictly inside and the segment in
/// the closure.
inline Segment interior_segment(const Polygon& poly, Rng& rng) {
  for (int tries = 0; tries < 100000; ++tries) {
    Point a = interior_point(poly, rng);
    Point b = interior_point(poly, rng);
    if (a == b) continue;
    if (segment_in_polygon(poly, a, b)) return {a, b};
  }
  throw std::runtime_error("no interior segment found");
}

}  // namespace geocenter::testgen

#include "geocenter/geometry.hpp"

#include <algorithm>
#include <cassert>

namespace geocenter {

namespace {

// Error-free transforms (Dekker / Knuth), used by the exact orientation
// fallback. Components are kept as nonoverlapping expansions sorted by
// increasing magnitude; the sign of an expansion is the sign of its largest
// nonzero component.

inline void two_sum(double a, double b, double& s, double& err) {
  s = a + b;
  double bv = s - a;
  err = (a - (s - bv)) + (b - bv);
}

constexpr double kSplitter = 134217729.0;  // 2^27 + 1

inline void split_double(double a, double& hi, double& lo) {
  double c = kSplitter * a;
  hi = c - (c - a);
  lo = a - hi;
}

inline void two_product(double a, double b, double& p, double& err) {
  p = a * b;
  double ahi, alo, bhi, blo;
  split_double(a, ahi, alo);
  split_double(b, bhi, blo);
  err = ((ahi * bhi - p) + ahi * blo + alo * bhi) + alo * blo;
}

// fast_expansion_sum_zeroelim (Shewchuk): merge by increasing magnitude,
// chain two_sum, drop zero components. Inputs are nonoverlapping expansions
// sorted by increasing magnitude; so is the output.
int expansion_sum(int elen, const double* e, int flen, const double* f, double* h) {
  int eindex = 0, findex = 0, hindex = 0;
  auto take = [&]() -> double {
    if (eindex < elen && (findex >= flen || std::abs(e[eindex]) <= std::abs(f[findex]))) {
      return e[eindex++];
    }
    return f[findex++];
  };
  double q = take();
  while (eindex < elen || findex < flen) {
    double qnew, hh;
    two_sum(q, take(), qnew, hh);
    q = qnew;
    if (hh != 0.0) h[hindex++] = hh;
  }
  if (q != 0.0 || hindex == 0) h[hindex++] = q;
  return hindex;
}

int orient_exact(Point a, Point b, Point c) {
  // det = ax*by - ax*cy - cx*by - ay*bx + ay*cx + bx*cy
  double t[6][2];
  two_product(a.x, b.y, t[0][1], t[0][0]);
  two_product(a.x, c.y, t[1][1], t[1][0]);
  t[1][0] = -t[1][0];
  t[1][1] = -t[1][1];
  two_product(c.x, b.y, t[2][1], t[2][0]);
  t[2][0] = -t[2][0];
  t[2][1] = -t[2][1];
  two_product(a.y, b.x, t[3][1], t[3][0]);
  t[3][0] = -t[3][0];
  t[3][1] = -t[3][1];
  two_product(a.y, c.x, t[4][1], t[4][0]);
  two_product(b.x, c.y, t[5][1], t[5][0]);

  double s1[4], s2[4], s3[4], s12[8], sall[12];
  int n1 = expansion_sum(2, t[0], 2, t[1], s1);
  int n2 = expansion_sum(2, t[2], 2, t[3], s2);
  int n3 = expansion_sum(2, t[4], 2, t[5], s3);
  int n12 = expansion_sum(n1, s1, n2, s2, s12);
  int nall = expansion_sum(n12, s12, n3, s3, sall);

  double top = sall[nall - 1];
  if (top > 0) return 1;
  if (top < 0) return -1;
  return 0;
}

// (3 + 16*eps)*eps with eps = 2^-53: Shewchuk's ccwerrboundA.
constexpr double kCcwErrBoundA = 3.3306690621773724e-16;

}  // namespace

double orient_value(Point a, Point b, Point c) {
  return (a.x - c.x) * (b.y - c.y) - (a.y - c.y) * (b.x - c.x);
}

int orient(Point a, Point b, Point c) {
  double detleft = (a.x - c.x) * (b.y - c.y);
  double detright = (a.y - c.y) * (b.x - c.x);
  double det = detleft - detright;
  double detsum;
  if (detleft > 0.0) {
    if (detright <= 0.0) return det > 0 ? 1 : (det < 0 ? -1 : 0);
    detsum = detleft + detright;
  } else if (detleft < 0.0) {
    if (detright >= 0.0) return det > 0 ? 1 : (det < 0 ? -1 : 0);
    detsum = -detleft - detright;
  } else {
    return det > 0 ? 1 : (det < 0 ? -1 : 0);
  }
  double errbound = kCcwErrBoundA * detsum;
  if (det > errbound) return 1;
  if (-det > errbound) return -1;
  return orient_exact(a, b, c);
}

bool on_segment(Point a, Point b, Point c) {
  if (orient(a, b, c) != 0) return false;
  return std::min(a.x, b.x) <= c.x && c.x <= std::max(a.x, b.x) &&
         std::min(a.y, b.y) <= c.y && c.y <= std::max(a.y, b.y);
}

bool segments_intersect(Point p, Point q, Point r, Point s) {
  int o1 = orient(p, q, r);
  int o2 = orient(p, q, s);
  int o3 = orient(r, s, p);
  int o4 = orient(r, s, q);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(p, q, r)) return true;
  if (o2 == 0 && on_segment(p, q, s)) return true;
  if (o3 == 0 && on_segment(r, s, p)) return true;
  if (o4 == 0 && on_segment(r, s, q)) return true;
  return false;
}

namespace {

// Newton polish for h(t) = v1(t) - v2(t) on the segment.
double polish_root(const CircleConstraint& c1, const CircleConstraint& c2, const Segment& seg,
                   double t) {
  Point d = seg.b - seg.a;
  double hscale = 1.0 + std::abs(c1.offset) + std::abs(c2.offset) + norm(d);
  for (int it = 0; it < 8; ++it) {
    Point x = seg.at(t);
    double d1 = dist(x, c1.anchor);
    double d2 = dist(x, c2.anchor);
    double h = (d1 + c1.offset) - (d2 + c2.offset);
    if (std::abs(h) <= 1e-13 * hscale) break;
    if (d1 == 0.0 || d2 == 0.0) break;
    double dh = dot(x - c1.anchor, d) / d1 - dot(x - c2.anchor, d) / d2;
    if (dh == 0.0) break;
    double tn = t - h / dh;
    if (!(tn >= -0.5 && tn <= 1.5)) break;
    t = tn;
  }
  return std::clamp(t, 0.0, 1.0);
}

}  // namespace

BisectorHits covering_bisector_hits(const CircleConstraint& c1, const CircleConstraint& c2,
                                    const Segment& seg, double eps) {
  BisectorHits out;
  if (c1.anchor == c2.anchor) {
    if (c1.offset == c2.offset) out.identical = true;
    return out;  // different offsets: larger one dominates everywhere, no crossing
  }

  Point A = seg.a;
  Point D = seg.b - seg.a;
  double delta = c2.offset - c1.offset;
  // |x-q1|^2 - |x-q2|^2 = alpha + beta*t (the quadratic terms cancel)
  Point u1 = A - c1.anchor;
  Point u2 = A - c2.anchor;
  double alpha = dot(u1, u1) - dot(u2, u2);
  double beta = 2.0 * dot(D, c2.anchor - c1.anchor);

  double scale = 1.0 + std::abs(c1.offset) + std::abs(c2.offset) + norm(u1) + norm(u2) + norm(D);
  std::vector<double> roots;

  if (delta == 0.0) {
    // Perpendicular-bisector case: alpha + beta*t = 0.
    if (std::abs(beta) <= 1e-300) {
      if (std::abs(alpha) <= eps * scale * scale) out.identical = true;  // segment on the bisector
      return out;
    }
    roots.push_back(-alpha / beta);
  } else {
    // |x-q2| = (alpha + beta*t - delta^2) / (2*delta) =: r0 + r1*t, then square.
    double r0 = (alpha - delta * delta) / (2.0 * delta);
    double r1 = beta / (2.0 * delta);
    double qa = dot(D, D) - r1 * r1;
    double qb = 2.0 * dot(D, u2) - 2.0 * r0 * r1;
    double qc = dot(u2, u2) - r0 * r0;
    if (std::abs(qa) <= 1e-14 * (std::abs(qb) + std::abs(qc) + 1.0)) {
      if (qb != 0.0) roots.push_back(-qc / qb);
    } else {
      double disc = qb * qb - 4.0 * qa * qc;
      if (disc >= 0.0) {
        double sq = std::sqrt(disc);
        // Numerically stable pair.
        double q = -0.5 * (qb + (qb >= 0 ? sq : -sq));
        roots.push_back(q / qa);
        if (q != 0.0) roots.push_back(qc / q);
        else roots.push_back(0.0);
      }
    }
  }

  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end(),
                          [](double a, double b) { return std::abs(a - b) < 1e-13; }),
              roots.end());

  double tol = 1e-7;  // admit roots slightly outside, clamp after polish
  for (double t : roots) {
    if (t < -tol || t > 1.0 + tol) continue;
    t = polish_root(c1, c2, seg, t);
    Point x = seg.at(t);
    double v1 = c1.value_at(x);
    double v2 = c2.value_at(x);
    if (std::abs(v1 - v2) > eps * scale) continue;  // spurious root from squaring
    out.hits.push_back({t, 0});
  }
  std::sort(out.hits.begin(), out.hits.end(),
            [](const BisectorHit& a, const BisectorHit& b) { return a.t < b.t; });
  out.hits.erase(std::unique(out.hits.begin(), out.hits.end(),
                             [](const BisectorHit& a, const BisectorHit& b) {
                               return std::abs(a.t - b.t) < 1e-12;
                             }),
                 out.hits.end());

  double prev = 0.0;
  for (auto& h : out.hits) {
    double ts = 0.5 * (prev + h.t);
    if (h.t <= 1e-12) ts = 0.0;
    Point x = seg.at(ts);
    h.smaller_below = c1.value_at(x) <= c2.value_at(x) ? 1 : 2;
    prev = h.t;
  }
  return out;
}

double wrap_angle(double a) {
  while (a > M_PI) a -= 2.0 * M_PI;
  while (a <= -M_PI) a += 2.0 * M_PI;
  return a;
}

}  // namespace geocenter

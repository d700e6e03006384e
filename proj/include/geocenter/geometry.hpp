#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace geocenter {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double s, Point p) { return {s * p.x, s * p.y}; }
inline bool operator==(Point a, Point b) { return a.x == b.x && a.y == b.y; }
inline bool operator!=(Point a, Point b) { return !(a == b); }

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline double dist(Point a, Point b) { return norm(a - b); }
inline Point perp(Point a) { return {-a.y, a.x}; }

inline Point normalize(Point a) {
  double n = norm(a);
  return n > 0 ? Point{a.x / n, a.y / n} : Point{0, 0};
}

/// Parametrized segment x(t) = a + t*(b-a), t in [0,1]. Requires a != b.
struct Segment {
  Point a, b;
  Point at(double t) const { return {a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)}; }
  Point dir() const { return normalize(b - a); }
  double length() const { return dist(a, b); }
};

/// Oriented line; `direction` is unit length. Left half-plane has
/// positive signed offset.
struct DirectedLine {
  Point origin;
  Point direction;
  double signed_offset(Point p) const { return cross(direction, p - origin); }
};

enum class PlaneSide { Left, Right };

struct HalfPlane {
  DirectedLine boundary;
  PlaneSide side = PlaneSide::Left;
  bool contains(Point p, double slack = 0.0) const {
    double d = boundary.signed_offset(p);
    return side == PlaneSide::Left ? d >= -slack : d <= slack;
  }
};

/// Constraint value at x is |x - anchor| + offset (the circle C(anchor, offset)
/// must fit inside any disk of radius >= value centered at x).
struct CircleConstraint {
  Point anchor;
  double offset = 0.0;
  double value_at(Point p) const { return dist(p, anchor) + offset; }
};

/// Sign of twice the signed area of triangle abc. Exact: a filtered double
/// evaluation falls back to expansion arithmetic, so collinearity is decided
/// without a tolerance.
int orient(Point a, Point b, Point c);

/// The plain double determinant, for magnitude estimates.
double orient_value(Point a, Point b, Point c);

/// True if segments pq and rs share at least one point (touching counts).
/// Exact, via orient.
bool segments_intersect(Point p, Point q, Point r, Point s);

/// True if c lies on the closed segment ab (exact).
bool on_segment(Point a, Point b, Point c);

struct BisectorHit {
  double t;                 // parameter on the query segment
  int smaller_below;        // 1 or 2: which constraint has smaller value just below t
};

struct BisectorHits {
  std::vector<BisectorHit> hits;  // sorted ascending, at most 2
  bool identical = false;         // constraints equal everywhere (same anchor and offset)
};

/// All t in [0,1] where |x(t)-q1|+f1 == |x(t)-q2|+f2. Solved algebraically
/// (isolate one root, square, quadratic) with spurious roots rejected by
/// back-substitution.
BisectorHits covering_bisector_hits(const CircleConstraint& c1, const CircleConstraint& c2,
                                    const Segment& seg, double eps = 1e-9);

/// Rigid rotation about a pivot; apply/invert compose to identity within 1e-12.
struct Rotation {
  Point pivot;
  double c = 1.0, s = 0.0;
  static Rotation about(Point pivot, double angle) {
    return {pivot, std::cos(angle), std::sin(angle)};
  }
  Point apply(Point p) const {
    Point d = p - pivot;
    return {pivot.x + c * d.x - s * d.y, pivot.y + s * d.x + c * d.y};
  }
  Point invert(Point p) const {
    Point d = p - pivot;
    return {pivot.x + c * d.x + s * d.y, pivot.y - s * d.x + c * d.y};
  }
  Point apply_dir(Point d) const { return {c * d.x - s * d.y, s * d.x + c * d.y}; }
  Point invert_dir(Point d) const { return {c * d.x + s * d.y, -s * d.x + c * d.y}; }
};

/// Normalizes an angle to (-pi, pi].
double wrap_angle(double a);

}  // namespace geocenter

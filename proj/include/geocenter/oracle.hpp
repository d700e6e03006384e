#pragma once

#include <utility>
#include <vector>

#include "geocenter/geometry.hpp"
#include "geocenter/polygon.hpp"

namespace geocenter::oracle {

/// Brute-force geodesic ground truth: visibility graph plus all-pairs
/// vertex distances (Floyd-Warshall). Independent of the streaming
/// pipeline; shares only the exact geometry predicates. O(n^3) time and
/// O(n^2) space, exempt from workspace metering.
class BruteGeodesic {
 public:
  explicit BruteGeodesic(const Polygon& poly);

  double distance(Point p, Point q) const;
  /// g(p) = max over vertices of d_P(p, v).
  double max_vertex_distance(Point p) const;
  std::vector<double> vertex_distances(Point p) const;
  bool visible(Point p, Point q) const;
  const Polygon& polygon() const { return poly_; }

 private:
  const Polygon& poly_;
  int n_;
  std::vector<double> vdist_;  // n x n geodesic distances
};

/// Golden-section minimizer of the convex g(t) along a segment.
std::pair<double, double> brute_constrained_center(const BruteGeodesic& bg, const Segment& seg,
                                                   double tol_t = 1e-10);

/// Clipped-grid scan followed by nested 1D convex searches and a shrinking
/// compass polish.
std::pair<Point, double> brute_center(const BruteGeodesic& bg, int grid_k = 256,
                                      int refine_iters = 90);

/// Smallest circle enclosing circles: support-set enumeration (sizes 1-3,
/// damped Newton for the equal-value systems) cross-checked by a nested 1D
/// convex search.
std::pair<Point, double> brute_min_circle_of_circles(const std::vector<CircleConstraint>& circles);

/// The nested-search cross-check alone (used by tests).
std::pair<Point, double> min_circle_nested_search(const std::vector<CircleConstraint>& circles);

}  // namespace geocenter::oracle

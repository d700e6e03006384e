#pragma once

#include <array>

#include "geocenter/chord_center.hpp"
#include "geocenter/run.hpp"

namespace geocenter {

/// Convex subregion of the located triangle with constant SPT combinatorics.
struct Region {
  std::vector<Point> poly;  // triangle clipped by the accumulated half-planes (CCW)
  Point rep;                // interior representative (centroid of the clip)
  uint64_t fingerprint = 0;
};

struct CenterResult {
  Point center;
  double radius = 0.0;
  std::vector<int> support;  // witness farthest vertices
  WorkspaceReport report;
};

struct SideOutcome {
  bool center_found = false;
  Point center;
  double radius = 0.0;
  double side = 0.0;  // sign of dot(cone bisector, normal)
};

/// Solves the constrained center on the segment, then classifies: a farthest
/// direction cone spanning >= pi certifies the global center; otherwise the
/// cone bisector picks the side of the line.
SideOutcome decide_line_side(RunContext& ctx, Segment seg, Point normal);

struct TriangleOrCenter {
  bool center_found = false;
  Point center;
  double radius = 0.0;
  std::array<Point, 3> tri;
};

/// Balanced-chord recursion down to a constant-size region, then a
/// triangulation walk guided by per-diagonal side tests.
TriangleOrCenter locate_triangle(RunContext& ctx, double shear);

struct RegionOrCenter {
  bool center_found = false;
  Point center;
  double radius = 0.0;
  Region region;
};

/// Median-slope rotation, +/- slope pairing, x/y-median oracles; each round
/// adds two half-planes and drops every line that no longer crosses the
/// region. Survivor lines are resolved directly.
RegionOrCenter line_prune_rounds(RunContext& ctx, const std::array<Point, 3>& tri);

/// Final convex program over the region's circles: outer bisection on x,
/// inner 1D circle solves on vertical slices, subgradient side decisions.
CenterResult solve_in_region(RunContext& ctx, const Region& region);

struct SolveConfig {
  long long s = 64;
  uint64_t seed = 1;
  double eps = 1e-9;
  WorkspaceBudget::Policy policy = WorkspaceBudget::Policy::Record;
};

/// The full pipeline under one workspace meter.
CenterResult geodesic_center(const Polygon& poly, const SolveConfig& cfg,
                             PruneAudit* audit = nullptr, MedianStats* median_stats = nullptr);

}  // namespace geocenter

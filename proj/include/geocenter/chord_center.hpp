#pragma once

#include <span>

#include "geocenter/run.hpp"

namespace geocenter {

enum class SideDecision { Optimal, MoveTowardB, MoveTowardA };

/// Intersections of the full lines through all edges of ST(seg.a) and
/// ST(seg.b) with seg, as parameters t in [0,1]; emitted in replay order,
/// never stored. Lines parallel or collinear with seg emit nothing.
StreamFactory<double> intersection_stream(RunContext& ctx, Segment seg);

/// Lemma-2 style one-sided derivative test at a point of the chord: both
/// projection signs of the farthest first-edge directions (or a zero)
/// certify the constrained optimum; otherwise the optimum lies toward the
/// common sign.
SideDecision chord_side_test(RunContext& ctx, Point x, Point seg_dir, double eps);

struct ChordInterval {
  Segment host;
  double t_lo = 0.0, t_hi = 1.0;
  long long m_estimate = 0;
  bool optimal = false;  // side test certified the optimum at t_lo == t_hi
};

/// Shrinks [0,1] by randomized approximate medians of the intersection
/// sequence until no stream point lies strictly inside; the SPT is
/// combinatorially constant on the result.
ChordInterval stable_subinterval(RunContext& ctx, Segment seg);

struct SegmentMin {
  double t = 0.0;
  double value = 0.0;
};

/// Direct minimizer of g(t) = max_i (|x(t) - q_i| + f_i) over a window,
/// for a constant number of circles: evaluates window ends, clamped foot
/// points and pairwise bisector hits; g is convex on the window.
SegmentMin base_case_segment(std::span<const CircleConstraint> circles, const Segment& seg,
                             double t_lo, double t_hi);

struct ConstrainedResult {
  Point point;
  double radius = 0.0;
  double t = 0.0;
  DecisionTrace trace;
};

/// Constrained geodesic center on a segment inside P: stable subinterval,
/// then the streaming tournament over root-child circles with two-stage
/// median windows, finished by the direct base case.
ConstrainedResult constrained_geodesic_center(RunContext& ctx, Segment seg);

/// Same tournament machinery over an explicit replayable circle stream,
/// with side decisions taken from the circles themselves. Used where the
/// SPT is already constant (the final region solve).
SegmentMin minimize_circles_on_segment(RunContext& ctx,
                                       const ReplaySourcePtr<CircleConstraint>& circles,
                                       const Segment& seg, double t_lo, double t_hi);

/// max_i value_i(x) over one pass of the circle stream.
double max_circle_value(const StreamFactory<CircleConstraint>& circles, Point x);

}  // namespace geocenter

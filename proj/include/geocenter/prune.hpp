#pragma once

#include <optional>

#include "geocenter/geometry.hpp"
#include "geocenter/rng.hpp"
#include "geocenter/streams.hpp"

namespace geocenter {

struct MedianStats {
  long long calls = 0;
  long long attempts = 0;
};

struct MedianResult {
  double value = 0.0;
  long long in_window = 0;
  int attempts = 0;
};

/// Picks an element of the stream (filtered to the open window) whose rank
/// lies in [m/4, 3m/4]; ties count as in-range. Each attempt is one
/// single-element reservoir pass plus one rank-counting pass; expected
/// attempts <= 2. nullopt when the window is empty.
std::optional<MedianResult> approx_median(const StreamFactory<double>& stream, double lo,
                                          double hi, Rng& rng, MedianStats* stats = nullptr);

/// O(1)-word record of one tournament level: the localization window J.
struct LevelDecision {
  double j_lo = 0.0, j_hi = 1.0;
};

struct DecisionTrace {
  std::vector<LevelDecision> levels;
};

/// Soundness audit for pruned circles (sampled dominance checks).
struct PruneAudit {
  int samples = 100;
  double tol = 1e-9;
  long long checks = 0;
  long long violations = 0;
};

/// Pairs consecutive upstream circles; a pair whose covering bisector does
/// not cross the open window J on `seg` emits only the member that dominates
/// (has the larger constraint value) on J; otherwise both advance (draw).
/// An odd leftover advances as a draw. Deterministic given (upstream, J).
StreamFactory<CircleConstraint> pair_prune_level(StreamFactory<CircleConstraint> upstream,
                                                 Segment seg, LevelDecision J,
                                                 PruneAudit* audit = nullptr);

/// Replays the active stream at the depth of the full trace by chaining one
/// pair_prune_level per recorded level.
StreamFactory<CircleConstraint> replay_levels(StreamFactory<CircleConstraint> base,
                                              const DecisionTrace& trace, Segment seg,
                                              PruneAudit* audit = nullptr);

template <class T>
long long count_stream(const StreamFactory<T>& f) {
  auto s = f();
  long long n = 0;
  T v;
  while (s->next(v)) ++n;
  return n;
}

}  // namespace geocenter

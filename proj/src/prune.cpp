#include "geocenter/prune.hpp"

#include <cmath>
#include <stdexcept>

namespace geocenter {

std::optional<MedianResult> approx_median(const StreamFactory<double>& stream, double lo,
                                          double hi, Rng& rng, MedianStats* stats) {
  if (stats) ++stats->calls;
  for (int attempt = 1; attempt <= 256; ++attempt) {
    if (stats) ++stats->attempts;
    // Reservoir pass: uniform pick among in-window elements, O(1) words.
    long long k = 0;
    double pick = 0.0;
    {
      auto s = stream();
      double v;
      while (s->next(v)) {
        if (!(v > lo && v < hi)) continue;
        ++k;
        if (rng.bounded(static_cast<uint64_t>(k)) == 0) pick = v;
      }
    }
    if (k == 0) return std::nullopt;
    // Rank pass. Elements strictly below the pick count toward its rank;
    // equal elements are in-range by convention.
    long long below = 0, equal = 0;
    {
      auto s = stream();
      double v;
      while (s->next(v)) {
        if (!(v > lo && v < hi)) continue;
        if (v < pick) ++below;
        else if (v == pick) ++equal;
      }
    }
    double m = static_cast<double>(k);
    if (static_cast<double>(below + equal) >= 0.25 * m &&
        static_cast<double>(below + 1) <= 0.75 * m) {
      return MedianResult{pick, k, attempt};
    }
  }
  throw std::runtime_error("approx_median failed to converge (astronomically unlikely)");
}

StreamFactory<CircleConstraint> pair_prune_level(StreamFactory<CircleConstraint> upstream,
                                                 Segment seg, LevelDecision J,
                                                 PruneAudit* audit) {
  return [upstream, seg, J, audit]() -> StreamPtr<CircleConstraint> {
    struct St {
      StreamPtr<CircleConstraint> in;
      CircleConstraint pending;
      bool has_pending = false;
      bool exhausted = false;
    };
    auto st = std::make_shared<St>();
    st->in = upstream();
    return make_stream<CircleConstraint>([st, seg, J, audit](CircleConstraint& out) {
      for (;;) {
        if (st->has_pending) {
          out = st->pending;
          st->has_pending = false;
          return true;
        }
        if (st->exhausted) return false;
        CircleConstraint c1, c2;
        if (!st->in->next(c1)) {
          st->exhausted = true;
          return false;
        }
        if (!st->in->next(c2)) {
          st->exhausted = true;
          out = c1;  // odd leftover advances as a draw
          return true;
        }
        BisectorHits bh = covering_bisector_hits(c1, c2, seg);
        bool crosses = false;
        for (const BisectorHit& h : bh.hits) {
          if (h.t > J.j_lo && h.t < J.j_hi) crosses = true;
        }
        if (bh.identical || !crosses) {
          // Dominance order is constant on J; keep the covering member.
          Point mid = seg.at(0.5 * (J.j_lo + J.j_hi));
          bool first = c1.value_at(mid) >= c2.value_at(mid);
          const CircleConstraint& win = first ? c1 : c2;
          if (audit) {
            const CircleConstraint& lose = first ? c2 : c1;
            double scale = 1.0 + std::abs(win.offset) + norm(win.anchor - seg.a);
            for (int i = 0; i < audit->samples; ++i) {
              double t = J.j_lo + (J.j_hi - J.j_lo) * (i + 0.5) / audit->samples;
              Point x = seg.at(t);
              ++audit->checks;
              if (lose.value_at(x) > win.value_at(x) + audit->tol * scale) ++audit->violations;
            }
          }
          out = win;
          return true;
        }
        out = c1;  // draw: both advance in order
        st->pending = c2;
        st->has_pending = true;
        return true;
      }
    });
  };
}

StreamFactory<CircleConstraint> replay_levels(StreamFactory<CircleConstraint> base,
                                              const DecisionTrace& trace, Segment seg,
                                              PruneAudit* audit) {
  StreamFactory<CircleConstraint> f = std::move(base);
  for (const LevelDecision& d : trace.levels) {
    f = pair_prune_level(std::move(f), seg, d, audit);
  }
  return f;
}

}  // namespace geocenter

#include "geocenter/chord_center.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace geocenter {

StreamFactory<double> intersection_stream(RunContext& ctx, Segment seg) {
  SptProvider* prov = ctx.prov;
  return [prov, seg]() -> StreamPtr<double> {
    struct St {
      SptProvider* prov;
      Segment seg;
      StreamPtr<SptEdge> in;
      Point root;
      int phase = 0;
    };
    auto st = std::make_shared<St>();
    st->prov = prov;
    st->seg = seg;
    st->root = seg.a;
    st->in = prov->open(seg.a);
    const Polygon* poly = &prov->polygon();
    return make_stream<double>([st, poly](double& out) {
      for (;;) {
        SptEdge e;
        if (!st->in->next(e)) {
          if (st->phase == 0) {
            st->phase = 1;
            st->root = st->seg.b;
            st->in = st->prov->open(st->seg.b);
            continue;
          }
          return false;
        }
        Point pp = e.parent < 0 ? st->root : poly->vertex(e.parent);
        Point d = e.child_point - pp;
        if (d.x == 0.0 && d.y == 0.0) continue;
        double denom = cross(d, st->seg.b - st->seg.a);
        if (denom == 0.0) continue;  // parallel or collinear: no emission
        double t = cross(d, pp - st->seg.a) / denom;
        if (t >= 0.0 && t <= 1.0) {
          out = t;
          return true;
        }
      }
    });
  };
}

SideDecision chord_side_test(RunContext& ctx, Point x, Point seg_dir, double eps) {
  FarthestInfo info = farthest_neighbors(*ctx.prov, x, ctx.eps_abs());
  bool pos = false, neg = false, zero = false;
  if (info.count <= static_cast<int>(info.first_dirs.size())) {
    for (Point d : info.first_dirs) {
      double p = dot(d, seg_dir);
      if (std::abs(p) <= eps) zero = true;
      else if (p > 0) pos = true;
      else neg = true;
    }
  } else {
    const Cone& c = info.cone;
    if (c.full) return SideDecision::Optimal;
    auto dir_at = [&](double th) -> Point {
      return {c.ref.x * std::cos(th) - c.ref.y * std::sin(th),
              c.ref.x * std::sin(th) + c.ref.y * std::cos(th)};
    };
    double pmax = std::max(dot(dir_at(c.lo), seg_dir), dot(dir_at(c.hi), seg_dir));
    double pmin = std::min(dot(dir_at(c.lo), seg_dir), dot(dir_at(c.hi), seg_dir));
    double th_dir = wrap_angle(std::atan2(cross(c.ref, seg_dir), dot(c.ref, seg_dir)));
    if (th_dir >= c.lo && th_dir <= c.hi) pmax = 1.0;
    double th_opp = wrap_angle(th_dir + M_PI);
    if (th_opp >= c.lo && th_opp <= c.hi) pmin = -1.0;
    pos = pmax > eps;
    neg = pmin < -eps;
    zero = pmax >= -eps && pmin <= eps;
  }
  if ((pos && neg) || zero) return SideDecision::Optimal;
  return pos ? SideDecision::MoveTowardB : SideDecision::MoveTowardA;
}

namespace {

StreamFactory<double> window_filter(const ReplaySourcePtr<double>& src, double lo, double hi) {
  return [src, lo, hi]() -> StreamPtr<double> {
    auto s = std::make_shared<StreamPtr<double>>(src->open());
    return make_stream<double>([s, lo, hi](double& out) {
      double v;
      while ((*s)->next(v)) {
        if (v > lo && v < hi) {
          out = v;
          return true;
        }
      }
      return false;
    });
  };
}

}  // namespace

ChordInterval stable_subinterval(RunContext& ctx, Segment seg) {
  ChordInterval out{seg, 0.0, 1.0, 0, false};
  ReplaySourcePtr<double> src =
      make_replay_source<double>(intersection_stream(ctx, seg), ctx.ws, 1);
  CoreBlock chain_mem;
  if (ctx.ws) chain_mem = CoreBlock(*ctx.ws, 8);
  long long links = 1;
  Point sdir = seg.dir();
  for (int iter = 0; iter < 4096; ++iter) {
    auto med = approx_median([src]() { return src->open(); }, out.t_lo, out.t_hi, *ctx.rng,
                             ctx.median_stats);
    if (!med) break;
    if (iter == 0) out.m_estimate = med->in_window;
    double t = med->value;
    SideDecision sd = chord_side_test(ctx, seg.at(t), sdir, ctx.eps);
    if (sd == SideDecision::Optimal) {
      out.t_lo = out.t_hi = t;
      out.optimal = true;
      return out;
    }
    if (sd == SideDecision::MoveTowardB) out.t_lo = t;
    else out.t_hi = t;
    src = make_replay_source<double>(window_filter(src, out.t_lo, out.t_hi), ctx.ws, 1);
    ++links;
    if (ctx.ws) chain_mem.resize(8 * links);
  }
  return out;
}

double max_circle_value(const StreamFactory<CircleConstraint>& circles, Point x) {
  auto s = circles();
  CircleConstraint c;
  double v = -std::numeric_limits<double>::infinity();
  while (s->next(c)) v = std::max(v, c.value_at(x));
  return v;
}

SegmentMin base_case_segment(std::span<const CircleConstraint> circles, const Segment& seg,
                             double t_lo, double t_hi) {
  if (circles.empty()) return {t_lo, 0.0};
  auto eval = [&](double t) {
    Point x = seg.at(t);
    double v = -std::numeric_limits<double>::infinity();
    for (const CircleConstraint& c : circles) v = std::max(v, c.value_at(x));
    return v;
  };
  double best_t = t_lo, best_v = eval(t_lo);
  auto consider = [&](double t) {
    if (!(t >= t_lo && t <= t_hi)) return;
    double v = eval(t);
    if (v < best_v || (v == best_v && t < best_t)) {
      best_v = v;
      best_t = t;
    }
  };
  consider(t_hi);
  Point D = seg.b - seg.a;
  double dd = dot(D, D);
  for (const CircleConstraint& c : circles) consider(dot(c.anchor - seg.a, D) / dd);
  for (size_t i = 0; i < circles.size(); ++i) {
    for (size_t j = i + 1; j < circles.size(); ++j) {
      BisectorHits bh = covering_bisector_hits(circles[i], circles[j], seg);
      for (const BisectorHit& h : bh.hits) consider(h.t);
    }
  }
  return {best_t, best_v};
}

namespace {

enum class SideStrategy { Spt, Circles };

// Bisector hits of consecutive pairs of the level stream, restricted to the
// open window; stage-2 mode keeps only pairs with a hit on the non-solution
// side and emits their solution-side hits.
struct HitStreamCfg {
  ReplaySourcePtr<CircleConstraint> level;
  Segment seg;
  double lo, hi;          // emission window
  bool stage2 = false;
  double nlo = 0, nhi = 0;  // non-solution side (stage 2)
};

StreamFactory<double> pair_hits_stream(HitStreamCfg cfg) {
  return [cfg]() -> StreamPtr<double> {
    struct St {
      StreamPtr<CircleConstraint> in;
      double pend[2];
      int npend = 0, ipend = 0;
      bool done = false;
    };
    auto st = std::make_shared<St>();
    st->in = cfg.level->open();
    return make_stream<double>([st, cfg](double& out) {
      for (;;) {
        if (st->ipend < st->npend) {
          out = st->pend[st->ipend++];
          return true;
        }
        if (st->done) return false;
        CircleConstraint c1, c2;
        if (!st->in->next(c1) || !st->in->next(c2)) {
          st->done = true;
          return false;
        }
        st->npend = st->ipend = 0;
        BisectorHits bh = covering_bisector_hits(c1, c2, cfg.seg);
        bool cross_nonsol = false;
        if (cfg.stage2) {
          for (const BisectorHit& h : bh.hits) {
            if (h.t > cfg.nlo && h.t < cfg.nhi) cross_nonsol = true;
          }
          if (!cross_nonsol) continue;
        }
        for (const BisectorHit& h : bh.hits) {
          if (h.t > cfg.lo && h.t < cfg.hi) st->pend[st->npend++] = h.t;
        }
      }
    });
  };
}

SideDecision circle_side_test(const ReplaySourcePtr<CircleConstraint>& base, Segment seg,
                              double t, double eps, double scale) {
  Point x = seg.at(t);
  double maxv = -std::numeric_limits<double>::infinity();
  {
    auto s = base->open();
    CircleConstraint c;
    while (s->next(c)) maxv = std::max(maxv, c.value_at(x));
  }
  double tol = 1e-12 * (std::abs(maxv) + scale);
  Point sdir = seg.dir();
  bool pos = false, neg = false, zero = false;
  {
    auto s = base->open();
    CircleConstraint c;
    while (s->next(c)) {
      if (c.value_at(x) < maxv - tol) continue;
      Point r = x - c.anchor;
      double d = norm(r);
      if (d <= tol) {
        zero = true;  // cone apex: kink with both signs
        continue;
      }
      double deriv = dot(r, sdir) / d;
      if (std::abs(deriv) <= eps) zero = true;
      else if (deriv > 0) pos = true;
      else neg = true;
    }
  }
  if ((pos && neg) || zero) return SideDecision::Optimal;
  // All argmax values increase toward B: the optimum lies toward A.
  return pos ? SideDecision::MoveTowardA : SideDecision::MoveTowardB;
}

struct TournamentOutcome {
  double t = 0.0;
};

TournamentOutcome run_tournament(RunContext& ctx, const ReplaySourcePtr<CircleConstraint>& base,
                                 Segment seg, double lo0, double hi0, SideStrategy strat,
                                 DecisionTrace& trace) {
  constexpr long long kBaseCase = 24;
  ReplaySourcePtr<CircleConstraint> level = base;
  double lo = lo0, hi = hi0;
  CoreBlock depth_mem;
  if (ctx.ws) depth_mem = CoreBlock(*ctx.ws, 16);
  long long depth = 1;

  auto side_test = [&](double t) {
    if (strat == SideStrategy::Spt) return chord_side_test(ctx, seg.at(t), seg.dir(), ctx.eps);
    return circle_side_test(base, seg, t, ctx.eps, ctx.scale);
  };

  for (int round = 0; round < 4096; ++round) {
    long long active = count_stream<CircleConstraint>([&level]() { return level->open(); });
    if (active <= kBaseCase) {
      CoreBlock buf;
      if (ctx.ws) buf = CoreBlock(*ctx.ws, active * 3 + 2);
      std::vector<CircleConstraint> circles;
      circles.reserve(active);
      auto s = level->open();
      CircleConstraint c;
      while (s->next(c)) circles.push_back(c);
      SegmentMin sm = base_case_segment(circles, seg, lo, hi);
      return {sm.t};
    }

    LevelDecision J{lo, hi};
    auto med1 = approx_median(pair_hits_stream({level, seg, lo, hi}), lo, hi, *ctx.rng,
                              ctx.median_stats);
    if (med1) {
      double x1 = med1->value;
      SideDecision s1 = side_test(x1);
      if (s1 == SideDecision::Optimal) return {x1};
      bool sol_right = (s1 == SideDecision::MoveTowardB);
      double slo = sol_right ? x1 : lo;
      double shi = sol_right ? hi : x1;
      double nlo = sol_right ? lo : x1;
      double nhi = sol_right ? x1 : hi;
      auto med2 = approx_median(pair_hits_stream({level, seg, slo, shi, true, nlo, nhi}), slo,
                                shi, *ctx.rng, ctx.median_stats);
      if (!med2) {
        J = {slo, shi};
      } else {
        double x2 = med2->value;
        SideDecision s2 = side_test(x2);
        if (s2 == SideDecision::Optimal) return {x2};
        if (s2 == SideDecision::MoveTowardB) J = {x2, shi};
        else J = {slo, x2};
      }
    }
    trace.levels.push_back(J);
    lo = J.j_lo;
    hi = J.j_hi;
    auto level_cap = level;
    auto next_fact =
        pair_prune_level([level_cap]() { return level_cap->open(); }, seg, J, ctx.audit);
    level = make_replay_source<CircleConstraint>(std::move(next_fact), ctx.ws, 3);
    ++depth;
    if (ctx.ws) depth_mem.resize(16 + 12 * depth);
  }
  throw std::runtime_error("circle tournament failed to converge");
}

}  // namespace

ConstrainedResult constrained_geodesic_center(RunContext& ctx, Segment seg) {
  ConstrainedResult out;
  ChordInterval iv = stable_subinterval(ctx, seg);
  if (iv.optimal) {
    out.t = iv.t_lo;
    out.point = seg.at(out.t);
    out.radius = farthest_neighbors(*ctx.prov, out.point, ctx.eps_abs()).distance;
    return out;
  }
  double xhat = 0.5 * (iv.t_lo + iv.t_hi);
  auto circles = make_replay_source<CircleConstraint>(
      root_child_circles(*ctx.prov, seg.at(xhat)), ctx.ws, 3);
  TournamentOutcome t =
      run_tournament(ctx, circles, seg, iv.t_lo, iv.t_hi, SideStrategy::Spt, out.trace);
  out.t = t.t;
  out.point = seg.at(t.t);
  out.radius = max_circle_value([circles]() { return circles->open(); }, out.point);
  return out;
}

SegmentMin minimize_circles_on_segment(RunContext& ctx,
                                       const ReplaySourcePtr<CircleConstraint>& circles,
                                       const Segment& seg, double t_lo, double t_hi) {
  DecisionTrace scratch;
  TournamentOutcome t =
      run_tournament(ctx, circles, seg, t_lo, t_hi, SideStrategy::Circles, scratch);
  double v = max_circle_value([circles]() { return circles->open(); }, seg.at(t.t));
  return {t.t, v};
}

}  // namespace geocenter

#include "geocenter/center.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace geocenter {

namespace {

double half_angle(double a) {
  while (a > M_PI / 2) a -= M_PI;
  while (a <= -M_PI / 2) a += M_PI;
  return a;
}

Point centroid(const std::vector<Point>& pts) {
  Point c{0, 0};
  for (Point p : pts) c = c + p;
  return {c.x / pts.size(), c.y / pts.size()};
}

// Sutherland-Hodgman step: keep f(v) >= 0 with f affine.
std::vector<Point> clip_halfplane(const std::vector<Point>& poly,
                                  const std::function<double(Point)>& f) {
  std::vector<Point> out;
  int k = static_cast<int>(poly.size());
  for (int i = 0; i < k; ++i) {
    Point a = poly[i], b = poly[(i + 1) % k];
    double fa = f(a), fb = f(b);
    if (fa >= 0) out.push_back(a);
    if ((fa > 0 && fb < 0) || (fa < 0 && fb > 0)) {
      double t = fa / (fa - fb);
      out.push_back(a + t * (b - a));
    }
  }
  return out;
}

double poly_area2(const std::vector<Point>& pts) {
  double a = 0;
  int k = static_cast<int>(pts.size());
  for (int i = 0; i < k; ++i) a += cross(pts[i], pts[(i + 1) % k]);
  return a;
}

// Clip the infinite line (p, d) to a convex CCW polygon; nullopt if it misses.
std::optional<Segment> clip_line(const std::vector<Point>& poly, Point p, Point d) {
  double tlo = -std::numeric_limits<double>::infinity();
  double thi = std::numeric_limits<double>::infinity();
  int k = static_cast<int>(poly.size());
  for (int i = 0; i < k; ++i) {
    Point a = poly[i], b = poly[(i + 1) % k];
    Point e = b - a;
    double num = cross(e, p - a);   // f(t) = num + t*den >= 0 keeps inside
    double den = cross(e, d);
    if (den == 0.0) {
      if (num < 0) return std::nullopt;
      continue;
    }
    double t = -num / den;
    if (den > 0) tlo = std::max(tlo, t);
    else thi = std::min(thi, t);
  }
  if (!(tlo < thi)) return std::nullopt;
  return Segment{p + tlo * d, p + thi * d};
}

bool line_crosses_poly(const std::vector<Point>& poly, Point p, Point d, double tol) {
  bool pos = false, neg = false;
  double dn = norm(d);
  if (dn == 0) return false;
  for (Point v : poly) {
    double off = cross(d, v - p) / dn;
    if (off > tol) pos = true;
    else if (off < -tol) neg = true;
  }
  return pos && neg;
}

}  // namespace

SideOutcome decide_line_side(RunContext& ctx, Segment seg, Point normal) {
  ConstrainedResult c = constrained_geodesic_center(ctx, seg);
  FarthestInfo info = farthest_neighbors(*ctx.prov, c.point, ctx.eps_abs());
  SideOutcome out;
  out.center = c.point;
  out.radius = c.radius;
  if (!info.cone.any || info.cone.full || info.cone.span() >= M_PI - ctx.eps) {
    out.center_found = true;
    return out;
  }
  double p = dot(info.cone.bisector(), normal);
  if (std::abs(p) <= ctx.eps) {
    out.center_found = true;
    return out;
  }
  out.side = p > 0 ? 1.0 : -1.0;
  return out;
}

TriangleOrCenter locate_triangle(RunContext& ctx, double shear) {
  const Polygon& poly = ctx.polygon();
  constexpr int kCutoff = 12;
  ChordedRegion region(&poly, shear);
  CoreBlock region_mem;
  if (ctx.ws) region_mem = CoreBlock(*ctx.ws, region.words());
  Point sx_normal = normalize(Point{1.0, shear});

  while (region.run_vertex_count() > kCutoff) {
    BalancedChord bc = balanced_vertical_chord(region, ctx.ws);
    Segment chord_seg{bc.chord.lower, bc.chord.upper};
    SideOutcome so = decide_line_side(ctx, chord_seg, sx_normal);
    if (so.center_found) return {true, so.center, so.radius, {}};
    ChordedRegion fwd = split_region(region, bc, ChordSide::Forward);
    double fwd_side = region_sx_side(fwd, bc.chord.sx);
    if (fwd_side * so.side > 0) {
      region = std::move(fwd);
    } else {
      region = split_region(region, bc, ChordSide::Backward);
    }
    if (ctx.ws) region_mem.resize(region.words());
  }

  std::vector<Point> small = region.materialize();
  if (small.size() < 3) throw GeometryError("region degenerated below a triangle");
  CoreBlock small_mem;
  if (ctx.ws) small_mem = CoreBlock(*ctx.ws, static_cast<long long>(small.size()) * 8 + 16);
  int k = static_cast<int>(small.size());
  if (k == 3) return {false, {}, 0.0, {small[0], small[1], small[2]}};

  auto tris = ear_clip_triangulate(small);
  // Edge -> adjacent triangles.
  std::map<std::pair<int, int>, std::pair<int, int>> by_edge;
  for (int t = 0; t < static_cast<int>(tris.size()); ++t) {
    int c[3] = {tris[t].a, tris[t].b, tris[t].c};
    for (int e = 0; e < 3; ++e) {
      auto key = std::minmax(c[e], c[(e + 1) % 3]);
      auto it = by_edge.find(key);
      if (it == by_edge.end()) by_edge[key] = {t, -1};
      else it->second.second = t;
    }
  }
  auto is_boundary = [&](int i, int j) {
    auto mm = std::minmax(i, j);
    return (mm.second == mm.first + 1) || (mm.first == 0 && mm.second == k - 1);
  };

  std::map<std::pair<int, int>, double> decided;  // +1: toward larger tri index side
  int cur = 0;
  for (int steps = 0; steps <= static_cast<int>(tris.size()) + 1; ++steps) {
    int c[3] = {tris[cur].a, tris[cur].b, tris[cur].c};
    int move_to = -1;
    for (int e = 0; e < 3 && move_to < 0; ++e) {
      int i = c[e], j = c[(e + 1) % 3];
      if (is_boundary(i, j)) continue;
      auto key = std::minmax(i, j);
      auto adj = by_edge[key];
      int nb = adj.first == cur ? adj.second : adj.first;
      if (nb < 0) continue;
      double side;
      auto it = decided.find(key);
      if (it != decided.end()) {
        side = it->second;
      } else {
        Segment diag{small[key.first], small[key.second]};
        // Normal pointing toward the neighbor triangle's far corner.
        int nc[3] = {tris[nb].a, tris[nb].b, tris[nb].c};
        int far = nc[0] + nc[1] + nc[2] - key.first - key.second;
        Point n0 = perp(normalize(diag.b - diag.a));
        if (dot(small[far] - diag.a, n0) < 0) n0 = -1.0 * n0;
        SideOutcome so = decide_line_side(ctx, diag, n0);
        if (so.center_found) return {true, so.center, so.radius, {}};
        side = so.side;  // +1: toward the neighbor
        decided[key] = side;
        if (side > 0) move_to = nb;
        continue;
      }
      // Cached decision: re-orient relative to the current triangle.
      // `decided` stored sign toward the neighbor at decision time; the walk
      // never re-crosses a diagonal, so a cached value means "stay".
      (void)side;
    }
    if (move_to < 0) {
      return {false, {}, 0.0,
              {small[tris[cur].a], small[tris[cur].b], small[tris[cur].c]}};
    }
    cur = move_to;
  }
  throw GeometryError("triangulation walk did not settle");
}

RegionOrCenter line_prune_rounds(RunContext& ctx, const std::array<Point, 3>& tri) {
  const Polygon& poly = ctx.polygon();
  std::vector<Point> clip{tri[0], tri[1], tri[2]};
  if (poly_area2(clip) < 0) std::swap(clip[1], clip[2]);
  CoreBlock clip_mem;
  if (ctx.ws) clip_mem = CoreBlock(*ctx.ws, 64);
  double tol = 1e-12 * ctx.scale;

  struct LineRef {
    Point p, q;
  };
  auto roots = tri;
  // All lines through SPT edges of the three corners, filtered to the
  // current region; one pass = three SPT replays.
  auto lines_fact = [&ctx, roots](std::vector<Point> snap, double tol2) -> StreamFactory<LineRef> {
    SptProvider* prov = ctx.prov;
    return [prov, roots, snap = std::move(snap), tol2]() -> StreamPtr<LineRef> {
      struct St {
        SptProvider* prov;
        std::array<Point, 3> roots;
        StreamPtr<SptEdge> in;
        int phase = 0;
      };
      auto st = std::make_shared<St>();
      st->prov = prov;
      st->roots = roots;
      st->in = prov->open(roots[0]);
      const Polygon* pg = &prov->polygon();
      auto snapc = std::make_shared<std::vector<Point>>(snap);
      return make_stream<LineRef>([st, pg, snapc, tol2](LineRef& out) {
        for (;;) {
          SptEdge e;
          if (!st->in->next(e)) {
            if (st->phase < 2) {
              ++st->phase;
              st->in = st->prov->open(st->roots[st->phase]);
              continue;
            }
            return false;
          }
          Point pp = e.parent < 0 ? st->roots[st->phase] : pg->vertex(e.parent);
          if (pp == e.child_point) continue;
          if (!line_crosses_poly(*snapc, pp, e.child_point - pp, tol2)) continue;
          out = {pp, e.child_point};
          return true;
        }
      });
    };
  };

  auto count_active = [&](const std::vector<Point>& snap) {
    auto f = lines_fact(snap, tol);
    auto s = f();
    LineRef l;
    long long n = 0;
    while (s->next(l)) ++n;
    return n;
  };

  auto apply_cut = [&](Point on_line, Point dir, Point normal) -> std::optional<SideOutcome> {
    // Oracle on the line clipped to the region; clips `clip` by the returned
    // half-plane. Returns a SideOutcome only when the global center is found.
    if (!line_crosses_poly(clip, on_line, dir, tol)) return std::nullopt;
    auto segopt = clip_line(clip, on_line, dir);
    if (!segopt || dist(segopt->a, segopt->b) <= tol) return std::nullopt;
    SideOutcome so = decide_line_side(ctx, *segopt, normal);
    if (so.center_found) return so;
    double sgn = so.side;
    auto next = clip_halfplane(clip, [on_line, normal, sgn](Point v) {
      return sgn * dot(v - on_line, normal);
    });
    if (next.size() < 3 || std::abs(poly_area2(next)) <= tol * tol) {
      SideOutcome at{true, so.center, so.radius, 0.0};
      return at;  // region collapsed onto the line: constrained center is global
    }
    clip = std::move(next);
    return std::nullopt;
  };

  for (int round = 0; round < 512; ++round) {
    long long active = count_active(clip);
    if (active <= 24) break;

    // Median slope (kept as line angles; vertical sorts last).
    auto snap0 = clip;
    auto angle_stream = [&, snap0]() -> StreamFactory<double> {
      auto lf = lines_fact(snap0, tol);
      return [lf]() {
        auto s = std::make_shared<StreamPtr<LineRef>>(lf());
        return make_stream<double>([s](double& out) {
          LineRef l;
          if (!(*s)->next(l)) return false;
          Point d = l.q - l.p;
          out = half_angle(std::atan2(d.y, d.x));
          return true;
        });
      };
    }();
    auto medang = approx_median(angle_stream, -10.0, 10.0, *ctx.rng, ctx.median_stats);
    if (!medang) break;  // no active lines at all
    double theta = medang->value;
    Rotation rot = Rotation::about(centroid(clip), -theta);

    auto rel_sign = [theta](const LineRef& l) {
      Point d = l.q - l.p;
      double rel = half_angle(std::atan2(d.y, d.x) - theta);
      return rel >= 0.0;
    };

    // Pair k-th positive with k-th negative via two interleaved passes.
    auto pair_stream = [&, snap0](int coord) -> StreamFactory<double> {
      // coord 0: rotated x of pair intersections; 1: rotated y restricted later
      auto lf = lines_fact(snap0, tol);
      auto rs = rel_sign;
      Rotation r2 = rot;
      return [lf, rs, r2]() -> StreamPtr<double> {
        struct St {
          StreamPtr<LineRef> pos, neg;
        };
        auto st = std::make_shared<St>();
        st->pos = lf();
        st->neg = lf();
        return make_stream<double>([st, rs, r2](double& out) {
          for (;;) {
            LineRef lp, ln;
            bool gp = false, gn = false;
            while (st->pos->next(lp)) {
              if (rs(lp)) {
                gp = true;
                break;
              }
            }
            while (st->neg->next(ln)) {
              if (!rs(ln)) {
                gn = true;
                break;
              }
            }
            if (!gp || !gn) return false;
            Point d1 = lp.q - lp.p, d2 = ln.q - ln.p;
            double den = cross(d1, d2);
            if (den == 0.0) continue;
            double t = cross(ln.p - lp.p, d2) / den;
            Point ip = lp.p + t * d1;
            out = r2.apply(ip).x;
            return true;
          }
        });
      };
    }(0);

    auto medx = approx_median(pair_stream, -std::numeric_limits<double>::infinity(),
                              std::numeric_limits<double>::infinity(), *ctx.rng,
                              ctx.median_stats);
    if (!medx) {
      // No +/- pairs (all active lines on one slope side): cut along the
      // median-offset parallel line instead.
      auto off_stream = [&, snap0]() -> StreamFactory<double> {
        auto lf = lines_fact(snap0, tol);
        Rotation r2 = rot;
        return [lf, r2]() {
          auto s = std::make_shared<StreamPtr<LineRef>>(lf());
          return make_stream<double>([s, r2](double& out) {
            LineRef l;
            if (!(*s)->next(l)) return false;
            out = r2.apply(l.p).y;  // parallel family: offset = rotated y
            return true;
          });
        };
      }();
      auto medoff = approx_median(off_stream, -std::numeric_limits<double>::infinity(),
                                  std::numeric_limits<double>::infinity(), *ctx.rng,
                                  ctx.median_stats);
      if (!medoff) break;
      Point on = rot.invert({0.0, medoff->value});
      Point dir = rot.invert_dir({1.0, 0.0});
      Point nrm = rot.invert_dir({0.0, 1.0});
      if (auto found = apply_cut(on, dir, nrm)) return {true, found->center, found->radius, {}};
      continue;
    }

    double xm = medx->value;
    Point vdir = rot.invert_dir({0.0, 1.0});
    Point vnrm = rot.invert_dir({1.0, 0.0});
    Point von = rot.invert({xm, 0.0});
    double x_solution_sign = 0.0;
    if (line_crosses_poly(clip, von, vdir, tol)) {
      auto segopt = clip_line(clip, von, vdir);
      if (segopt && dist(segopt->a, segopt->b) > tol) {
        SideOutcome so = decide_line_side(ctx, *segopt, vnrm);
        if (so.center_found) return {true, so.center, so.radius, {}};
        x_solution_sign = so.side;
        auto next = clip_halfplane(clip, [von, vnrm, so](Point v) {
          return so.side * dot(v - von, vnrm);
        });
        if (next.size() < 3 || std::abs(poly_area2(next)) <= tol * tol) {
          return {true, so.center, so.radius, {}};
        }
        clip = std::move(next);
      }
    }
    if (x_solution_sign == 0.0) {
      // Region entirely on one side of x = xm: that side is the solution side.
      double off = dot(centroid(clip) - von, vnrm);
      x_solution_sign = off >= 0 ? 1.0 : -1.0;
    }

    // y-median over pair intersections on the non-solution side of x = xm.
    auto ystream = [&, snap0, xm, x_solution_sign]() -> StreamFactory<double> {
      auto lf = lines_fact(snap0, tol);
      auto rs = rel_sign;
      Rotation r2 = rot;
      double sgn = x_solution_sign;
      return [lf, rs, r2, xm, sgn]() -> StreamPtr<double> {
        struct St {
          StreamPtr<LineRef> pos, neg;
        };
        auto st = std::make_shared<St>();
        st->pos = lf();
        st->neg = lf();
        return make_stream<double>([st, rs, r2, xm, sgn](double& out) {
          for (;;) {
            LineRef lp, ln;
            bool gp = false, gn = false;
            while (st->pos->next(lp)) {
              if (rs(lp)) {
                gp = true;
                break;
              }
            }
            while (st->neg->next(ln)) {
              if (!rs(ln)) {
                gn = true;
                break;
              }
            }
            if (!gp || !gn) return false;
            Point d1 = lp.q - lp.p, d2 = ln.q - ln.p;
            double den = cross(d1, d2);
            if (den == 0.0) continue;
            double t = cross(ln.p - lp.p, d2) / den;
            Point ip = r2.apply(lp.p + t * d1);
            if (sgn * (ip.x - xm) >= 0) continue;  // keep the non-solution side
            out = ip.y;
            return true;
          }
        });
      };
    }();
    auto medy = approx_median(ystream, -std::numeric_limits<double>::infinity(),
                              std::numeric_limits<double>::infinity(), *ctx.rng,
                              ctx.median_stats);
    if (medy) {
      Point hon = rot.invert({0.0, medy->value});
      Point hdir = rot.invert_dir({1.0, 0.0});
      Point hnrm = rot.invert_dir({0.0, 1.0});
      if (auto found = apply_cut(hon, hdir, hnrm)) return {true, found->center, found->radius, {}};
    }
  }

  // Survivors: resolve each remaining active line directly.
  {
    CoreBlock buf;
    if (ctx.ws) buf = CoreBlock(*ctx.ws, 24 * 4 + 8);
    std::vector<LineRef> survivors;
    {
      auto f = lines_fact(clip, tol);
      auto s = f();
      LineRef l;
      while (s->next(l)) {
        survivors.push_back(l);
        if (survivors.size() > 64) throw GeometryError("line pruning left too many lines");
      }
    }
    for (const LineRef& l : survivors) {
      Point d = l.q - l.p;
      Point n0 = normalize(perp(d));
      if (auto found = apply_cut(l.p, d, n0)) return {true, found->center, found->radius, {}};
    }
  }

  RegionOrCenter out;
  out.region.poly = clip;
  out.region.rep = centroid(clip);
  out.region.fingerprint = spt_fingerprint(*ctx.prov, out.region.rep);
  return out;
}

CenterResult solve_in_region(RunContext& ctx, const Region& region) {
  if (region.poly.size() < 3) throw GeometryError("region has empty interior");
  auto circles = make_replay_source<CircleConstraint>(
      root_child_circles(*ctx.prov, region.rep), ctx.ws, 3);
  double xlo = region.poly[0].x, xhi = xlo;
  for (Point p : region.poly) {
    xlo = std::min(xlo, p.x);
    xhi = std::max(xhi, p.x);
  }
  double width0 = std::max(xhi - xlo, 1e-300);
  Point best = region.rep;
  double tol = 1e-12 * ctx.scale;

  for (int iter = 0; iter < 256; ++iter) {
    double xm = 0.5 * (xlo + xhi);
    auto segopt = clip_line(region.poly, Point{xm, region.rep.y}, Point{0.0, 1.0});
    Point p;
    if (!segopt || dist(segopt->a, segopt->b) <= tol) {
      auto so = clip_line(region.poly, Point{xm, region.rep.y}, Point{0.0, 1.0});
      p = so ? so->a : Point{xm, region.rep.y};
    } else {
      SegmentMin sm = minimize_circles_on_segment(ctx, circles, *segopt, 0.0, 1.0);
      p = segopt->at(sm.t);
    }
    best = p;

    // x-subgradient over the argmax circles.
    double maxv = max_circle_value([&circles]() { return circles->open(); }, p);
    double vtol = 1e-12 * (std::abs(maxv) + ctx.scale);
    bool pos = false, neg = false, zero = false;
    {
      auto s = circles->open();
      CircleConstraint c;
      while (s->next(c)) {
        if (c.value_at(p) < maxv - vtol) continue;
        Point r = p - c.anchor;
        double dn = norm(r);
        if (dn <= vtol) {
          zero = true;
          continue;
        }
        double deriv = r.x / dn;
        if (std::abs(deriv) <= ctx.eps) zero = true;
        else if (deriv > 0) pos = true;
        else neg = true;
      }
    }
    if ((pos && neg) || zero) break;
    if (pos) xhi = xm;  // values increase to the right: move left
    else xlo = xm;
    if ((xhi - xlo) <= ctx.eps * width0) break;
  }

  CenterResult out;
  out.center = best;
  out.radius = max_circle_value([&circles]() { return circles->open(); }, best);
  // Witness anchors -> vertex ids by exact coordinate match.
  double vtol = 1e-12 * (std::abs(out.radius) + ctx.scale);
  const Polygon& poly = ctx.polygon();
  auto s = circles->open();
  CircleConstraint c;
  while (s->next(c)) {
    if (c.value_at(best) >= out.radius - vtol) {
      for (int i = 0; i < poly.size(); ++i) {
        if (poly.vertex(i) == c.anchor) {
          out.support.push_back(i);
          break;
        }
      }
    }
  }
  return out;
}

CenterResult geodesic_center(const Polygon& poly, const SolveConfig& cfg, PruneAudit* audit,
                             MedianStats* median_stats) {
  if (poly.size() < 3) throw InvalidPolygon("polygon needs at least 3 vertices");
  Workspace ws({cfg.s, cfg.policy}, poly.size());
  FunnelSptProvider prov(poly, &ws);
  Rng rng(cfg.seed);
  RunContext ctx;
  ctx.prov = &prov;
  ctx.ws = &ws;
  ctx.rng = &rng;
  ctx.eps = cfg.eps;
  ctx.scale = poly.scale();
  ctx.audit = audit;
  ctx.median_stats = median_stats;

  double shear = shear_delta(poly);
  CenterResult out;
  TriangleOrCenter tc = locate_triangle(ctx, shear);
  if (tc.center_found) {
    out.center = tc.center;
  } else {
    RegionOrCenter rc = line_prune_rounds(ctx, tc.tri);
    if (rc.center_found) {
      out.center = rc.center;
    } else {
      CenterResult sr = solve_in_region(ctx, rc.region);
      out.center = sr.center;
    }
  }
  FarthestInfo fi = farthest_neighbors(prov, out.center, cfg.eps * ctx.scale);
  out.radius = fi.distance;
  out.support = fi.vertices;
  out.report = ws.report();
  return out;
}

}  // namespace geocenter

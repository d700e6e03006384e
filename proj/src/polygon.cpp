#include "geocenter/polygon.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <set>

namespace geocenter {

double Polygon::scale() const {
  if (vertices_.empty()) return 1.0;
  double xlo = vertices_[0].x, xhi = xlo, ylo = vertices_[0].y, yhi = ylo;
  for (const Point& p : vertices_) {
    xlo = std::min(xlo, p.x);
    xhi = std::max(xhi, p.x);
    ylo = std::min(ylo, p.y);
    yhi = std::max(yhi, p.y);
  }
  return std::max(1e-300, std::hypot(xhi - xlo, yhi - ylo));
}

std::vector<Violation> validate_simple(const Polygon& poly) {
  std::vector<Violation> out;
  int n = poly.size();
  if (n < 3) {
    out.push_back({Violation::kTooFew, -1, -1, "fewer than 3 vertices"});
    return out;
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (poly.vertex(i) == poly.vertex(j)) {
        out.push_back({Violation::kRepeatedVertex, i, j, "repeated vertex"});
      }
    }
  }
  if (!out.empty()) return out;

  double area2 = 0.0;
  for (int i = 0; i < n; ++i) area2 += cross(poly.vertex(i), poly.vertex(i + 1));
  if (area2 <= 0.0) {
    out.push_back({Violation::kOrientation, -1, -1, "vertices not in CCW order"});
  }

  for (int i = 0; i < n; ++i) {
    Point a = poly.vertex(i), b = poly.vertex(i + 1);
    for (int j = i + 1; j < n; ++j) {
      Point c = poly.vertex(j), d = poly.vertex(j + 1);
      bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
      if (adjacent) {
        // Shared endpoint only; any further contact is a spike/overlap.
        Point shared = (j == i + 1) ? b : a;
        Point a2 = (j == i + 1) ? a : b;   // far end of edge i
        Point d2 = (j == i + 1) ? d : c;   // far end of edge j
        if (orient(shared, a2, d2) == 0 &&
            (on_segment(shared, a2, d2) || on_segment(shared, d2, a2))) {
          out.push_back({Violation::kSelfIntersection, i, j, "adjacent edges overlap"});
        }
      } else if (segments_intersect(a, b, c, d)) {
        out.push_back({Violation::kSelfIntersection, i, j, "edges intersect"});
      }
    }
  }
  return out;
}

bool point_in_polygon(const Polygon& poly, Point p) {
  int n = poly.size();
  for (int i = 0; i < n; ++i) {
    if (on_segment(poly.vertex(i), poly.vertex(i + 1), p)) return true;
  }
  int winding = 0;
  for (int i = 0; i < n; ++i) {
    Point a = poly.vertex(i), b = poly.vertex(i + 1);
    if (a.y <= p.y) {
      if (b.y > p.y && orient(a, b, p) > 0) ++winding;
    } else {
      if (b.y <= p.y && orient(a, b, p) < 0) --winding;
    }
  }
  return winding != 0;
}

namespace {

double seg_point_dist(Point a, Point b, Point p) {
  Point d = b - a;
  double dd = dot(d, d);
  if (dd == 0) return dist(a, p);
  double t = std::clamp(dot(p - a, d) / dd, 0.0, 1.0);
  return dist(a + t * d, p);
}

}  // namespace

bool segment_in_polygon(const Polygon& poly, Point a, Point b) {
  if (!point_in_polygon(poly, a) || !point_in_polygon(poly, b)) return false;
  if (a == b) return true;
  int n = poly.size();
  std::vector<double> touch{0.0, 1.0};
  Point d = b - a;
  double dd = dot(d, d);
  for (int i = 0; i < n; ++i) {
    Point c = poly.vertex(i), e = poly.vertex(i + 1);
    int o1 = orient(a, b, c), o2 = orient(a, b, e);
    int o3 = orient(c, e, a), o4 = orient(c, e, b);
    if (o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0) {
      return false;  // proper crossing
    }
    if (o1 == 0 && on_segment(a, b, c)) touch.push_back(dot(c - a, d) / dd);
    if (o2 == 0 && on_segment(a, b, e)) touch.push_back(dot(e - a, d) / dd);
  }
  std::sort(touch.begin(), touch.end());
  // Midpoints of boundary-hugging subintervals can land half an ulp outside;
  // points that close to the boundary belong to the closure.
  double eps = 1e-12 * (poly.scale() + norm(d));
  for (size_t i = 0; i + 1 < touch.size(); ++i) {
    if (touch[i + 1] - touch[i] < 1e-15) continue;
    Point mid = a + (0.5 * (touch[i] + touch[i + 1])) * d;
    if (point_in_polygon(poly, mid)) continue;
    bool near = false;
    for (int k = 0; k < n && !near; ++k) {
      near = seg_point_dist(poly.vertex(k), poly.vertex(k + 1), mid) <= eps;
    }
    if (!near) return false;
  }
  return true;
}

double shear_delta(const Polygon& poly) {
  std::vector<double> xs;
  xs.reserve(poly.size());
  double ylo = std::numeric_limits<double>::infinity(), yhi = -ylo;
  for (const Point& p : poly.vertices()) {
    xs.push_back(p.x);
    ylo = std::min(ylo, p.y);
    yhi = std::max(yhi, p.y);
  }
  std::sort(xs.begin(), xs.end());
  bool ties = false;
  double gap = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i + 1 < xs.size(); ++i) {
    double g = xs[i + 1] - xs[i];
    if (g == 0.0) ties = true;
    else gap = std::min(gap, g);
  }
  if (!ties) return 0.0;
  if (!std::isfinite(gap) || yhi <= ylo) {
    throw InvalidPolygon("degenerate vertex layout: cannot shear to distinct abscissas");
  }
  return 0.5 * gap / (yhi - ylo);
}

// ---------------------------------------------------------------------------
// Ear clipping

std::vector<EarTriangle> ear_clip_triangulate(const std::vector<Point>& pts) {
  int n = static_cast<int>(pts.size());
  if (n < 3) throw InvalidPolygon("ear clipping needs at least 3 vertices");
  std::vector<EarTriangle> tris;
  tris.reserve(n - 2);
  std::vector<int> prev(n), next(n);
  for (int i = 0; i < n; ++i) {
    prev[i] = (i + n - 1) % n;
    next[i] = (i + 1) % n;
  }

  int alive = n;
  std::vector<char> dead(n, 0);
  // Another ring vertex anywhere in the closed ear triangle blocks the
  // clip; diagonals produced by earlier clips may graze reflex vertices
  // exactly, so boundary contact must block too. A zero-area ear is
  // blocked only by vertices on its closing diagonal.
  auto is_ear = [&](int i) {
    Point a = pts[prev[i]], b = pts[i], c = pts[next[i]];
    int o = orient(a, b, c);
    if (o < 0) return false;
    for (int k = next[next[i]]; k != prev[i]; k = next[k]) {
      Point p = pts[k];
      if (o > 0) {
        if (orient(a, b, p) >= 0 && orient(b, c, p) >= 0 && orient(c, a, p) >= 0) return false;
      } else {
        if (on_segment(a, c, p)) return false;
      }
    }
    return true;
  };

  std::set<int> ears;
  for (int i = 0; i < n; ++i) {
    if (is_ear(i)) ears.insert(i);
  }
  while (alive > 3) {
    if (ears.empty()) throw InvalidPolygon("ear clipping stuck: polygon not simple CCW");
    int i = *ears.begin();
    ears.erase(ears.begin());
    tris.push_back({prev[i], i, next[i]});
    dead[i] = 1;
    int p = prev[i], q = next[i];
    next[p] = q;
    prev[q] = p;
    --alive;
    for (int v : {p, q}) {
      ears.erase(v);
      if (is_ear(v)) ears.insert(v);
    }
  }
  // Remaining triangle.
  int i0 = 0;
  while (dead[i0]) ++i0;
  tris.push_back({prev[i0], i0, next[i0]});
  return tris;
}

std::vector<std::pair<int, int>> triangulation_diagonals(int n,
                                                         const std::vector<EarTriangle>& tris) {
  std::set<std::pair<int, int>> diags;
  auto add = [&](int a, int b) {
    if (a > b) std::swap(a, b);
    bool boundary = (b == a + 1) || (a == 0 && b == n - 1);
    if (!boundary) diags.insert({a, b});
  };
  for (const auto& t : tris) {
    add(t.a, t.b);
    add(t.b, t.c);
    add(t.c, t.a);
  }
  return {diags.begin(), diags.end()};
}

// ---------------------------------------------------------------------------
// ChordedRegion

ChordedRegion::ChordedRegion(const Polygon* poly, double shear) {
  poly_ = poly;
  shear_ = shear;
  Piece whole;
  whole.first = 0;
  whole.last = poly->size() - 1;
  pieces_.push_back(whole);
  run_count_ = poly->size();
}

namespace {

inline bool piece_is_run(const ChordedRegion::Piece& p) { return p.first >= 0; }

// First corner point of a piece.
inline Point piece_start(const Polygon& poly, const ChordedRegion::Piece& p) {
  return piece_is_run(p) ? poly.vertex(p.first) : p.pt;
}
inline Point piece_end(const Polygon& poly, const ChordedRegion::Piece& p) {
  return piece_is_run(p) ? poly.vertex(p.last) : p.pt;
}
// Polygon edge carrying the connector leaving this piece.
inline int piece_exit_edge(const ChordedRegion::Piece& p) {
  return piece_is_run(p) ? p.last : p.edge;
}

}  // namespace

void ChordedRegion::for_each_boundary(const std::function<void(const BoundaryEdge&)>& fn) const {
  const Polygon& poly = *poly_;
  int np = static_cast<int>(pieces_.size());
  int ordinal = 0;
  int run_seen = 0;
  for (int pi = 0; pi < np; ++pi) {
    const Piece& p = pieces_[pi];
    if (piece_is_run(p)) {
      int len = (p.last - p.first + poly.size()) % poly.size() + 1;
      int v = p.first;
      for (int k = 0; k < len; ++k) {
        ++run_seen;  // arrived at run vertex v
        if (k + 1 < len) {
          BoundaryEdge e{poly.vertex(v), poly.vertex(v + 1), poly.wrap(v), false,
                         ordinal++, run_seen};
          e.piece = pi;
          e.slot = poly.wrap(v);
          fn(e);
        }
        v = poly.wrap(v + 1);
      }
    }
    // Connector or wall from this piece's end to the next piece's start.
    const Piece& q = pieces_[(pi + 1) % np];
    Point from = piece_end(poly, p);
    Point to = piece_start(poly, q);
    if (p.wall_after) {
      BoundaryEdge e{from, to, -1, true, ordinal++, run_seen};
      e.piece = pi;
      e.slot = -1;
      fn(e);
    } else if (from != to) {
      BoundaryEdge e{from, to, piece_exit_edge(p), false, ordinal++, run_seen};
      e.piece = pi;
      e.slot = -1;
      fn(e);
    }
  }
}

void ChordedRegion::for_each_run_vertex(const std::function<void(int, int)>& fn) const {
  const Polygon& poly = *poly_;
  int pos = 0;
  for (const Piece& p : pieces_) {
    if (!piece_is_run(p)) continue;
    int len = (p.last - p.first + poly.size()) % poly.size() + 1;
    int v = p.first;
    for (int k = 0; k < len; ++k) {
      fn(v, pos++);
      v = poly.wrap(v + 1);
    }
  }
}

std::vector<Point> ChordedRegion::materialize() const {
  const Polygon& poly = *poly_;
  std::vector<Point> out;
  for (const Piece& p : pieces_) {
    if (piece_is_run(p)) {
      int len = (p.last - p.first + poly.size()) % poly.size() + 1;
      int v = p.first;
      for (int k = 0; k < len; ++k) {
        out.push_back(poly.vertex(v));
        v = poly.wrap(v + 1);
      }
    } else {
      out.push_back(p.pt);
    }
  }
  std::vector<Point> dedup;
  for (const Point& p : out) {
    if (dedup.empty() || dedup.back() != p) dedup.push_back(p);
  }
  while (dedup.size() > 1 && dedup.front() == dedup.back()) dedup.pop_back();
  return dedup;
}

// ---------------------------------------------------------------------------
// Vertical ray shooting

void probe_vertical_chords(const ChordedRegion& region, std::span<ChordProbe> batch,
                           Workspace* ws) {
  double delta = region.shear();
  Point u = chord_direction(delta);
  long long edges = 0;
  region.for_each_boundary([&](const ChordedRegion::BoundaryEdge& e) {
    ++edges;
    if (e.wall) return;  // walls are parallel to every query line
    double sa = sheared_x(e.a, delta);
    double sb = sheared_x(e.b, delta);
    double lo = std::min(sa, sb), hi = std::max(sa, sb);
    for (ChordProbe& pr : batch) {
      if (!(pr.sx > lo && pr.sx < hi)) continue;  // proper straddle only
      double t = (pr.sx - sa) / (sb - sa);
      Point x = e.a + t * (e.b - e.a);
      double tau = dot(x, u);
      ++pr.crossings_total;
      if (tau > pr.tau_v) {
        ++pr.crossings_up;
        if (!pr.up.valid || tau < pr.up.tau) {
          pr.up = {true, tau, x, e.poly_edge, e.ordinal, e.run_prefix};
          pr.up_piece = e.piece;
          pr.up_slot = e.slot;
        }
      } else {
        if (!pr.dn.valid || tau > pr.dn.tau) {
          pr.dn = {true, tau, x, e.poly_edge, e.ordinal, e.run_prefix};
          pr.dn_piece = e.piece;
          pr.dn_slot = e.slot;
        }
      }
    }
  });
  if (ws) ws->note_streamed(edges);
}

std::optional<std::pair<Point, Point>> vertical_slice(const ChordedRegion& region, double sx) {
  double delta = region.shear();
  Point u = chord_direction(delta);
  std::vector<std::pair<double, Point>> crossings;
  region.for_each_boundary([&](const ChordedRegion::BoundaryEdge& e) {
    if (e.wall) return;
    double sa = sheared_x(e.a, delta);
    double sb = sheared_x(e.b, delta);
    if (!(sx > std::min(sa, sb) && sx < std::max(sa, sb))) return;
    double t = (sx - sa) / (sb - sa);
    Point x = e.a + t * (e.b - e.a);
    crossings.push_back({dot(x, u), x});
  });
  if (crossings.size() < 2) return std::nullopt;
  std::sort(crossings.begin(), crossings.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return std::make_pair(crossings[0].second, crossings[1].second);
}

// ---------------------------------------------------------------------------
// Balanced chord (Lemma 3 pattern)

BalancedChord balanced_vertical_chord(const ChordedRegion& region, Workspace* ws) {
  const Polygon& poly = region.polygon();
  double delta = region.shear();
  Point u = chord_direction(delta);
  int m = region.run_vertex_count();
  if (m < 3) throw NoBalancedChord("region too small");

  long long batch_cap = ws ? std::max(1LL, ws->budget().s) : m;
  batch_cap = std::min<long long>(batch_cap, m);

  // (vid, pos) pairs in run order, visited in batches.
  std::vector<std::pair<int, int>> order;
  order.reserve(m);
  region.for_each_run_vertex([&](int vid, int pos) { order.push_back({vid, pos}); });

  bool have_best = false;
  BalancedChord best;
  int best_score = 0;

  // Anchors whose abscissa coincides with an existing wall produce chords
  // collinear with that wall; skip them.
  std::vector<double> wall_sx;
  {
    int np = static_cast<int>(region.pieces_.size());
    for (int i = 0; i < np; ++i) {
      if (region.pieces_[i].wall_after) {
        wall_sx.push_back(sheared_x(piece_end(poly, region.pieces_[i]), delta));
      }
    }
  }
  auto on_wall_line = [&](double sx) {
    for (double w : wall_sx) {
      if (w == sx) return true;
    }
    return false;
  };

  CoreBlock batch_mem;
  if (ws) batch_mem = CoreBlock(*ws, batch_cap * 16);
  std::vector<ChordProbe> batch;
  batch.reserve(batch_cap);

  auto consider = [&](const ChordProbe& pr, bool up_side) {
    const ChordProbe::Hit& hit = up_side ? pr.up : pr.dn;
    if (!hit.valid) return;
    int above = pr.crossings_up;
    int below = pr.crossings_total - pr.crossings_up;
    if (up_side && above % 2 == 0) return;  // interior not directly above
    if (!up_side && below % 2 == 0) return;
    int fwd = ((hit.run_prefix - 1 - pr.pos_v + m) % m) + 1;
    int bwd = m - fwd + 1;
    int score = std::max(fwd, bwd);
    bool better = !have_best || score < best_score ||
                  (score == best_score && pr.vid < best.anchor_vid) ||
                  (score == best_score && pr.vid == best.anchor_vid && up_side &&
                   !best.anchor_is_lower);
    if (!better) return;
    have_best = true;
    best_score = score;
    best.anchor_vid = pr.vid;
    best.anchor_is_lower = up_side;
    best.far_point = hit.point;
    best.far_edge = hit.poly_edge;
    best.far_ordinal = hit.ordinal;
    best.far_piece = up_side ? pr.up_piece : pr.dn_piece;
    best.far_slot = up_side ? pr.up_slot : pr.dn_slot;
    best.side_fwd = fwd;
    best.side_bwd = bwd;
    Point v = poly.vertex(pr.vid);
    best.chord.sx = pr.sx;
    best.chord.through_vertex = pr.vid;
    if (up_side) {
      best.chord.lower = v;
      best.chord.upper = hit.point;
    } else {
      best.chord.lower = hit.point;
      best.chord.upper = v;
    }
  };

  for (int start = 0; start < m; start += static_cast<int>(batch_cap)) {
    batch.clear();
    int end = std::min<int>(m, start + static_cast<int>(batch_cap));
    for (int k = start; k < end; ++k) {
      ChordProbe pr;
      pr.vid = order[k].first;
      pr.pos_v = order[k].second;
      Point v = poly.vertex(pr.vid);
      pr.sx = sheared_x(v, delta);
      pr.tau_v = dot(v, u);
      if (on_wall_line(pr.sx)) continue;
      batch.push_back(pr);
    }
    probe_vertical_chords(region, batch, ws);
    for (const ChordProbe& pr : batch) {
      consider(pr, true);
      consider(pr, false);
    }
  }

  if (!have_best) throw NoBalancedChord("no vertex-anchored vertical chord found");
  int bound = (2 * m + 2) / 3 + 2;  // ceil(2m/3) + 2
  if (best_score > bound) {
    throw NoBalancedChord("balanced chord bound violated: " + std::to_string(best_score) +
                          " > " + std::to_string(bound));
  }
  return best;
}

// ---------------------------------------------------------------------------
// Region splitting

namespace {

using Piece = ChordedRegion::Piece;

int cyclic_len(const Polygon& poly, int first, int last) {
  return (last - first + poly.size()) % poly.size() + 1;
}

bool run_contains(const Polygon& poly, const Piece& p, int vid) {
  if (!piece_is_run(p)) return false;
  int off = (vid - p.first + poly.size()) % poly.size();
  return off < cyclic_len(poly, p.first, p.last);
}

}  // namespace

ChordedRegion split_region(const ChordedRegion& region, const BalancedChord& chord,
                           ChordSide side) {
  const Polygon& poly = region.polygon();
  const auto& pieces = region.pieces_;
  int np = static_cast<int>(pieces.size());

  int pa = -1;  // piece holding the anchor vertex
  for (int i = 0; i < np; ++i) {
    if (run_contains(poly, pieces[i], chord.anchor_vid)) {
      pa = i;
      break;
    }
  }
  if (pa < 0) throw GeometryError("split anchor not on region boundary");
  int ph = chord.far_piece;
  int hs = chord.far_slot;  // starting vid of the intra-run hit edge, or -1 (connector)
  int v = chord.anchor_vid;

  auto arc_forward = [&]() {  // anchor -> far point, closed by wall back to anchor
    std::vector<Piece> out;
    auto emit_hit_tail = [&](const Piece& host) {
      // Truncate the hit piece at the hit edge, then append the far corner.
      if (piece_is_run(host) && hs >= 0) {
        Piece r = host;
        r.last = hs;
        r.wall_after = false;
        out.push_back(r);
      } else {
        Piece h = host;
        h.wall_after = false;
        out.push_back(h);
      }
      Piece q;
      q.first = q.last = -1;
      q.pt = chord.far_point;
      q.edge = chord.far_edge;
      q.wall_after = true;
      out.push_back(q);
    };
    bool same_piece = (pa == ph);
    bool hit_after_anchor = false;
    if (same_piece) {
      const Piece& p = pieces[pa];
      int ov = (v - p.first + poly.size()) % poly.size();
      int oh = hs >= 0 ? (hs - p.first + poly.size()) % poly.size()
                       : cyclic_len(poly, p.first, p.last);  // connector: after everything
      hit_after_anchor = oh >= ov;
    }
    if (same_piece && hit_after_anchor) {
      Piece head = pieces[pa];
      head.first = v;
      emit_hit_tail(head);
      return out;
    }
    Piece head = pieces[pa];
    head.first = v;
    out.push_back(head);
    for (int i = (pa + 1) % np; i != ph; i = (i + 1) % np) out.push_back(pieces[i]);
    emit_hit_tail(pieces[ph]);
    return out;
  };

  auto arc_backward = [&]() {  // far point -> anchor, closed by wall back to far point
    std::vector<Piece> out;
    Piece q;
    q.first = q.last = -1;
    q.pt = chord.far_point;
    q.edge = chord.far_edge;
    q.wall_after = false;
    out.push_back(q);
    auto finish_at_anchor = [&](const Piece& host) {
      Piece r = host;
      r.last = v;
      r.wall_after = true;
      out.push_back(r);
    };
    bool same_piece = (pa == ph);
    if (same_piece) {
      const Piece& p = pieces[pa];
      int ov = (v - p.first + poly.size()) % poly.size();
      int oh = hs >= 0 ? (hs - p.first + poly.size()) % poly.size()
                       : cyclic_len(poly, p.first, p.last);
      if (oh >= ov) {
        // Hit after anchor within the same run: backward arc wraps the rest.
        if (hs >= 0 && (hs + 1 - p.first + poly.size()) % poly.size() <
                           cyclic_len(poly, p.first, p.last)) {
          Piece r = p;
          r.first = poly.wrap(hs + 1);
          out.push_back(r);
        } else if (hs < 0) {
          // hit on the trailing connector: nothing left of this piece
        }
        for (int i = (pa + 1) % np; i != pa; i = (i + 1) % np) out.push_back(pieces[i]);
        Piece r2 = p;
        r2.last = v;
        r2.wall_after = true;
        // Keep only the part from the original first up to the anchor.
        out.push_back(r2);
        return out;
      }
      // Hit before anchor within the same piece: backward arc stays inside it.
      if (hs >= 0) {
        Piece r = p;
        r.first = poly.wrap(hs + 1);
        r.last = v;
        r.wall_after = true;
        out.push_back(r);
      } else {
        finish_at_anchor(p);
      }
      return out;
    }
    const Piece& host = pieces[ph];
    if (piece_is_run(host) && hs >= 0) {
      int tail_off = (hs + 1 - host.first + poly.size()) % poly.size();
      if (tail_off < cyclic_len(poly, host.first, host.last)) {
        Piece r = host;
        r.first = poly.wrap(hs + 1);
        out.push_back(r);
      }
      // else: hit on the run's final edge would be slot==last-1; tail may be empty
    }
    for (int i = (ph + 1) % np; i != pa; i = (i + 1) % np) out.push_back(pieces[i]);
    finish_at_anchor(pieces[pa]);
    return out;
  };

  ChordedRegion out;
  out.poly_ = region.poly_;
  out.shear_ = region.shear_;
  out.pieces_ = (side == ChordSide::Forward) ? arc_forward() : arc_backward();
  int cnt = 0;
  for (const Piece& p : out.pieces_) {
    if (piece_is_run(p)) cnt += cyclic_len(poly, p.first, p.last);
  }
  out.run_count_ = cnt;
  return out;
}

double region_sx_side(const ChordedRegion& region, double chord_sx) {
  double delta = region.shear();
  double best = 0.0;
  region.for_each_boundary([&](const ChordedRegion::BoundaryEdge& e) {
    Point mid = 0.5 * (e.a + e.b);
    double d = sheared_x(mid, delta) - chord_sx;
    if (std::abs(d) > std::abs(best)) best = d;
  });
  return best > 0 ? 1.0 : (best < 0 ? -1.0 : 0.0);
}

}  // namespace geocenter

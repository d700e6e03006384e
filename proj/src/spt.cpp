#include "geocenter/spt.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <map>

namespace geocenter {

namespace {

inline bool properly_cross(Point p, Point q, Point r, Point s) {
  int o1 = orient(p, q, r);
  int o2 = orient(p, q, s);
  if (o1 == 0 || o2 == 0 || o1 == o2) return false;
  int o3 = orient(r, s, p);
  int o4 = orient(r, s, q);
  return o3 != 0 && o4 != 0 && o3 != o4;
}

// Closed containment in a possibly CW simple polygon given as points.
bool in_ring(const std::vector<Point>& ring, Point p) {
  int n = static_cast<int>(ring.size());
  for (int i = 0; i < n; ++i) {
    if (on_segment(ring[i], ring[(i + 1) % n], p)) return true;
  }
  int winding = 0;
  for (int i = 0; i < n; ++i) {
    Point a = ring[i], b = ring[(i + 1) % n];
    if (a.y <= p.y) {
      if (b.y > p.y && orient(a, b, p) > 0) ++winding;
    } else {
      if (b.y <= p.y && orient(a, b, p) < 0) --winding;
    }
  }
  return winding != 0;
}

}  // namespace

FunnelSptProvider::FunnelSptProvider(const Polygon& poly, Workspace* ws)
    : poly_(poly), ws_(ws) {}

FunnelSptProvider::~FunnelSptProvider() {
  if (ws_ && charged_ > 0) ws_->release_provider(charged_);
}

void FunnelSptProvider::ensure_triangulated() {
  if (triangulated_) return;
  std::vector<Point> pts(poly_.vertices().begin(), poly_.vertices().end());
  tris_ = ear_clip_triangulate(pts);
  adj_.assign(tris_.size(), {-1, -1, -1});
  std::map<std::pair<int, int>, std::pair<int, int>> by_edge;  // edge -> (tri, slot)
  for (int t = 0; t < static_cast<int>(tris_.size()); ++t) {
    int c[3] = {tris_[t].a, tris_[t].b, tris_[t].c};
    for (int k = 0; k < 3; ++k) {
      int u = c[k], v = c[(k + 1) % 3];
      auto key = std::minmax(u, v);
      auto it = by_edge.find({key.first, key.second});
      if (it == by_edge.end()) {
        by_edge[{key.first, key.second}] = {t, k};
      } else {
        adj_[t][k] = it->second.first;
        adj_[it->second.first][it->second.second] = t;
      }
    }
  }
  triangulated_ = true;
  long long words = static_cast<long long>(tris_.size()) * 6;
  if (ws_) {
    ws_->alloc_provider(words);
    charged_ += words;
  }
}

std::unique_ptr<FunnelSptProvider::Tree> FunnelSptProvider::build_tree(Point root) const {
  int n = poly_.size();
  auto tree = std::make_unique<Tree>();
  tree->root = root;
  tree->parent.assign(n, -2);
  tree->cum.assign(n, 0.0);
  tree->elen.assign(n, 0.0);

  auto pt = [&](int id) { return id < 0 ? root : poly_.vertex(id); };
  auto cum_of = [&](int id) { return id < 0 ? 0.0 : tree->cum[id]; };

  // Locate the root triangle (closed containment; non-degenerate first).
  int t0 = -1;
  for (int pass = 0; pass < 2 && t0 < 0; ++pass) {
    for (int t = 0; t < static_cast<int>(tris_.size()); ++t) {
      Point a = poly_.vertex(tris_[t].a), b = poly_.vertex(tris_[t].b),
            c = poly_.vertex(tris_[t].c);
      if (pass == 0 && orient(a, b, c) == 0) continue;
      if (orient(a, b, root) >= 0 && orient(b, c, root) >= 0 && orient(c, a, root) >= 0) {
        t0 = t;
        break;
      }
    }
  }
  if (t0 < 0) throw GeometryError("SPT root outside the polygon");

  auto assign = [&](int vid, int par, double cum, double el) {
    if (tree->parent[vid] != -2) return;
    tree->parent[vid] = par;
    tree->cum[vid] = cum;
    tree->elen[vid] = el;
  };
  {
    int c[3] = {tris_[t0].a, tris_[t0].b, tris_[t0].c};
    for (int k = 0; k < 3; ++k) {
      double d = dist(root, poly_.vertex(c[k]));
      assign(c[k], -1, d, d);
    }
  }

  struct Funnel {
    std::vector<int> chain;  // u .. apex .. w (ids, -1 = root point)
    int apex = 0;
    int into = -1;           // triangle being entered
  };
  std::vector<Funnel> stack;
  {
    int c[3] = {tris_[t0].a, tris_[t0].b, tris_[t0].c};
    for (int k = 0; k < 3; ++k) {
      if (adj_[t0][k] < 0) continue;
      Funnel f;
      f.chain = {c[k], -1, c[(k + 1) % 3]};
      f.apex = 1;
      f.into = adj_[t0][k];
      stack.push_back(std::move(f));
    }
  }

  std::vector<char> entered(tris_.size(), 0);
  entered[t0] = 1;

  std::vector<std::pair<double, int>> cand;
  while (!stack.empty()) {
    Funnel f = std::move(stack.back());
    stack.pop_back();
    int tri = f.into;
    assert(!entered[tri]);
    entered[tri] = 1;

    int u = f.chain.front(), w = f.chain.back();
    int c[3] = {tris_[tri].a, tris_[tri].b, tris_[tri].c};
    int z = -1;
    for (int k = 0; k < 3; ++k) {
      if (c[k] != u && c[k] != w) z = c[k];
    }
    assert(z >= 0);
    Point zp = poly_.vertex(z);
    int m = static_cast<int>(f.chain.size()) - 1;

    // Attach z: cheapest chain vertex whose straight segment to z stays in
    // the funnel-plus-triangle region. A candidate is valid when its
    // segment crosses no non-incident chain edge and its midpoint lies in
    // the closed region (chain + the two far triangle edges). The true
    // tangent vertex always qualifies, and every qualifying candidate is a
    // realizable path, so the cheapest qualifier is exact.
    std::vector<Point> ring;
    ring.reserve(m + 2);
    for (int i = 0; i <= m; ++i) ring.push_back(pt(f.chain[i]));
    ring.push_back(zp);
    cand.clear();
    for (int i = 0; i <= m; ++i) {
      cand.push_back({cum_of(f.chain[i]) + dist(pt(f.chain[i]), zp), i});
    }
    std::sort(cand.begin(), cand.end());
    int attach = -1;
    for (const auto& [val, i] : cand) {
      Point a = pt(f.chain[i]);
      bool ok = true;
      for (int j = 0; j < m && ok; ++j) {
        if (j == i || j + 1 == i) continue;
        if (properly_cross(a, zp, pt(f.chain[j]), pt(f.chain[j + 1]))) ok = false;
      }
      if (ok && !in_ring(ring, {0.5 * (a.x + zp.x), 0.5 * (a.y + zp.y)})) ok = false;
      if (ok) {
        attach = i;
        break;
      }
    }
    if (attach < 0) attach = f.apex;  // numerically degenerate funnel; apex is safe
    double el = dist(pt(f.chain[attach]), zp);
    if (tree->parent[z] == -2) {
      assign(z, f.chain[attach], cum_of(f.chain[attach]) + el, el);
    }

    // Split into the two far diagonals of the triangle.
    for (int k = 0; k < 3; ++k) {
      int e0 = c[k], e1 = c[(k + 1) % 3];
      int nb = adj_[tri][k];
      if (nb < 0 || entered[nb]) continue;
      bool has_z = (e0 == z || e1 == z);
      if (!has_z) continue;  // that is the entry diagonal
      Funnel g;
      g.into = nb;
      int other = (e0 == z) ? e1 : e0;
      if (other == u) {
        g.chain.assign(f.chain.begin(), f.chain.begin() + attach + 1);
        g.chain.push_back(z);
        g.apex = std::min(f.apex, attach);
      } else {
        g.chain.assign(f.chain.begin() + attach, f.chain.end());
        g.chain.insert(g.chain.begin(), z);
        g.apex = (attach >= f.apex) ? 1 : (f.apex - attach + 1);
      }
      stack.push_back(std::move(g));
    }
  }

  for (int v = 0; v < n; ++v) {
    if (tree->parent[v] == -2) throw GeometryError("SPT did not reach every vertex");
  }

  // DFS preorder with children in increasing vertex order.
  std::vector<std::vector<int>> children(n + 1);
  for (int v = 0; v < n; ++v) {
    int p = tree->parent[v];
    children[p < 0 ? n : p].push_back(v);
  }
  tree->preorder.reserve(n);
  std::vector<int> dfs;
  auto push_children = [&](int node) {
    auto& ch = children[node];
    std::sort(ch.begin(), ch.end(), std::greater<int>());
    for (int c2 : ch) dfs.push_back(c2);
  };
  push_children(n);
  while (!dfs.empty()) {
    int v = dfs.back();
    dfs.pop_back();
    tree->preorder.push_back(v);
    push_children(v);
  }
  return tree;
}

const FunnelSptProvider::Tree& FunnelSptProvider::tree_for(Point root) {
  ensure_triangulated();
  for (auto& t : lru_) {
    if (t->root == root) {
      t->stamp = ++stamp_;
      return *t;
    }
  }
  auto tree = build_tree(root);
  tree->stamp = ++stamp_;
  long long words = static_cast<long long>(poly_.size()) * 5;
  if (static_cast<int>(lru_.size()) >= kLruSize) {
    auto oldest = std::min_element(lru_.begin(), lru_.end(),
                                   [](const auto& a, const auto& b) { return a->stamp < b->stamp; });
    *oldest = std::move(tree);
    return **oldest;
  }
  if (ws_) {
    ws_->alloc_provider(words);
    charged_ += words;
  }
  lru_.push_back(std::move(tree));
  return *lru_.back();
}

StreamPtr<SptEdge> FunnelSptProvider::open(Point root) {
  const Tree& tree = tree_for(root);
  if (ws_) ws_->note_replay();
  struct St {
    const Tree* t;
    const Polygon* poly;
    Workspace* ws;
    size_t i = 0;
  };
  auto st = std::make_shared<St>(St{&tree, &poly_, ws_});
  return make_stream<SptEdge>([st](SptEdge& out) {
    if (st->i >= st->t->preorder.size()) return false;
    int v = st->t->preorder[st->i++];
    out.parent = st->t->parent[v];
    out.child = v;
    out.child_point = st->poly->vertex(v);
    out.cum_dist = st->t->cum[v];
    out.edge_len = st->t->elen[v];
    if (st->ws) st->ws->note_streamed(1);
    return true;
  });
}

// ---------------------------------------------------------------------------

double geodesic_distance(SptProvider& prov, Point p, int q_vertex) {
  auto s = prov.open(p);
  SptEdge e;
  while (s->next(e)) {
    if (e.child == q_vertex) return e.cum_dist;
  }
  throw GeometryError("vertex not reached by SPT stream");
}

double geodesic_distance(SptProvider& prov, Point p, Point q) {
  const Polygon& poly = prov.polygon();
  double best = std::numeric_limits<double>::infinity();
  if (segment_in_polygon(poly, p, q)) best = dist(p, q);
  auto s = prov.open(p);
  SptEdge e;
  while (s->next(e)) {
    double lower = e.cum_dist + dist(e.child_point, q);
    if (lower >= best) continue;
    if (segment_in_polygon(poly, e.child_point, q)) best = lower;
  }
  return best;
}

FarthestInfo farthest_neighbors(SptProvider& prov, Point p, double eps) {
  constexpr int kMaxWitness = 8;
  FarthestInfo out;
  struct Witness {
    int vid;
    double cum;
    Point dir;
  };
  std::vector<Witness> wit;
  bool overflow = false;
  double best = -1.0;

  Point anchor_pt;
  {
    auto s = prov.open(p);
    SptEdge e;
    while (s->next(e)) {
      if (e.parent < 0) anchor_pt = e.child_point;
      if (e.cum_dist > best) best = e.cum_dist;
      if (e.cum_dist >= best - eps) {
        wit.push_back({e.child, e.cum_dist, normalize(anchor_pt - p)});
        // Drop witnesses that can no longer be within eps of the running max.
        if (wit.size() > static_cast<size_t>(kMaxWitness)) {
          std::vector<Witness> keep;
          for (const Witness& w : wit) {
            if (w.cum >= best - eps) keep.push_back(w);
          }
          wit.swap(keep);
          if (wit.size() > static_cast<size_t>(kMaxWitness)) {
            overflow = true;
            break;
          }
        }
      }
    }
  }
  out.distance = best;

  auto fold_dir = [&](Point d) {
    if (d.x == 0.0 && d.y == 0.0) return;
    Cone& c = out.cone;
    if (!c.any) {
      c.ref = d;
      c.lo = c.hi = 0.0;
      c.any = true;
      return;
    }
    double th = wrap_angle(std::atan2(cross(c.ref, d), dot(c.ref, d)));
    c.lo = std::min(c.lo, th);
    c.hi = std::max(c.hi, th);
    if (c.hi - c.lo >= M_PI - 1e-12) c.full = true;
  };

  if (!overflow) {
    std::vector<Witness> final_wit;
    for (const Witness& w : wit) {
      if (w.cum >= best - eps) final_wit.push_back(w);
    }
    out.count = static_cast<int>(final_wit.size());
    for (const Witness& w : final_wit) {
      out.vertices.push_back(w.vid);
      out.first_dirs.push_back(w.dir);
      fold_dir(w.dir);
    }
    return out;
  }

  // Second pass with the final maximum known.
  auto s = prov.open(p);
  SptEdge e;
  double maxd = -1.0;
  while (s->next(e)) maxd = std::max(maxd, e.cum_dist);
  out.distance = maxd;
  s = prov.open(p);
  while (s->next(e)) {
    if (e.parent < 0) anchor_pt = e.child_point;
    if (e.cum_dist >= maxd - eps) {
      ++out.count;
      Point d = normalize(anchor_pt - p);
      if (static_cast<int>(out.vertices.size()) < kMaxWitness) {
        out.vertices.push_back(e.child);
        out.first_dirs.push_back(d);
      }
      fold_dir(d);
    }
  }
  return out;
}

StreamFactory<CircleConstraint> root_child_circles(SptProvider& prov, Point root) {
  SptProvider* pp = &prov;
  return [pp, root]() -> StreamPtr<CircleConstraint> {
    struct St {
      StreamPtr<SptEdge> in;
      CircleConstraint cur;
      double cur_cum = 0.0;
      bool pending = false;
      bool done = false;
    };
    auto st = std::make_shared<St>();
    st->in = pp->open(root);
    return make_stream<CircleConstraint>([st](CircleConstraint& out) {
      SptEdge e;
      while (!st->done) {
        if (!st->in->next(e)) {
          st->done = true;
          break;
        }
        if (e.parent < 0) {
          if (st->pending) {
            out = st->cur;
            st->cur = {e.child_point, 0.0};
            st->cur_cum = e.cum_dist;
            return true;
          }
          st->cur = {e.child_point, 0.0};
          st->cur_cum = e.cum_dist;
          st->pending = true;
        } else {
          st->cur.offset = std::max(st->cur.offset, e.cum_dist - st->cur_cum);
        }
      }
      if (st->pending) {
        out = st->cur;
        st->pending = false;
        return true;
      }
      return false;
    });
  };
}

uint64_t spt_fingerprint(SptProvider& prov, Point root) {
  uint64_t h = 1469598103934665603ull;
  auto mix = [&](uint64_t x) {
    h ^= x;
    h *= 1099511628211ull;
  };
  auto s = prov.open(root);
  SptEdge e;
  while (s->next(e)) {
    mix(static_cast<uint64_t>(e.parent + 1));
    mix(static_cast<uint64_t>(e.child));
  }
  return h;
}

}  // namespace geocenter

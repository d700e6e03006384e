#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

#include "geocenter/oracle.hpp"
#include "geocenter/spt.hpp"
#include "testrun.hpp"

using namespace geocenter;
namespace tg = geocenter::testgen;

namespace {

std::vector<SptEdge> collect(SptProvider& prov, Point root) {
  std::vector<SptEdge> out;
  auto s = prov.open(root);
  SptEdge e;
  while (s->next(e)) out.push_back(e);
  return out;
}

}  // namespace

TEST_CASE("convex polygon: depth-one tree with Euclidean distances") {
  tg::TestRun run(tg::unit_square());
  Point root{0.3, 0.4};
  auto edges = collect(run.prov, root);
  REQUIRE(edges.size() == 4);
  for (const auto& e : edges) {
    CHECK(e.parent == -1);
    CHECK(e.cum_dist == doctest::Approx(dist(root, e.child_point)).epsilon(1e-12));
  }
  // DFS preorder with ascending children: 0,1,2,3.
  for (int i = 0; i < 4; ++i) CHECK(edges[i].child == i);
}

TEST_CASE("L-polygon hand-traced values") {
  tg::TestRun run(tg::l_polygon());
  Point root{1.9, 0.9};
  auto edges = collect(run.prov, root);
  REQUIRE(edges.size() == 6);
  std::map<int, SptEdge> by_child;
  for (const auto& e : edges) by_child[e.child] = e;
  // Vertex 5 = (0,2) is blocked by the reflex corner (1,1) = vertex 3.
  CHECK(by_child[5].parent == 3);
  double expect = dist(root, {1, 1}) + std::sqrt(2.0);
  CHECK(by_child[5].cum_dist == doctest::Approx(expect).epsilon(1e-9));
  CHECK(by_child[5].cum_dist == doctest::Approx(2.319753).epsilon(1e-5));
  // (1,2) is also blocked by the notch; the rest is directly visible.
  CHECK(by_child[4].parent == 3);
  CHECK(by_child[4].cum_dist == doctest::Approx(dist(root, {1, 1}) + 1.0).epsilon(1e-12));
  for (int v : {0, 1, 2, 3}) CHECK(by_child[v].parent == -1);
}

TEST_CASE("replay determinism") {
  tg::TestRun run(tg::l_polygon());
  Point root{0.25, 0.25};
  auto a = collect(run.prov, root);
  auto b = collect(run.prov, root);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].parent == b[i].parent);
    CHECK(a[i].child == b[i].child);
    CHECK(a[i].cum_dist == b[i].cum_dist);  // bitwise
  }
  CHECK(run.ws.report().spt_replays == 2);
}

TEST_CASE("tree-path consistency, symmetry and lower bound vs oracle") {
  Rng rng(17);
  for (int rep = 0; rep < 12; ++rep) {
    Polygon poly = tg::random_polygon(10 + static_cast<int>(rng.bounded(30)), rep, rng);
    tg::TestRun run(poly);
    oracle::BruteGeodesic bg(poly);
    Point p = tg::interior_point(poly, rng);
    auto edges = collect(run.prov, p);
    std::map<int, double> cum;
    for (const auto& e : edges) {
      double base = e.parent < 0 ? 0.0 : cum[e.parent];
      CHECK(e.cum_dist == doctest::Approx(base + e.edge_len).epsilon(1e-12));
      cum[e.child] = e.cum_dist;
      CHECK(e.cum_dist >= dist(p, e.child_point) - 1e-9);
      // Oracle agreement per vertex.
      CHECK(e.cum_dist ==
            doctest::Approx(bg.distance(p, poly.vertex(e.child))).epsilon(1e-7));
    }
    // Symmetry of the point-to-point distance.
    Point q = tg::interior_point(poly, rng);
    double dpq = geodesic_distance(run.prov, p, q);
    double dqp = geodesic_distance(run.prov, q, p);
    CHECK(dpq == doctest::Approx(dqp).epsilon(1e-8));
    CHECK(dpq == doctest::Approx(bg.distance(p, q)).epsilon(1e-7));
  }
}

TEST_CASE("farthest neighbors examples") {
  tg::TestRun sq(tg::unit_square());
  FarthestInfo f1 = farthest_neighbors(sq.prov, {0.5, 0.5}, 1e-9);
  CHECK(f1.distance == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
  CHECK(f1.count == 4);
  CHECK(f1.cone.full);  // directions to all four corners span the full circle

  tg::TestRun L(tg::l_polygon());
  FarthestInfo f2 = farthest_neighbors(L.prov, {0.25, 0.25}, 1e-9);
  CHECK(f2.distance == doctest::Approx(std::sqrt(3.625)).epsilon(1e-12));
  REQUIRE(f2.count == 2);
  std::set<int> ids(f2.vertices.begin(), f2.vertices.end());
  CHECK(ids == std::set<int>{2, 4});  // (2,1) and (1,2)

  // Convex: farthest equals the Euclidean-farthest vertex.
  Rng rng(3);
  Polygon cv = tg::convex_polygon(12, rng);
  tg::TestRun cr(cv);
  Point p = tg::interior_point(cv, rng);
  FarthestInfo f3 = farthest_neighbors(cr.prov, p, 1e-9);
  double emax = 0;
  for (Point v : cv.vertices()) emax = std::max(emax, dist(p, v));
  CHECK(f3.distance == doctest::Approx(emax).epsilon(1e-12));
}

TEST_CASE("root-child circles") {
  // Convex: one circle per vertex, all offsets zero.
  tg::TestRun sq(tg::unit_square());
  auto fact = root_child_circles(sq.prov, {0.4, 0.3});
  std::vector<CircleConstraint> cs;
  {
    auto s = fact();
    CircleConstraint c;
    while (s->next(c)) cs.push_back(c);
  }
  REQUIRE(cs.size() == 4);
  for (const auto& c : cs) CHECK(c.offset == 0.0);

  // L-polygon from (1.9, 0.9): circle at (1,1) has offset sqrt(2).
  tg::TestRun L(tg::l_polygon());
  Point root{1.9, 0.9};
  auto factL = root_child_circles(L.prov, root);
  std::vector<CircleConstraint> cl;
  {
    auto s = factL();
    CircleConstraint c;
    while (s->next(c)) cl.push_back(c);
  }
  REQUIRE(cl.size() == 4);  // (1,2) and (0,2) hang below the reflex corner
  double max_identity = 0;
  bool found = false;
  for (const auto& c : cl) {
    if (c.anchor == Point{1, 1}) {
      found = true;
      CHECK(c.offset == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    } else {
      CHECK(c.offset == 0.0);
    }
    max_identity = std::max(max_identity, c.value_at(root));
  }
  CHECK(found);
  // max over circles at the root equals the farthest distance.
  FarthestInfo fi = farthest_neighbors(L.prov, root, 1e-9);
  CHECK(max_identity == doctest::Approx(fi.distance).epsilon(1e-12));
}

TEST_CASE("fingerprint separates combinatorics") {
  tg::TestRun L(tg::l_polygon());
  uint64_t a = spt_fingerprint(L.prov, {1.9, 0.9});
  uint64_t b = spt_fingerprint(L.prov, {1.9, 0.901});
  uint64_t c = spt_fingerprint(L.prov, {0.25, 0.25});
  CHECK(a == b);  // same tree shape
  CHECK(a != c);  // (0,2) becomes directly visible
}

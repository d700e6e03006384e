#include <doctest.h>

#include <set>

#include "geocenter/polygon.hpp"
#include "testgen.hpp"

using namespace geocenter;
namespace tg = geocenter::testgen;

TEST_CASE("validate_simple verdicts") {
  CHECK(validate_simple(tg::unit_square()).empty());

  auto v1 = validate_simple(tg::bowtie());
  REQUIRE(!v1.empty());
  bool self = false;
  for (const auto& v : v1) self |= v.kind == Violation::kSelfIntersection;
  CHECK(self);

  Polygon cw({{0, 0}, {0, 1}, {1, 1}, {1, 0}});
  auto v2 = validate_simple(cw);
  bool orient_bad = false;
  for (const auto& v : v2) orient_bad |= v.kind == Violation::kOrientation;
  CHECK(orient_bad);
}

TEST_CASE("vertical slice examples") {
  Polygon sq = tg::unit_square();
  ChordedRegion r(&sq, 0.0);
  auto s = vertical_slice(r, 0.5);
  REQUIRE(s.has_value());
  CHECK(s->first.y == doctest::Approx(0.0));
  CHECK(s->second.y == doctest::Approx(1.0));

  Polygon L = tg::l_polygon();
  ChordedRegion rl(&L, 0.0);
  auto s1 = vertical_slice(rl, 1.5);
  REQUIRE(s1.has_value());
  CHECK(s1->first.y == doctest::Approx(0.0));
  CHECK(s1->second.y == doctest::Approx(1.0));
  auto s2 = vertical_slice(rl, 0.5);
  REQUIRE(s2.has_value());
  CHECK(s2->first.y == doctest::Approx(0.0));
  CHECK(s2->second.y == doctest::Approx(2.0));
  CHECK_FALSE(vertical_slice(rl, 9.0).has_value());
}

TEST_CASE("ray probes agree with a naive scan on random polygons") {
  Rng rng(11);
  for (int rep = 0; rep < 40; ++rep) {
    Polygon poly = tg::random_polygon(20 + static_cast<int>(rng.bounded(40)), rep, rng);
    double delta = shear_delta(poly);
    ChordedRegion region(&poly, delta);
    Point u = chord_direction(delta);
    std::vector<ChordProbe> batch;
    region.for_each_run_vertex([&](int vid, int pos) {
      ChordProbe pr;
      pr.vid = vid;
      pr.pos_v = pos;
      pr.sx = sheared_x(poly.vertex(vid), delta);
      pr.tau_v = dot(poly.vertex(vid), u);
      batch.push_back(pr);
    });
    probe_vertical_chords(region, batch, nullptr);
    for (const auto& pr : batch) {
      // Naive per-query scan over all edges.
      int above = 0, total = 0;
      double best_up = 1e300, best_dn = -1e300;
      region.for_each_boundary([&](const ChordedRegion::BoundaryEdge& e) {
        if (e.wall) return;
        double sa = sheared_x(e.a, delta), sb = sheared_x(e.b, delta);
        if (!(pr.sx > std::min(sa, sb) && pr.sx < std::max(sa, sb))) return;
        double t = (pr.sx - sa) / (sb - sa);
        double tau = dot(e.a + t * (e.b - e.a), u);
        ++total;
        if (tau > pr.tau_v) {
          ++above;
          best_up = std::min(best_up, tau);
        } else {
          best_dn = std::max(best_dn, tau);
        }
      });
      CHECK(pr.crossings_total == total);
      CHECK(pr.crossings_up == above);
      if (above > 0) CHECK(pr.up.tau == doctest::Approx(best_up).epsilon(1e-12));
      if (total - above > 0) CHECK(pr.dn.tau == doctest::Approx(best_dn).epsilon(1e-12));
    }
  }
}

TEST_CASE("balanced chord bound on a regular 12-gon") {
  std::vector<Point> pts;
  for (int i = 0; i < 12; ++i) {
    double a = 2 * M_PI * i / 12 + 0.1;
    pts.push_back({std::cos(a), std::sin(a)});
  }
  Polygon poly(pts);
  ChordedRegion region(&poly, shear_delta(poly));
  BalancedChord bc = balanced_vertical_chord(region, nullptr);
  CHECK(bc.side_fwd <= 8 + 2);
  CHECK(bc.side_bwd <= 8 + 2);
  // Exhaustive check: the chosen chord is at least as balanced as the bound.
  CHECK(std::max(bc.side_fwd, bc.side_bwd) <= (2 * 12 + 2) / 3 + 2);
}

TEST_CASE("balanced chord and split invariants on random polygons") {
  Rng rng(23);
  for (int rep = 0; rep < 60; ++rep) {
    int n = 12 + static_cast<int>(rng.bounded(88));
    Polygon poly = tg::random_polygon(n, rep, rng);
    ChordedRegion region(&poly, shear_delta(poly));
    int m = region.run_vertex_count();
    BalancedChord bc = balanced_vertical_chord(region, nullptr);
    int bound = (2 * m + 2) / 3 + 2;
    CHECK(std::max(bc.side_fwd, bc.side_bwd) <= bound);
    // The two sides' run-vertex counts sum to m + 1: the anchor vertex is a
    // corner of both sides, the far endpoint is a fresh edge point.
    CHECK(bc.side_fwd + bc.side_bwd == m + 1);

    ChordedRegion fwd = split_region(region, bc, ChordSide::Forward);
    ChordedRegion bwd = split_region(region, bc, ChordSide::Backward);
    CHECK(fwd.run_vertex_count() == bc.side_fwd);
    CHECK(bwd.run_vertex_count() == bc.side_bwd);
    // The sides lie on opposite sides of the chord line.
    CHECK(region_sx_side(fwd, bc.chord.sx) * region_sx_side(bwd, bc.chord.sx) < 0);

    // Nested split: splitting the forward side again keeps counts consistent.
    if (fwd.run_vertex_count() >= 12) {
      BalancedChord bc2 = balanced_vertical_chord(fwd, nullptr);
      ChordedRegion fwd2 = split_region(fwd, bc2, ChordSide::Forward);
      ChordedRegion bwd2 = split_region(fwd, bc2, ChordSide::Backward);
      CHECK(fwd2.run_vertex_count() + bwd2.run_vertex_count() == fwd.run_vertex_count() + 1);
      CHECK(std::max(fwd2.run_vertex_count(), bwd2.run_vertex_count()) <=
            (2 * fwd.run_vertex_count() + 2) / 3 + 2);
    }
  }
}

TEST_CASE("materialized regions are simple CCW polygons") {
  Rng rng(31);
  for (int rep = 0; rep < 40; ++rep) {
    int n = 16 + static_cast<int>(rng.bounded(60));
    Polygon poly = tg::random_polygon(n, rep, rng);
    ChordedRegion region(&poly, shear_delta(poly));
    for (int cut = 0; cut < 3 && region.run_vertex_count() > 12; ++cut) {
      BalancedChord bc = balanced_vertical_chord(region, nullptr);
      region = split_region(region, bc,
                            rng.bounded(2) == 0 ? ChordSide::Forward : ChordSide::Backward);
    }
    std::vector<Point> pts = region.materialize();
    REQUIRE(pts.size() >= 3);
    double area2 = 0;
    for (size_t i = 0; i < pts.size(); ++i) {
      area2 += cross(pts[i], pts[(i + 1) % pts.size()]);
    }
    CHECK(area2 > 0);  // CCW, nonempty interior
    CHECK(validate_simple(Polygon(pts)).empty());
  }
}

TEST_CASE("ear clipping examples") {
  // A triangle has no diagonals, a convex quad exactly one.
  auto t1 = ear_clip_triangulate({{0, 0}, {1, 0}, {0.5, 1}});
  CHECK(t1.size() == 1);
  CHECK(triangulation_diagonals(3, t1).empty());

  auto t2 = ear_clip_triangulate({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  CHECK(t2.size() == 2);
  CHECK(triangulation_diagonals(4, t2).size() == 1);

  // Non-convex pocket: diagonals must be interior and non-crossing.
  std::vector<Point> pocket{{0, 0}, {4, 0}, {4, 3}, {2, 1}, {0, 3}};
  Polygon pk(pocket);
  auto t3 = ear_clip_triangulate(pocket);
  CHECK(t3.size() == 3);
  auto diags = triangulation_diagonals(5, t3);
  for (auto [i, j] : diags) {
    CHECK(segment_in_polygon(pk, pocket[i], pocket[j]));
    for (auto [k, l] : diags) {
      if (i == k && j == l) continue;
      // Diagonals may share endpoints but never cross properly.
      Point a = pocket[i], b = pocket[j], c = pocket[k], d = pocket[l];
      bool share = (a == c) || (a == d) || (b == c) || (b == d);
      if (!share) {
        int o1 = orient(a, b, c), o2 = orient(a, b, d);
        int o3 = orient(c, d, a), o4 = orient(c, d, b);
        CHECK(!(o1 != o2 && o3 != o4 && o1 && o2 && o3 && o4));
      }
    }
  }
}

TEST_CASE("ear clipping on random polygons covers the area") {
  Rng rng(41);
  for (int rep = 0; rep < 30; ++rep) {
    int n = 6 + static_cast<int>(rng.bounded(40));
    Polygon poly = tg::random_polygon(n, rep, rng);
    std::vector<Point> pts(poly.vertices().begin(), poly.vertices().end());
    auto tris = ear_clip_triangulate(pts);
    CHECK(static_cast<int>(tris.size()) == poly.size() - 2);
    double sum = 0, area2 = 0;
    for (const auto& t : tris) {
      sum += orient_value(pts[t.a], pts[t.b], pts[t.c]);
    }
    for (int i = 0; i < poly.size(); ++i) area2 += cross(poly.vertex(i), poly.vertex(i + 1));
    CHECK(sum == doctest::Approx(area2).epsilon(1e-9));
  }
}

TEST_CASE("shear keeps vertex order and breaks ties") {
  Polygon sq = tg::unit_square();
  double d = shear_delta(sq);
  CHECK(d > 0);  // the square has tied abscissas
  std::set<double> sxs;
  for (Point p : sq.vertices()) sxs.insert(sheared_x(p, d));
  CHECK(sxs.size() == 4);

  Polygon tri({{0, 0}, {2, 0.1}, {1, 1}});
  CHECK(shear_delta(tri) == 0.0);  // already distinct
}

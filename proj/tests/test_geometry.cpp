#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "geocenter/geometry.hpp"
#include "geocenter/rng.hpp"

using namespace geocenter;

TEST_CASE("orient basic signs") {
  CHECK(orient({0, 0}, {1, 0}, {0, 1}) == 1);
  CHECK(orient({0, 0}, {1, 1}, {2, 2}) == 0);
  CHECK(orient({0, 0}, {0, 1}, {1, 1}) == -1);
}

TEST_CASE("orient decides near-collinear exactly") {
  // One-ulp offsets from the line y = x through (12,12)-(24,24): the double
  // filter cannot separate these, so the expansion path must.
  Point a{12, 12}, b{24, 24};
  double x = 0.5;
  for (int k = -10; k <= 10; ++k) {
    double cx = x;
    for (int s = 0; s < std::abs(k); ++s) cx = std::nextafter(cx, k > 0 ? 1.0 : 0.0);
    int expected = k == 0 ? 0 : (k > 0 ? -1 : 1);
    CHECK(orient(a, b, {cx, x}) == expected);
  }
  CHECK(orient({1e-30, 1e-30}, {2e-30, 2e-30}, {3e-30, 3e-30}) == 0);
}

TEST_CASE("orient antisymmetry property") {
  Rng rng(7);
  for (int i = 0; i < 2000; ++i) {
    Point a{rng.unit() * 2 - 1, rng.unit() * 2 - 1};
    Point b{rng.unit() * 2 - 1, rng.unit() * 2 - 1};
    Point c{rng.unit() * 2 - 1, rng.unit() * 2 - 1};
    int o = orient(a, b, c);
    CHECK(orient(b, a, c) == -o);
    CHECK(orient(a, c, b) == -o);
    CHECK(orient(c, b, a) == -o);
  }
}

TEST_CASE("covering bisector basics") {
  // Equal offsets reduce to the perpendicular bisector.
  CircleConstraint c1{{0, 0}, 1}, c2{{2, 0}, 1};
  Segment seg{{-1, 0}, {3, 0}};
  auto r = covering_bisector_hits(c1, c2, seg);
  REQUIRE(r.hits.size() == 1);
  CHECK(seg.at(r.hits[0].t).x == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.hits[0].smaller_below == 1);

  // On-axis solve: x = (4 - x) + 2 -> x = 3 (t = 0.75).
  CircleConstraint c3{{0, 0}, 0}, c4{{4, 0}, 2};
  Segment seg2{{0, 0}, {4, 0}};
  auto r2 = covering_bisector_hits(c3, c4, seg2);
  REQUIRE(r2.hits.size() == 1);
  CHECK(r2.hits[0].t == doctest::Approx(0.75).epsilon(1e-12));

  // Dominated everywhere by the triangle inequality: no hits.
  CircleConstraint c5{{0, 0}, 2}, c6{{1, 0}, 0};
  auto r3 = covering_bisector_hits(c5, c6, Segment{{-3, -1}, {4, 2}});
  CHECK(r3.hits.empty());

  // Identical constraints are reported distinctly.
  auto r4 = covering_bisector_hits(c1, c1, seg);
  CHECK(r4.identical);
}

TEST_CASE("covering bisector properties on random data") {
  Rng rng(42);
  int total_hits = 0;
  for (int i = 0; i < 2000; ++i) {
    CircleConstraint c1{{rng.unit() * 4 - 2, rng.unit() * 4 - 2}, rng.unit()};
    CircleConstraint c2{{rng.unit() * 4 - 2, rng.unit() * 4 - 2}, rng.unit()};
    Segment seg{{rng.unit() * 6 - 3, rng.unit() * 6 - 3}, {rng.unit() * 6 - 3, rng.unit() * 6 - 3}};
    if (seg.a == seg.b) continue;
    auto r = covering_bisector_hits(c1, c2, seg);
    CHECK(r.hits.size() <= 2);
    double prev = 0.0;
    for (const auto& h : r.hits) {
      ++total_hits;
      Point x = seg.at(h.t);
      // Defining equality holds at every reported hit.
      CHECK(std::abs(c1.value_at(x) - c2.value_at(x)) < 1e-8);
      // Dominance annotation matches direct evaluation just below.
      double ts = 0.5 * (prev + h.t);
      if (h.t > 1e-9) {
        Point xs = seg.at(ts);
        int smaller = c1.value_at(xs) <= c2.value_at(xs) ? 1 : 2;
        CHECK(h.smaller_below == smaller);
      }
      prev = h.t;
    }
    // Between consecutive hits the sign of v1 - v2 is constant: sample.
    std::vector<double> cuts{0.0};
    for (const auto& h : r.hits) cuts.push_back(h.t);
    cuts.push_back(1.0);
    for (size_t k = 0; k + 1 < cuts.size(); ++k) {
      if (cuts[k + 1] - cuts[k] < 1e-6) continue;
      double s0 = 0;
      bool consistent = true;
      for (int q = 1; q <= 5; ++q) {
        double t = cuts[k] + (cuts[k + 1] - cuts[k]) * q / 6.0;
        Point x = seg.at(t);
        double d = c1.value_at(x) - c2.value_at(x);
        if (std::abs(d) < 1e-7) continue;
        if (s0 == 0) s0 = d > 0 ? 1 : -1;
        else if ((d > 0 ? 1 : -1) != s0) consistent = false;
      }
      CHECK(consistent);
    }
  }
  CHECK(total_hits > 100);  // the sweep actually exercised hits
}

TEST_CASE("rotation identities") {
  Rotation r = Rotation::about({0, 0}, M_PI / 2);
  Point p = r.apply({1, 0});
  CHECK(p.x == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(p.y == doctest::Approx(1.0).epsilon(1e-12));

  Rng rng(5);
  for (int i = 0; i < 2000; ++i) {
    Rotation rr = Rotation::about({rng.unit(), rng.unit()}, rng.unit() * 10 - 5);
    Point q{rng.unit() * 4 - 2, rng.unit() * 4 - 2};
    Point back = rr.invert(rr.apply(q));
    CHECK(std::abs(back.x - q.x) < 1e-12);
    CHECK(std::abs(back.y - q.y) < 1e-12);
  }

  // A slope-1 line rotated by -pi/4 becomes horizontal.
  Rotation r2 = Rotation::about({0, 0}, -M_PI / 4);
  Point d = r2.apply_dir(normalize({1, 1}));
  CHECK(std::abs(d.y) < 1e-12);
}

#pragma once

#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "geocenter/geometry.hpp"
#include "geocenter/workspace.hpp"

namespace geocenter {

class GeometryError : public std::runtime_error {
 public:
  explicit GeometryError(const std::string& w) : std::runtime_error(w) {}
};
class InvalidPolygon : public GeometryError {
 public:
  explicit InvalidPolygon(const std::string& w) : GeometryError(w) {}
};
class NoBalancedChord : public GeometryError {
 public:
  explicit NoBalancedChord(const std::string& w) : GeometryError(w) {}
};

/// Simple polygon, vertices in CCW order. The vertex array is read-only
/// input and is never written by any algorithm here.
class Polygon {
 public:
  Polygon() = default;
  explicit Polygon(std::vector<Point> pts) : vertices_(std::move(pts)) {}

  int size() const { return static_cast<int>(vertices_.size()); }
  std::span<const Point> vertices() const { return vertices_; }
  Point vertex(int i) const { return vertices_[wrap(i)]; }
  int wrap(int i) const {
    int n = size();
    i %= n;
    return i < 0 ? i + n : i;
  }
  /// Bounding-box diagonal; deterministic scale for tolerances.
  double scale() const;

 private:
  std::vector<Point> vertices_;
};

struct Violation {
  enum Kind { kTooFew, kRepeatedVertex, kOrientation, kSelfIntersection, kDegenerateEdge } kind;
  int i = -1, j = -1;
  std::string what;
};

/// Confirms simplicity, CCW orientation and distinct vertices; O(n^2)
/// pairwise edge check. Returns violations instead of raising.
std::vector<Violation> validate_simple(const Polygon& poly);

/// Closed point-in-polygon (boundary counts as inside).
bool point_in_polygon(const Polygon& poly, Point p);

/// True if the closed segment ab lies in the closure of the polygon.
/// Splits at collinear boundary vertices so grazing paths that leave the
/// polygon through a notch are rejected.
bool segment_in_polygon(const Polygon& poly, Point a, Point b);

/// Shear coefficient so that sheared abscissas x + delta*y are pairwise
/// distinct over the vertices; 0 when plain abscissas already are.
double shear_delta(const Polygon& poly);

inline double sheared_x(Point p, double delta) { return p.x + delta * p.y; }

/// Unit direction of the (sheared-)vertical chord lines sx = const.
inline Point chord_direction(double delta) { return normalize(Point{-delta, 1.0}); }

/// A vertical chord in the sheared frame: x + delta*y == sx.
struct VerticalChord {
  double sx = 0.0;
  Point lower, upper;     // endpoints ordered by position along chord_direction
  int through_vertex = -1;
};

struct EarTriangle {
  int a, b, c;
};

/// Deterministic ear clipping (lowest-index ear first) of a CCW simple
/// polygon given by explicit points. Throws InvalidPolygon when stuck.
std::vector<EarTriangle> ear_clip_triangulate(const std::vector<Point>& pts);

/// Diagonals of a triangulation (edges that are not boundary edges).
std::vector<std::pair<int, int>> triangulation_diagonals(int n, const std::vector<EarTriangle>& tris);

/// Implicit sub-polygon bounded by contiguous boundary runs and vertical
/// chord walls. Stored as the cyclic piece sequence of its boundary;
/// O(#pieces) words, charged to the core meter by the caller.
class ChordedRegion {
 public:
  /// Corner-sequence piece: a run of polygon vertices [first..last]
  /// (cyclic, inclusive) or a single free corner on polygon edge `edge`
  /// (first == -1). `wall_after` marks the boundary edge leaving the
  /// piece's last corner as a chord wall; otherwise that edge follows the
  /// carrying polygon edge to the next piece's first corner.
  struct Piece {
    int first = -1, last = -1;
    Point pt;
    int edge = -1;
    bool wall_after = false;
  };

  ChordedRegion() = default;
  ChordedRegion(const Polygon* poly, double shear);

  const Polygon& polygon() const { return *poly_; }
  double shear() const { return shear_; }
  int run_vertex_count() const { return run_count_; }
  const std::vector<Piece>& pieces() const { return pieces_; }
  long long words() const { return static_cast<long long>(pieces_.size()) * 8 + 4; }

  struct BoundaryEdge {
    Point a, b;
    int poly_edge;  // -1 for walls
    bool wall;
    int ordinal;            // position in the traversal
    int run_prefix;         // run vertices arrived at up to this edge's start
    int piece = -1;         // owning piece (connectors belong to the piece before)
    int slot = -1;          // starting vid of an intra-run edge, -1 for connectors
  };
  void for_each_boundary(const std::function<void(const BoundaryEdge&)>& fn) const;

  /// Run vertices in boundary order: fn(vertex id, position 0..m-1).
  void for_each_run_vertex(const std::function<void(int, int)>& fn) const;

  /// Corner cycle as an explicit polygon (consecutive duplicates removed).
  std::vector<Point> materialize() const;

  // Split machinery (below) populates these directly.
  const Polygon* poly_ = nullptr;
  double shear_ = 0.0;
  std::vector<Piece> pieces_;
  int run_count_ = 0;
};

/// One probe slot of the batched vertical ray shooting; O(1) words.
struct ChordProbe {
  int vid = -1;       // anchor vertex
  double sx = 0.0;    // query abscissa (sheared)
  double tau_v = 0.0; // anchor position along the chord direction
  int pos_v = -1;     // anchor's run position

  struct Hit {
    bool valid = false;
    double tau = 0.0;
    Point point;
    int poly_edge = -1;
    int ordinal = -1;
    int run_prefix = 0;
  };
  Hit up, dn;         // nearest crossing above / below the anchor
  int up_piece = -1, up_slot = -1;
  int dn_piece = -1, dn_slot = -1;
  int crossings_up = 0;
  int crossings_total = 0;
};

/// One streaming pass over the region boundary updating all probes.
/// Streams every boundary edge once (metered via ws when given).
void probe_vertical_chords(const ChordedRegion& region, std::span<ChordProbe> batch,
                           Workspace* ws);

/// Convenience single query at an arbitrary abscissa: the lowest interior
/// interval of the vertical line at sx (no-chord when the line misses the
/// region).
std::optional<std::pair<Point, Point>> vertical_slice(const ChordedRegion& region, double sx);

struct BalancedChord {
  VerticalChord chord;
  int anchor_vid = -1;
  bool anchor_is_lower = false;  // anchor at the lower end of the chord
  Point far_point;
  int far_edge = -1;
  int far_ordinal = -1;
  int far_piece = -1, far_slot = -1;
  int side_fwd = 0, side_bwd = 0;  // run-vertex counts of the two sides
};

/// Lemma-3 style balanced vertical chord through a region vertex, found by
/// evaluating split sizes for vertex-anchored chords in batches of at most
/// `s` probes per boundary pass. Each side's run-vertex count is at most
/// ceil(2m/3) + 2; NoBalancedChord otherwise.
BalancedChord balanced_vertical_chord(const ChordedRegion& region, Workspace* ws);

enum class ChordSide { Forward, Backward };  // arc anchor->far vs far->anchor

/// Sub-region on one side of the chord. `Forward` keeps the boundary arc
/// from the anchor vertex to the far point (cycle order), `Backward` the
/// complementary arc. Both keep the chord as a new wall.
ChordedRegion split_region(const ChordedRegion& region, const BalancedChord& chord,
                           ChordSide side);

/// Signed side (+1 / -1) of increasing sheared abscissa for a sub-region
/// relative to the chord; used to map a geometric direction onto ChordSide.
double region_sx_side(const ChordedRegion& region, double chord_sx);

}  // namespace geocenter

#pragma once

#include <array>
#include <memory>
#include <vector>

#include "geocenter/geometry.hpp"
#include "geocenter/polygon.hpp"
#include "geocenter/streams.hpp"
#include "geocenter/workspace.hpp"

namespace geocenter {

struct SptEdge {
  int parent;        // vertex id, -1 when the parent is the root point
  int child;         // vertex id
  Point child_point;
  double cum_dist;   // geodesic distance root -> child
  double edge_len;   // |child_point - parent point|
};

/// Replayable DFS-preorder shortest-path-tree stream. Children of a node
/// are visited in increasing vertex order (CCW boundary order); replays
/// are deterministic. Every open() counts as one replay against the meter.
class SptProvider {
 public:
  virtual ~SptProvider() = default;
  virtual StreamPtr<SptEdge> open(Point root) = 0;
  virtual const Polygon& polygon() const = 0;
};

/// Reference provider: ear-clip triangulation once per polygon, then funnel
/// splitting over the dual tree per root. Internals are full-space and are
/// charged to the provider meter, not the core meter; the interface admits
/// true O(s)-space providers.
class FunnelSptProvider final : public SptProvider {
 public:
  FunnelSptProvider(const Polygon& poly, Workspace* ws);
  ~FunnelSptProvider() override;
  StreamPtr<SptEdge> open(Point root) override;
  const Polygon& polygon() const override { return poly_; }

 private:
  struct Tree {
    Point root;
    std::vector<int> parent;
    std::vector<double> cum;
    std::vector<double> elen;
    std::vector<int> preorder;  // child emission order
    long long stamp = 0;
  };
  void ensure_triangulated();
  const Tree& tree_for(Point root);
  std::unique_ptr<Tree> build_tree(Point root) const;

  const Polygon& poly_;
  Workspace* ws_;
  std::vector<EarTriangle> tris_;
  std::vector<std::array<int, 3>> adj_;  // neighbor across edge k = (corner k, corner k+1)
  bool triangulated_ = false;
  std::vector<std::unique_ptr<Tree>> lru_;
  long long stamp_ = 0;
  long long charged_ = 0;
  static constexpr int kLruSize = 8;
};

double geodesic_distance(SptProvider& prov, Point p, int q_vertex);
double geodesic_distance(SptProvider& prov, Point p, Point q);

/// Minimal angular interval (relative to `ref`) containing a direction set;
/// `full` once the span reaches pi (the set fits no open half-plane).
struct Cone {
  Point ref{1, 0};
  double lo = 0, hi = 0;
  bool any = false;
  bool full = false;
  double span() const { return any ? hi - lo : 0.0; }
  Point bisector() const {
    double a = 0.5 * (lo + hi);
    return {ref.x * std::cos(a) - ref.y * std::sin(a), ref.x * std::sin(a) + ref.y * std::cos(a)};
  }
};

struct FarthestInfo {
  double distance = 0.0;
  std::vector<int> vertices;      // argmax witnesses (capped)
  std::vector<Point> first_dirs;  // matching first-edge directions
  int count = 0;                  // true argmax set size
  Cone cone;
};

/// One streaming pass (a second one if more witnesses than the O(1)-word cap)
/// tracking the max cumulative distance, the argmax set within eps, each
/// argmax's root-child ancestor direction, and the spanned cone.
FarthestInfo farthest_neighbors(SptProvider& prov, Point p, double eps);

/// Circles C(r, f_r) per root child r, f_r the largest geodesic distance
/// from r into its subtree; one DFS pass, O(1) extra words, deterministic
/// emission order.
StreamFactory<CircleConstraint> root_child_circles(SptProvider& prov, Point root);

/// Bit-stable hash of the (parent, child) id sequence: equal iff the SPT
/// combinatorics agree.
uint64_t spt_fingerprint(SptProvider& prov, Point root);

}  // namespace geocenter

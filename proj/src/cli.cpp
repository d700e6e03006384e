#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "geocenter/center.hpp"
#include "geocenter/io.hpp"
#include "geocenter/oracle.hpp"

namespace geocenter {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitBudget = 3;

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

bool parse_point(const std::string& s, Point& out) {
  return std::sscanf(s.c_str(), "%lf,%lf", &out.x, &out.y) == 2;
}

int load_valid_polygon(const std::string& file, Polygon& poly) {
  try {
    poly = read_polygon_file(file);
  } catch (const ParseError& e) {
    std::cerr << file << ": " << e.what() << "\n";
    return kExitInvalid;
  }
  auto violations = validate_simple(poly);
  if (!violations.empty()) {
    for (const auto& v : violations) {
      std::cerr << file << ": " << v.what;
      if (v.i >= 0) std::cerr << " (edges " << v.i << ", " << v.j << ")";
      std::cerr << "\n";
    }
    return kExitInvalid;
  }
  return kExitOk;
}

long long default_space(int n) { return std::max<long long>(ceil_log2(n), 8); }

std::vector<std::vector<Point>> farthest_paths(SptProvider& prov, Point center,
                                               const std::vector<int>& support) {
  // Parent map for display only; runs after the metered solve.
  const Polygon& poly = prov.polygon();
  std::vector<int> parent(poly.size(), -1);
  auto s = prov.open(center);
  SptEdge e;
  while (s->next(e)) parent[e.child] = e.parent;
  std::vector<std::vector<Point>> out;
  for (int v : support) {
    std::vector<Point> path{poly.vertex(v)};
    int cur = v;
    while (parent[cur] >= 0) {
      cur = parent[cur];
      path.push_back(poly.vertex(cur));
    }
    path.push_back(center);
    out.push_back(std::move(path));
  }
  return out;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"geodesic center of a simple polygon in the bounded-workspace model"};
  app.require_subcommand(1);

  std::string file, svg_out, stats_out, a_str, b_str, root_str;
  long long space = -1;
  uint64_t seed = 1;
  double eps = 1e-9;
  int grid = 256;

  auto* solve = app.add_subcommand("solve", "compute the geodesic center");
  solve->add_option("file", file)->required();
  solve->add_option("--space", space, "workspace words (default max(ceil(log2 n), 8))");
  solve->add_option("--seed", seed);
  solve->add_option("--eps", eps);
  solve->add_option("--svg", svg_out);
  solve->add_option("--stats", stats_out);

  auto* chord = app.add_subcommand("chord", "constrained center on a segment");
  chord->add_option("file", file)->required();
  chord->add_option("--a", a_str, "segment start X,Y")->required();
  chord->add_option("--b", b_str, "segment end X,Y")->required();
  chord->add_option("--space", space);
  chord->add_option("--seed", seed);
  chord->add_option("--eps", eps);
  chord->add_option("--stats", stats_out);

  auto* oracle_cmd = app.add_subcommand("oracle", "brute-force center");
  oracle_cmd->add_option("file", file)->required();
  oracle_cmd->add_option("--grid", grid);

  auto* spt_cmd = app.add_subcommand("spt", "dump the SPT stream of a root");
  spt_cmd->add_option("file", file)->required();
  spt_cmd->add_option("--root", root_str, "root point X,Y")->required();

  auto* validate = app.add_subcommand("validate", "check the polygon file");
  validate->add_option("file", file)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalid;
  }

  Polygon poly;
  if (int rc = load_valid_polygon(file, poly); rc != kExitOk) {
    if (validate->parsed()) return rc;
    return rc;
  }
  if (validate->parsed()) {
    std::cout << "ok " << poly.size() << " vertices\n";
    return kExitOk;
  }

  try {
    if (solve->parsed()) {
      SolveConfig cfg;
      cfg.s = space > 0 ? space : default_space(poly.size());
      cfg.seed = seed;
      cfg.eps = eps;
      cfg.policy = WorkspaceBudget::Policy::Enforce;
      auto t0 = std::chrono::steady_clock::now();
      CenterResult res = geodesic_center(poly, cfg);
      double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      std::cout << fmt17(res.center.x) << " " << fmt17(res.center.y) << " " << fmt17(res.radius)
                << "\n";
      if (!stats_out.empty()) {
        std::ofstream f(stats_out);
        f << stats_json(res.report, secs) << "\n";
      }
      if (!svg_out.empty()) {
        Workspace ws({cfg.s, WorkspaceBudget::Policy::Record}, poly.size());
        FunnelSptProvider prov(poly, &ws);
        write_svg(svg_out, poly, res.center, res.radius,
                  farthest_paths(prov, res.center, res.support));
      }
      return kExitOk;
    }

    if (chord->parsed()) {
      Point a, b;
      if (!parse_point(a_str, a) || !parse_point(b_str, b)) {
        std::cerr << "expected --a X,Y and --b X,Y\n";
        return kExitInvalid;
      }
      if (a == b || !segment_in_polygon(poly, a, b)) {
        std::cerr << "segment is not inside the polygon\n";
        return kExitInvalid;
      }
      long long s = space > 0 ? space : default_space(poly.size());
      auto t0 = std::chrono::steady_clock::now();
      Workspace ws({s, WorkspaceBudget::Policy::Enforce}, poly.size());
      FunnelSptProvider prov(poly, &ws);
      Rng rng(seed);
      RunContext ctx;
      ctx.prov = &prov;
      ctx.ws = &ws;
      ctx.rng = &rng;
      ctx.eps = eps;
      ctx.scale = poly.scale();
      ConstrainedResult res = constrained_geodesic_center(ctx, {a, b});
      double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      std::cout << fmt17(res.point.x) << " " << fmt17(res.point.y) << " " << fmt17(res.radius)
                << "\n";
      if (!stats_out.empty()) {
        std::ofstream f(stats_out);
        f << stats_json(ws.report(), secs) << "\n";
      }
      return kExitOk;
    }

    if (oracle_cmd->parsed()) {
      oracle::BruteGeodesic bg(poly);
      auto [c, r] = oracle::brute_center(bg, grid);
      std::cout << fmt17(c.x) << " " << fmt17(c.y) << " " << fmt17(r) << "\n";
      return kExitOk;
    }

    if (spt_cmd->parsed()) {
      Point root;
      if (!parse_point(root_str, root)) {
        std::cerr << "expected --root X,Y\n";
        return kExitInvalid;
      }
      if (!point_in_polygon(poly, root)) {
        std::cerr << "root is outside the polygon\n";
        return kExitInvalid;
      }
      Workspace ws({default_space(poly.size()), WorkspaceBudget::Policy::Record}, poly.size());
      FunnelSptProvider prov(poly, &ws);
      auto s = prov.open(root);
      SptEdge e;
      while (s->next(e)) {
        std::cout << e.parent << " " << e.child << " " << fmt17(e.cum_dist) << "\n";
      }
      return kExitOk;
    }
  } catch (const BudgetExceeded& e) {
    std::cerr << "workspace budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const GeometryError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitInvalid;
}

}  // namespace geocenter

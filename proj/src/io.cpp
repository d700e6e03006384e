#include "geocenter/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace geocenter {

namespace {

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

Polygon parse_polygon(const std::string& text) {
  size_t first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) throw ParseError(1, "empty polygon file");
  if (text[first] == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(1, std::string("invalid JSON: ") + e.what());
    }
    if (!j.contains("vertices") || !j["vertices"].is_array()) {
      throw ParseError(1, "JSON polygon needs a \"vertices\" array");
    }
    std::vector<Point> pts;
    for (const auto& v : j["vertices"]) {
      if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
        throw ParseError(1, "each vertex must be a [x, y] number pair");
      }
      pts.push_back({v[0].get<double>(), v[1].get<double>()});
    }
    return Polygon(std::move(pts));
  }

  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  long long n = -1;
  std::vector<Point> pts;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    if (n < 0) {
      if (!(ls >> n) || n < 0) throw ParseError(lineno, "expected vertex count");
      continue;
    }
    if (static_cast<long long>(pts.size()) >= n) break;
    double x, y;
    if (!(ls >> x >> y)) throw ParseError(lineno, "expected \"x y\"");
    if (!std::isfinite(x) || !std::isfinite(y)) throw ParseError(lineno, "non-finite coordinate");
    pts.push_back({x, y});
  }
  if (n < 0) throw ParseError(lineno, "missing vertex count");
  if (static_cast<long long>(pts.size()) != n) {
    throw ParseError(lineno, "expected " + std::to_string(n) + " vertices, got " +
                                 std::to_string(pts.size()));
  }
  return Polygon(std::move(pts));
}

Polygon read_polygon_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError(0, "cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_polygon(ss.str());
}

std::string format_polygon(const Polygon& poly) {
  std::string out = std::to_string(poly.size()) + "\n";
  for (Point p : poly.vertices()) {
    out += fmt17(p.x) + " " + fmt17(p.y) + "\n";
  }
  return out;
}

void write_polygon_file(const std::string& path, const Polygon& poly) {
  std::ofstream f(path);
  f << format_polygon(poly);
}

std::string stats_json(const WorkspaceReport& report, double wall_seconds) {
  nlohmann::json j;
  j["peak_core_words"] = report.peak_core_words;
  j["peak_provider_words"] = report.peak_provider_words;
  j["spt_replays"] = report.spt_replays;
  j["elements_streamed"] = report.elements_streamed;
  j["timings"]["wall_seconds"] = wall_seconds;
  return j.dump(2);
}

void write_svg(const std::string& path, const Polygon& poly, Point center, double radius,
               const std::vector<std::vector<Point>>& farthest_paths) {
  double xlo = 1e300, xhi = -1e300, ylo = 1e300, yhi = -1e300;
  for (Point p : poly.vertices()) {
    xlo = std::min(xlo, p.x);
    xhi = std::max(xhi, p.x);
    ylo = std::min(ylo, p.y);
    yhi = std::max(yhi, p.y);
  }
  double w = xhi - xlo, h = yhi - ylo;
  double pad = 0.05 * std::max(w, h);
  std::ofstream f(path);
  f << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << fmt17(xlo - pad) << " "
    << fmt17(-(yhi + pad)) << " " << fmt17(w + 2 * pad) << " " << fmt17(h + 2 * pad) << "\">\n";
  auto pt = [&](Point p) { return fmt17(p.x) + "," + fmt17(-p.y); };
  f << "  <polygon points=\"";
  for (Point p : poly.vertices()) f << pt(p) << " ";
  f << "\" fill=\"#f2f2f2\" stroke=\"black\" stroke-width=\"" << fmt17(0.004 * std::max(w, h))
    << "\"/>\n";
  f << "  <circle cx=\"" << fmt17(center.x) << "\" cy=\"" << fmt17(-center.y) << "\" r=\""
    << fmt17(radius) << "\" fill=\"none\" stroke=\"#4477cc\" stroke-width=\""
    << fmt17(0.003 * std::max(w, h)) << "\"/>\n";
  for (const auto& path_pts : farthest_paths) {
    f << "  <polyline points=\"";
    for (Point p : path_pts) f << pt(p) << " ";
    f << "\" fill=\"none\" stroke=\"#cc5544\" stroke-width=\"" << fmt17(0.003 * std::max(w, h))
      << "\"/>\n";
  }
  f << "  <circle cx=\"" << fmt17(center.x) << "\" cy=\"" << fmt17(-center.y) << "\" r=\""
    << fmt17(0.008 * std::max(w, h)) << "\" fill=\"#cc2222\"/>\n";
  f << "</svg>\n";
}

}  // namespace geocenter

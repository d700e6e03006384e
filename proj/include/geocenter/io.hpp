#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "geocenter/polygon.hpp"
#include "geocenter/workspace.hpp"

namespace geocenter {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_ = 0;
};

/// Text format: first line n, then n lines "x y" (decimal), CCW.
/// Alternatively a JSON document {"vertices": [[x, y], ...]}.
Polygon parse_polygon(const std::string& text);
Polygon read_polygon_file(const std::string& path);
/// 17 significant digits; reading back reproduces coordinates exactly.
std::string format_polygon(const Polygon& poly);
void write_polygon_file(const std::string& path, const Polygon& poly);

std::string stats_json(const WorkspaceReport& report, double wall_seconds);

void write_svg(const std::string& path, const Polygon& poly, Point center, double radius,
               const std::vector<std::vector<Point>>& farthest_paths);

/// CLI entry point (subcommands: solve, chord, oracle, spt, validate).
/// Exit codes: 0 success, 2 invalid input, 3 workspace budget exceeded.
int run_cli(int argc, const char* const* argv);

}  // namespace geocenter

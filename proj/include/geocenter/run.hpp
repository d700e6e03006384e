#pragma once

#include "geocenter/prune.hpp"
#include "geocenter/rng.hpp"
#include "geocenter/spt.hpp"
#include "geocenter/workspace.hpp"

namespace geocenter {

/// Shared state of one metered run.
struct RunContext {
  SptProvider* prov = nullptr;
  Workspace* ws = nullptr;
  Rng* rng = nullptr;
  double eps = 1e-9;    // relative tolerance
  double scale = 1.0;   // polygon scale (bounding-box diagonal)
  PruneAudit* audit = nullptr;
  MedianStats* median_stats = nullptr;

  double eps_abs() const { return eps * scale; }
  const Polygon& polygon() const { return prov->polygon(); }
};

}  // namespace geocenter

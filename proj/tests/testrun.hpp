#pragma once

#include "geocenter/run.hpp"
#include "testgen.hpp"

namespace geocenter::testgen {

/// Provider + meter + RNG bundle for exercising pipeline pieces directly.
struct TestRun {
  Polygon poly;
  Workspace ws;
  FunnelSptProvider prov;
  Rng rng;
  RunContext ctx;

  explicit TestRun(Polygon p, long long s = 4096, uint64_t seed = 1,
                   WorkspaceBudget::Policy policy = WorkspaceBudget::Policy::Record)
      : poly(std::move(p)), ws({s, policy}, poly.size()), prov(poly, &ws), rng(seed) {
    ctx.prov = &prov;
    ctx.ws = &ws;
    ctx.rng = &rng;
    ctx.eps = 1e-9;
    ctx.scale = poly.scale();
  }
};

}  // namespace geocenter::testgen

#include <doctest.h>

#include "geocenter/workspace.hpp"

using namespace geocenter;

TEST_CASE("meter tracks peaks exactly") {
  auto [got, report] = with_budget({64, WorkspaceBudget::Policy::Record}, 1, [](Workspace& ws) {
    CoreBlock a(ws, 17);
    {
      CoreBlock b(ws, 5);
    }
    return ws.core_now();
  });
  CHECK(got == 17);
  CHECK(report.peak_core_words == 22);
}

TEST_CASE("zero allocation leaves zero peak") {
  auto [got, report] =
      with_budget({8, WorkspaceBudget::Policy::Enforce}, 1, [](Workspace&) { return 0; });
  (void)got;
  CHECK(report.peak_core_words == 0);
  CHECK(report.spt_replays == 0);
}

TEST_CASE("enforce raises on violation") {
  Workspace ws({4, WorkspaceBudget::Policy::Enforce}, 16);
  long long limit = ws.enforce_limit();
  CHECK(limit == Workspace::kEnforceConstant * (4 + 4));
  CHECK_THROWS_AS(ws.alloc_core(limit + 1), BudgetExceeded);
  Workspace ws2({4, WorkspaceBudget::Policy::Record}, 16);
  ws2.alloc_core(limit + 100);  // record-only never raises
  CHECK(ws2.report().peak_core_words == limit + 100);
}

TEST_CASE("cache arena reserve and release") {
  Workspace ws({10, WorkspaceBudget::Policy::Record}, 32);
  CHECK(ws.cache_capacity() == 80);
  CHECK(ws.try_reserve_cache(60));
  CHECK_FALSE(ws.try_reserve_cache(30));
  ws.release_cache(60);
  CHECK(ws.try_reserve_cache(30));
  CHECK(ws.report().peak_core_words == 60);
}

TEST_CASE("counters are monotone") {
  Workspace ws({16, WorkspaceBudget::Policy::Record}, 8);
  ws.note_replay();
  ws.note_streamed(10);
  ws.note_replay();
  auto r = ws.report();
  CHECK(r.spt_replays == 2);
  CHECK(r.elements_streamed == 10);
}

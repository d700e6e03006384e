#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace geocenter {

/// Signals that the core algorithm exceeded its space contract.
class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

struct WorkspaceBudget {
  long long s = 64;  // writable words
  enum class Policy { Enforce, Record } policy = Policy::Record;
};

struct WorkspaceReport {
  long long peak_core_words = 0;
  long long peak_provider_words = 0;
  long long spt_replays = 0;
  long long elements_streamed = 0;
};

inline long long ceil_log2(long long n) {
  long long b = 0;
  while ((1LL << b) < n) ++b;
  return b;
}

/// Metered execution environment for one run. A "word" is one fixed-size
/// numeric or index slot; aggregates charge their slot count. The SPT
/// provider's internal memory is metered separately, since its cost is
/// abstracted behind the stream interface.
class Workspace {
 public:
  // Calibrated on the test suite; peak_core_words must stay within
  // kEnforceConstant * (s + ceil_log2(n)) under the Enforce policy.
  static constexpr long long kEnforceConstant = 64;
  // Replay caches may use up to kCacheFactor * s words of the core budget.
  static constexpr long long kCacheFactor = 8;

  Workspace(WorkspaceBudget budget, long long input_size)
      : budget_(budget), limit_(kEnforceConstant * (budget.s + ceil_log2(std::max(1LL, input_size)))) {}

  void alloc_core(long long words) {
    core_now_ += words;
    if (core_now_ > core_peak_) core_peak_ = core_now_;
    if (budget_.policy == WorkspaceBudget::Policy::Enforce && core_now_ > limit_) {
      throw BudgetExceeded("core workspace exceeded: " + std::to_string(core_now_) + " > " +
                           std::to_string(limit_) + " words");
    }
  }
  void release_core(long long words) { core_now_ -= words; }

  void alloc_provider(long long words) {
    provider_now_ += words;
    if (provider_now_ > provider_peak_) provider_peak_ = provider_now_;
  }
  void release_provider(long long words) { provider_now_ -= words; }

  void note_replay() { ++replays_; }
  void note_streamed(long long k = 1) { streamed_ += k; }

  long long cache_capacity() const { return kCacheFactor * budget_.s; }
  bool try_reserve_cache(long long words) {
    if (cache_used_ + words > cache_capacity()) return false;
    cache_used_ += words;
    alloc_core(words);
    return true;
  }
  void release_cache(long long words) {
    cache_used_ -= words;
    release_core(words);
  }

  long long core_now() const { return core_now_; }
  long long enforce_limit() const { return limit_; }
  const WorkspaceBudget& budget() const { return budget_; }

  WorkspaceReport report() const {
    return {core_peak_, provider_peak_, replays_, streamed_};
  }

 private:
  WorkspaceBudget budget_;
  long long limit_ = 0;
  long long core_now_ = 0, core_peak_ = 0;
  long long provider_now_ = 0, provider_peak_ = 0;
  long long cache_used_ = 0;
  long long replays_ = 0, streamed_ = 0;
};

/// RAII core-word allocation.
class CoreBlock {
 public:
  CoreBlock() = default;
  CoreBlock(Workspace& ws, long long words) : ws_(&ws), words_(words) { ws.alloc_core(words); }
  CoreBlock(const CoreBlock&) = delete;
  CoreBlock& operator=(const CoreBlock&) = delete;
  CoreBlock(CoreBlock&& o) noexcept : ws_(o.ws_), words_(o.words_) { o.ws_ = nullptr; }
  CoreBlock& operator=(CoreBlock&& o) noexcept {
    reset();
    ws_ = o.ws_;
    words_ = o.words_;
    o.ws_ = nullptr;
    return *this;
  }
  ~CoreBlock() { reset(); }
  void reset() {
    if (ws_) ws_->release_core(words_);
    ws_ = nullptr;
  }
  void resize(long long words) {
    if (!ws_) return;
    if (words > words_) ws_->alloc_core(words - words_);
    else ws_->release_core(words_ - words);
    words_ = words;
  }

 private:
  Workspace* ws_ = nullptr;
  long long words_ = 0;
};

/// Runs a task under a fresh meter and returns (result, report).
template <class F>
auto with_budget(WorkspaceBudget budget, long long input_size, F&& task)
    -> std::pair<decltype(task(std::declval<Workspace&>())), WorkspaceReport> {
  Workspace ws(budget, input_size);
  auto result = task(ws);
  return {std::move(result), ws.report()};
}

}  // namespace geocenter

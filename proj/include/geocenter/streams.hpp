#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "geocenter/workspace.hpp"

namespace geocenter {

/// One-pass cursor over a replayable sequence.
template <class T>
class Stream {
 public:
  virtual ~Stream() = default;
  virtual bool next(T& out) = 0;
};

template <class T>
using StreamPtr = std::unique_ptr<Stream<T>>;

/// Each call opens a fresh deterministic pass over the same sequence.
template <class T>
using StreamFactory = std::function<StreamPtr<T>()>;

template <class T, class Fn>
class FnStream final : public Stream<T> {
 public:
  explicit FnStream(Fn fn) : fn_(std::move(fn)) {}
  bool next(T& out) override { return fn_(out); }

 private:
  Fn fn_;
};

template <class T, class Fn>
StreamPtr<T> make_stream(Fn fn) {
  return std::make_unique<FnStream<T, Fn>>(std::move(fn));
}

template <class T>
StreamPtr<T> vector_stream(std::vector<T> v) {
  struct St {
    std::vector<T> v;
    size_t i = 0;
  };
  auto st = std::make_shared<St>(St{std::move(v)});
  return make_stream<T>([st](T& out) {
    if (st->i >= st->v.size()) return false;
    out = st->v[st->i++];
    return true;
  });
}

/// Replayable sequence with transparent materialization. The first completed
/// pass is tee'd into a cache buffer when it fits in the workspace's cache
/// arena; later passes then read the buffer instead of recomputing upstream.
/// Caching never changes the element sequence, only where it is read from,
/// so all downstream decisions are independent of the budget.
template <class T>
class ReplaySource {
 public:
  ReplaySource(StreamFactory<T> factory, Workspace* ws, long long words_per_elem)
      : st_(std::make_shared<State>()), factory_(std::move(factory)), ws_(ws),
        wpe_(words_per_elem) {}

  ~ReplaySource() {
    if (st_ && st_->reserved > 0 && ws_) ws_->release_cache(st_->reserved);
  }

  ReplaySource(const ReplaySource&) = delete;
  ReplaySource& operator=(const ReplaySource&) = delete;

  StreamPtr<T> open() {
    auto st = st_;
    if (st->complete) {
      auto idx = std::make_shared<size_t>(0);
      return make_stream<T>([st, idx](T& out) {
        if (*idx >= st->buf.size()) return false;
        out = st->buf[(*idx)++];
        return true;
      });
    }
    // Pass-through with a tee; validated only if the pass runs to the end.
    auto up = std::make_shared<StreamPtr<T>>(factory_());
    if (st->reserved > 0 && ws_) {
      ws_->release_cache(st->reserved);
      st->reserved = 0;
    }
    st->buf.clear();
    st->caching = ws_ != nullptr;
    Workspace* ws = ws_;
    long long wpe = wpe_;
    return make_stream<T>([st, up, ws, wpe](T& out) {
      if ((*up)->next(out)) {
        if (st->caching) {
          if (ws->try_reserve_cache(wpe)) {
            st->reserved += wpe;
            st->buf.push_back(out);
          } else {
            st->caching = false;
            if (st->reserved > 0) {
              ws->release_cache(st->reserved);
              st->reserved = 0;
            }
            st->buf.clear();
            st->buf.shrink_to_fit();
          }
        }
        return true;
      }
      if (st->caching) st->complete = true;
      return false;
    });
  }

  bool materialized() const { return st_->complete; }

 private:
  struct State {
    std::vector<T> buf;
    bool complete = false;
    bool caching = false;
    long long reserved = 0;
  };
  std::shared_ptr<State> st_;
  StreamFactory<T> factory_;
  Workspace* ws_;
  long long wpe_;
};

template <class T>
using ReplaySourcePtr = std::shared_ptr<ReplaySource<T>>;

template <class T>
ReplaySourcePtr<T> make_replay_source(StreamFactory<T> f, Workspace* ws, long long wpe) {
  return std::make_shared<ReplaySource<T>>(std::move(f), ws, wpe);
}

}  // namespace geocenter

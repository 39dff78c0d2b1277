// scesep/base/parallel.cc

// Copyright 2026  The scesep authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "scesep/base/parallel.h"

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <cstdlib>
#include <mutex>
#include <thread>
#include <vector>

namespace scesep {

namespace {

int read_thread_cap() {
  int n = static_cast<int>(std::thread::hardware_concurrency());
  if (n <= 0) n = 1;
  if (const char *env = std::getenv("SCESEP_THREADS")) {
    const int cap = std::atoi(env);
    if (cap > 0) n = std::min(n, cap);
  }
  return std::min(n, 64);
}

// True while the current thread is executing inside a parallel_for region
// (either as a pool worker or as the caller draining blocks).  Nested
// parallel_for calls fall back to a serial loop instead of re-entering the
// pool.
thread_local bool tl_in_parallel = false;

// Minimal persistent pool.  Tasks are (block_begin, block_end) pairs pulled
// from an atomic cursor; the calling thread participates as a worker.
class Pool {
 public:
  explicit Pool(int threads) : threads_(threads) {
    for (int i = 0; i < threads_ - 1; ++i)
      workers_.emplace_back([this] { worker_loop(); });
  }

  ~Pool() {
    {
      std::lock_guard<std::mutex> lk(mu_);
      shutdown_ = true;
    }
    cv_.notify_all();
    for (auto &w : workers_) w.join();
  }

  void run(int64_t begin, int64_t end, int64_t block,
           const std::function<void(int64_t, int64_t)> &fn) {
    // One top-level region at a time; concurrent callers queue up here.
    std::lock_guard<std::mutex> run_lock(run_mu_);
    std::unique_lock<std::mutex> lk(mu_);
    fn_ = &fn;
    begin_ = begin;
    end_ = end;
    block_ = block;
    cursor_.store(begin, std::memory_order_relaxed);
    active_ = static_cast<int>(workers_.size());
    generation_++;
    lk.unlock();
    cv_.notify_all();

    drain();

    lk.lock();
    done_cv_.wait(lk, [this] { return active_ == 0; });
    fn_ = nullptr;
  }

 private:
  void drain() {
    for (;;) {
      const int64_t b = cursor_.fetch_add(block_, std::memory_order_relaxed);
      if (b >= end_) break;
      (*fn_)(b, std::min(b + block_, end_));
    }
  }

  void worker_loop() {
    tl_in_parallel = true;
    uint64_t seen = 0;
    for (;;) {
      std::unique_lock<std::mutex> lk(mu_);
      cv_.wait(lk, [&] { return shutdown_ || generation_ != seen; });
      if (shutdown_) return;
      seen = generation_;
      lk.unlock();

      drain();

      lk.lock();
      if (--active_ == 0) done_cv_.notify_all();
    }
  }

  const int threads_;
  std::vector<std::thread> workers_;
  std::mutex run_mu_;
  std::mutex mu_;
  std::condition_variable cv_, done_cv_;
  const std::function<void(int64_t, int64_t)> *fn_ = nullptr;
  int64_t begin_ = 0, end_ = 0, block_ = 1;
  std::atomic<int64_t> cursor_{0};
  int active_ = 0;
  uint64_t generation_ = 0;
  bool shutdown_ = false;
};

Pool &pool() {
  static Pool p(read_thread_cap());
  return p;
}

}  // namespace

int worker_threads() {
  static const int n = read_thread_cap();
  return n;
}

SerialSection::SerialSection() : previous_(tl_in_parallel) {
  tl_in_parallel = true;
}

SerialSection::~SerialSection() { tl_in_parallel = previous_; }

void parallel_for(int64_t begin, int64_t end,
                  const std::function<void(int64_t, int64_t)> &fn,
                  int64_t min_block) {
  if (end <= begin) return;
  const int threads = worker_threads();
  const int64_t n = end - begin;
  if (threads <= 1 || n <= min_block || tl_in_parallel) {
    fn(begin, end);
    return;
  }
  int64_t block = std::max<int64_t>(min_block, n / (4 * threads));
  if (block <= 0) block = 1;
  tl_in_parallel = true;
  pool().run(begin, end, block, fn);
  tl_in_parallel = false;
}

}  // namespace scesep

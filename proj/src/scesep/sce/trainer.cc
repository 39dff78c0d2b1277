// scesep/sce/trainer.cc

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

#include "scesep/sce/trainer.h"

#include <chrono>
#include <condition_variable>
#include <deque>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "scesep/base/error.h"

namespace scesep {
namespace sce {

namespace {

constexpr uint64_t kValSalt = 0x76616C6964ULL;  // validation stream
constexpr size_t kQueueCapacity = 4;

// Bounded single-producer single-consumer batch queue.
class BatchQueue {
 public:
  // Returns false once the consumer has stopped; the producer must quit.
  bool push(corpus::Batch batch) {
    std::unique_lock<std::mutex> lk(mu_);
    cv_space_.wait(lk, [&] { return items_.size() < kQueueCapacity || stop_; });
    if (stop_) return false;
    items_.push_back(std::move(batch));
    cv_item_.notify_one();
    return true;
  }

  void push_error(std::exception_ptr e) {
    std::lock_guard<std::mutex> lk(mu_);
    error_ = e;
    cv_item_.notify_one();
  }

  corpus::Batch pop() {
    std::unique_lock<std::mutex> lk(mu_);
    cv_item_.wait(lk, [&] { return !items_.empty() || error_; });
    if (items_.empty() && error_) std::rethrow_exception(error_);
    corpus::Batch b = std::move(items_.front());
    items_.pop_front();
    cv_space_.notify_one();
    return b;
  }

  void stop() {
    std::lock_guard<std::mutex> lk(mu_);
    stop_ = true;
    cv_space_.notify_all();
  }

 private:
  std::mutex mu_;
  std::condition_variable cv_item_, cv_space_;
  std::deque<corpus::Batch> items_;
  std::exception_ptr error_;
  bool stop_ = false;
};

}  // namespace

std::string format_log_line(const StepInfo &info) {
  std::ostringstream os;
  os << info.step << "\t" << info.wall_ms << "\t" << info.train_loss;
  if (info.has_val) os << "\t" << info.val_loss;
  return os.str();
}

Trainer::Trainer(SceModel &model, nn::Adam &adam,
                 const corpus::SpeakerRegistry &reg,
                 const corpus::SplitSpec &splits,
                 const dsp::PipelineConfig &pipeline, TrainOptions options)
    : model_(model),
      adam_(adam),
      registry_(reg),
      splits_(splits),
      pipeline_(pipeline),
      options_(options),
      best_val_(std::numeric_limits<float>::infinity()) {}

corpus::Batch Trainer::batch_for_step(int64_t step) const {
  Rng rng(Rng::mix(options_.seed, static_cast<uint64_t>(step)));
  return corpus::sample_batch(registry_, splits_, corpus::Split::kTrain,
                              options_.mix_type, model_.config.batch,
                              model_.config.frames, pipeline_, rng);
}

float Trainer::validate() const {
  double total = 0.0;
  for (int64_t k = 0; k < options_.val_batches; ++k) {
    Rng rng(Rng::mix(options_.seed ^ kValSalt, static_cast<uint64_t>(k)));
    corpus::Batch batch = corpus::sample_batch(
        registry_, splits_, corpus::Split::kValidate, options_.mix_type,
        model_.config.batch, model_.config.frames, pipeline_, rng);
    total += eval_loss(model_, batch);
  }
  return static_cast<float>(total / options_.val_batches);
}

int64_t Trainer::run(int64_t start_step,
                     const std::function<void(const StepInfo &)> &on_step) {
  stopped_early_ = false;
  int bad_validations = 0;
  int64_t last_step = start_step;

  BatchQueue queue;
  std::thread producer;
  if (options_.prefetch) {
    producer = std::thread([&] {
      try {
        for (int64_t s = start_step + 1; s <= options_.steps; ++s)
          if (!queue.push(batch_for_step(s))) break;
      } catch (...) {
        queue.push_error(std::current_exception());
      }
    });
  }
  // Stop the producer and join no matter how we leave the loop.
  struct Joiner {
    BatchQueue &q;
    std::thread &t;
    ~Joiner() {
      q.stop();
      if (t.joinable()) t.join();
    }
  } joiner{queue, producer};

  for (int64_t step = start_step + 1; step <= options_.steps; ++step) {
    corpus::Batch batch =
        options_.prefetch ? queue.pop() : batch_for_step(step);

    const auto t0 = std::chrono::steady_clock::now();
    const float loss =
        train_step(model_, batch, adam_, options_.clip_norm);
    const auto t1 = std::chrono::steady_clock::now();

    StepInfo info;
    info.step = step;
    info.wall_ms =
        std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(
            t1 - t0)
            .count();
    info.train_loss = loss;

    if (options_.val_every > 0 && step % options_.val_every == 0) {
      info.has_val = true;
      info.val_loss = validate();
      if (info.val_loss < best_val_) {
        best_val_ = info.val_loss;
        info.is_best_val = true;
        bad_validations = 0;
      } else {
        ++bad_validations;
      }
    }

    last_step = step;
    if (on_step) on_step(info);

    if (options_.val_every > 0 && bad_validations >= options_.patience) {
      stopped_early_ = true;
      break;
    }
  }
  return last_step;
}

}  // namespace sce
}  // namespace scesep

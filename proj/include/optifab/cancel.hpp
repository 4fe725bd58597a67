#pragma once

#include <chrono>
#include <condition_variable>
#include <mutex>

namespace optifab {

// Cooperative cancellation plus deadline, shared between a task executor and
// the code it runs. Waits are passive (condition variable, not spin).
class CancelToken {
 public:
  void cancel() {
    {
      std::lock_guard<std::mutex> lock(mu_);
      cancelled_ = true;
    }
    cv_.notify_all();
  }

  void set_deadline(std::chrono::steady_clock::time_point deadline) {
    std::lock_guard<std::mutex> lock(mu_);
    deadline_ = deadline;
    has_deadline_ = true;
  }

  bool cancelled() const {
    std::lock_guard<std::mutex> lock(mu_);
    return cancelled_ || deadline_passed();
  }

  // Explicit cancel() only, ignoring the deadline.
  bool cancel_requested() const {
    std::lock_guard<std::mutex> lock(mu_);
    return cancelled_;
  }

  // Sleeps for `seconds` unless cancelled or past deadline first; returns
  // false when the wait was cut short.
  bool sleep_for(double seconds) {
    std::unique_lock<std::mutex> lock(mu_);
    auto wake = std::chrono::steady_clock::now() +
                std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                    std::chrono::duration<double>(seconds));
    if (has_deadline_ && deadline_ < wake) {
      cv_.wait_until(lock, deadline_, [this] { return cancelled_; });
      return false;
    }
    cv_.wait_until(lock, wake, [this] { return cancelled_ || deadline_passed(); });
    return !cancelled_ && !deadline_passed();
  }

 private:
  bool deadline_passed() const {
    return has_deadline_ && std::chrono::steady_clock::now() >= deadline_;
  }

  mutable std::mutex mu_;
  std::condition_variable cv_;
  bool cancelled_ = false;
  bool has_deadline_ = false;
  std::chrono::steady_clock::time_point deadline_{};
};

}  // namespace optifab

#include "optifab/clock.hpp"

#include <thread>

namespace optifab {

namespace {

struct EpochAnchor {
  double system_at_start;
  std::chrono::steady_clock::time_point steady_at_start;

  EpochAnchor()
      : system_at_start(std::chrono::duration<double>(
                            std::chrono::system_clock::now().time_since_epoch())
                            .count()),
        steady_at_start(std::chrono::steady_clock::now()) {}
};

const EpochAnchor& anchor() {
  static EpochAnchor a;
  return a;
}

}  // namespace

double now_wall() {
  const auto& a = anchor();
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - a.steady_at_start).count();
  return a.system_at_start + elapsed;
}

double wall_epoch_offset() { return anchor().system_at_start; }

void sleep_seconds(double seconds) {
  if (seconds <= 0) return;
  std::this_thread::sleep_for(std::chrono::duration<double>(seconds));
}

}  // namespace optifab

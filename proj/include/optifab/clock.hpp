#pragma once

#include <chrono>

namespace optifab {

// Wall-clock seconds since the Unix epoch, derived from the monotonic clock
// plus an epoch offset captured once per process. Monotone within a process;
// cross-process skew is reported by the journal, not corrected.
double now_wall();

// Epoch offset (system_clock at process start minus steady_clock at start).
double wall_epoch_offset();

// Passive sleep; returns immediately if seconds <= 0.
void sleep_seconds(double seconds);

}  // namespace optifab

#pragma once

#include <string>
#include <vector>

#include <sys/types.h>

namespace optifab {

// fork/exec with optional stdout/stderr redirection to files.
pid_t spawn_process(const std::vector<std::string>& argv, const std::string& stdout_path = "",
                    const std::string& stderr_path = "");

struct WaitOutcome {
  bool exited = false;
  int exit_code = -1;
  bool timed_out = false;
  bool signaled = false;
};

// Polls waitpid until exit or timeout (passive 10 ms steps). On timeout the
// child is SIGKILLed and reaped.
WaitOutcome wait_with_timeout(pid_t pid, double timeout_seconds);

void kill_process(pid_t pid);

// Path of the running executable (/proc/self/exe).
std::string self_executable();

}  // namespace optifab

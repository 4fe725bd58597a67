#include "optifab/proc.hpp"

#include <fcntl.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

#include "optifab/clock.hpp"
#include "optifab/json_util.hpp"

namespace optifab {

pid_t spawn_process(const std::vector<std::string>& argv, const std::string& stdout_path,
                    const std::string& stderr_path) {
  if (argv.empty()) throw Error("spawn_process: empty argv");
  std::vector<char*> args;
  args.reserve(argv.size() + 1);
  for (const auto& a : argv) args.push_back(const_cast<char*>(a.c_str()));
  args.push_back(nullptr);

  const pid_t pid = ::fork();
  if (pid < 0) throw Error(std::string("fork: ") + std::strerror(errno));
  if (pid == 0) {
    if (!stdout_path.empty()) {
      const int fd = ::open(stdout_path.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
      if (fd >= 0) {
        ::dup2(fd, STDOUT_FILENO);
        ::close(fd);
      }
    }
    if (!stderr_path.empty()) {
      const int fd = ::open(stderr_path.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
      if (fd >= 0) {
        ::dup2(fd, STDERR_FILENO);
        ::close(fd);
      }
    }
    ::execv(args[0], args.data());
    ::_exit(127);
  }
  return pid;
}

WaitOutcome wait_with_timeout(pid_t pid, double timeout_seconds) {
  WaitOutcome out;
  const double deadline = now_wall() + timeout_seconds;
  while (true) {
    int status = 0;
    const pid_t rc = ::waitpid(pid, &status, WNOHANG);
    if (rc == pid) {
      out.exited = true;
      if (WIFEXITED(status)) out.exit_code = WEXITSTATUS(status);
      else if (WIFSIGNALED(status)) out.signaled = true;
      return out;
    }
    if (rc < 0 && errno != EINTR) {
      out.exited = true;  // nothing to wait for
      return out;
    }
    if (now_wall() >= deadline) {
      out.timed_out = true;
      ::kill(pid, SIGKILL);
      ::waitpid(pid, &status, 0);
      return out;
    }
    sleep_seconds(0.01);
  }
}

void kill_process(pid_t pid) {
  if (pid > 0) ::kill(pid, SIGKILL);
}

std::string self_executable() {
  char buf[4096];
  const ssize_t n = ::readlink("/proc/self/exe", buf, sizeof(buf) - 1);
  if (n <= 0) throw Error("cannot resolve /proc/self/exe");
  buf[n] = '\0';
  return buf;
}

}  // namespace optifab

#pragma once

#include <fcntl.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "algorank/errors.hpp"
#include "algorank/source.hpp"

namespace algorank {

namespace detail {

// Runs `command` through /bin/sh with stdout/stderr silenced and returns its
// wall-clock duration in seconds. timeout_seconds <= 0 disables the timeout.
inline double run_command_once(const std::string& command, double timeout_seconds) {
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  const pid_t pid = ::fork();
  if (pid < 0) throw SourceError("cannot spawn command: " + command);
  if (pid == 0) {
    const int devnull = ::open("/dev/null", O_WRONLY);
    if (devnull >= 0) {
      ::dup2(devnull, STDOUT_FILENO);
      ::dup2(devnull, STDERR_FILENO);
      ::close(devnull);
    }
    ::execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    ::_exit(127);
  }

  int status = 0;
  if (timeout_seconds > 0.0) {
    const auto deadline = start + std::chrono::duration_cast<clock::duration>(
                                      std::chrono::duration<double>(timeout_seconds));
    for (;;) {
      const pid_t done = ::waitpid(pid, &status, WNOHANG);
      if (done == pid) break;
      if (done < 0) throw SourceError("waitpid failed for command: " + command);
      if (clock::now() >= deadline) {
        ::kill(pid, SIGKILL);
        ::waitpid(pid, &status, 0);
        throw SourceError("command timed out after " + std::to_string(timeout_seconds) +
                          " s: " + command);
      }
      ::usleep(200);
    }
  } else {
    if (::waitpid(pid, &status, 0) < 0)
      throw SourceError("waitpid failed for command: " + command);
  }
  const auto stop = clock::now();

  if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) {
    const std::string detail = WIFEXITED(status)
                                   ? "exit status " + std::to_string(WEXITSTATUS(status))
                                   : "terminated by signal";
    throw SourceError("command failed (" + detail + "): " + command);
  }
  return std::chrono::duration<double>(stop - start).count();
}

}  // namespace detail

// Executes `command` warmup times untimed, then m times timed with the
// monotonic clock. Timed executions are strictly sequential.
inline std::vector<double> run_external(const std::string& command, int warmup, int m,
                                        double timeout_seconds = 0.0) {
  if (command.empty()) throw SourceError("empty command");
  for (int i = 0; i < warmup; ++i) detail::run_command_once(command, timeout_seconds);
  std::vector<double> times;
  times.reserve(static_cast<std::size_t>(m > 0 ? m : 0));
  for (int i = 0; i < m; ++i) times.push_back(detail::run_command_once(command, timeout_seconds));
  return times;
}

// Measurement source backed by per-algorithm shell commands. Warm-up is left
// to the caller (the campaign front end already performs it before the first
// batch).
class ExternalCommandSource : public MeasurementSource {
 public:
  ExternalCommandSource(std::map<std::string, std::string> commands, double timeout_seconds = 0.0)
      : commands_(std::move(commands)), timeout_(timeout_seconds) {}

  std::vector<double> next_batch(const std::string& alg_id, int m) override {
    const auto it = commands_.find(alg_id);
    if (it == commands_.end()) throw SourceError("no command bound to " + alg_id);
    return run_external(it->second, 0, m, timeout_);
  }

 private:
  std::map<std::string, std::string> commands_;
  double timeout_;
};

}  // namespace algorank

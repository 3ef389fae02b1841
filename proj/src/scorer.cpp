#include "boa/scorer.hpp"

#include <fcntl.h>
#include <sys/wait.h>
#include <unistd.h>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <thread>

namespace boa {

namespace {

struct Pipe {
  int fds[2] = {-1, -1};
  Pipe() {
    if (pipe(fds) != 0) throw IoError("pipe() failed");
  }
  ~Pipe() {
    close_read();
    close_write();
  }
  void close_read() {
    if (fds[0] >= 0) ::close(fds[0]);
    fds[0] = -1;
  }
  void close_write() {
    if (fds[1] >= 0) ::close(fds[1]);
    fds[1] = -1;
  }
};

void write_all(int fd, const char* data, std::size_t len) {
  while (len > 0) {
    ssize_t n = ::write(fd, data, len);
    if (n < 0) {
      if (errno == EINTR) continue;
      return;  // adapter closed its stdin early; its exit status decides
    }
    data += n;
    len -= std::size_t(n);
  }
}

}  // namespace

Mat run_scorer(const std::string& command, const std::vector<std::string>& frame_refs,
               int dim) {
  if (dim <= 0) throw InvalidInputError("run_scorer: dim must be positive");
  if (frame_refs.empty()) throw InvalidInputError("run_scorer: no frame references");

  Pipe to_child, from_child;
  pid_t pid = fork();
  if (pid < 0) throw IoError("fork() failed");
  if (pid == 0) {
    dup2(to_child.fds[0], STDIN_FILENO);
    dup2(from_child.fds[1], STDOUT_FILENO);
    ::close(to_child.fds[0]);
    ::close(to_child.fds[1]);
    ::close(from_child.fds[0]);
    ::close(from_child.fds[1]);
    execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  to_child.close_read();
  from_child.close_write();

  signal(SIGPIPE, SIG_IGN);
  int write_fd = to_child.fds[1];
  std::thread writer([&frame_refs, write_fd] {
    for (const auto& ref : frame_refs) {
      write_all(write_fd, ref.data(), ref.size());
      write_all(write_fd, "\n", 1);
    }
    ::close(write_fd);
  });
  to_child.fds[1] = -1;  // writer thread owns and closes it

  Mat out(frame_refs.size(), dim);
  std::string error;
  std::size_t row = 0;
  {
    FILE* stream = fdopen(from_child.fds[0], "r");
    if (!stream) {
      writer.join();
      throw IoError("fdopen() failed");
    }
    from_child.fds[0] = -1;
    char* line = nullptr;
    std::size_t cap = 0;
    ssize_t len;
    while (error.empty() && (len = getline(&line, &cap, stream)) >= 0) {
      if (row >= frame_refs.size()) {
        error = "scorer emitted more lines than frame references";
        break;
      }
      const char* p = line;
      const char* end = line + len;
      int col = 0;
      while (p < end && error.empty()) {
        while (p < end && (*p == ' ' || *p == '\t' || *p == '\n' || *p == '\r')) ++p;
        if (p >= end) break;
        double v;
        auto [next, ec] = std::from_chars(p, end, v);
        if (ec != std::errc()) {
          error = "unparsable score at line " + std::to_string(row + 1);
          break;
        }
        if (col >= dim) {
          error = "too many fields at line " + std::to_string(row + 1) + " (dim=" +
                  std::to_string(dim) + ")";
          break;
        }
        if (!std::isfinite(v) || v < 0) {
          error = "non-finite or negative score at line " + std::to_string(row + 1);
          break;
        }
        out(row, col++) = v;
        p = next;
      }
      if (error.empty() && col != dim)
        error = "expected " + std::to_string(dim) + " fields, got " + std::to_string(col) +
                " at line " + std::to_string(row + 1);
      ++row;
    }
    free(line);
    fclose(stream);
  }
  writer.join();

  int status = 0;
  waitpid(pid, &status, 0);
  if (!WIFEXITED(status) || WEXITSTATUS(status) != 0)
    throw ScorerError("scorer adapter exited with status " +
                      std::to_string(WIFEXITED(status) ? WEXITSTATUS(status) : -1) +
                      (error.empty() ? "" : "; " + error));
  if (!error.empty()) throw ScorerError("scorer protocol error: " + error);
  if (row != frame_refs.size())
    throw ScorerError("scorer protocol error: expected " +
                      std::to_string(frame_refs.size()) + " lines, got " +
                      std::to_string(row));
  return out;
}

}  // namespace boa

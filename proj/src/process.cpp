#include "pbc/process.hpp"

#include "pbc/error.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace pbc {
namespace {

void set_cloexec(int fd) {
    int flags = fcntl(fd, F_GETFD);
    if (flags >= 0) fcntl(fd, F_SETFD, flags | FD_CLOEXEC);
}

// Drains both pipes until EOF or deadline; returns false on timeout.
bool drain_pipes(int out_fd, int err_fd, std::chrono::milliseconds timeout,
                 std::string& out, std::string& err) {
    auto deadline = std::chrono::steady_clock::now() + timeout;
    bool out_open = true;
    bool err_open = true;
    char buf[4096];
    while (out_open || err_open) {
        struct pollfd fds[2];
        int n = 0;
        if (out_open) fds[n++] = {out_fd, POLLIN, 0};
        if (err_open) fds[n++] = {err_fd, POLLIN, 0};

        int wait_ms = -1;
        if (timeout.count() > 0) {
            auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
                deadline - std::chrono::steady_clock::now());
            if (left.count() <= 0) return false;
            wait_ms = static_cast<int>(left.count());
        }
        int rc = ::poll(fds, static_cast<nfds_t>(n), wait_ms);
        if (rc < 0) {
            if (errno == EINTR) continue;
            throw IoError(std::string("poll failed: ") + std::strerror(errno));
        }
        if (rc == 0) return false; // timeout
        for (int i = 0; i < n; ++i) {
            if (!(fds[i].revents & (POLLIN | POLLHUP | POLLERR))) continue;
            ssize_t got = ::read(fds[i].fd, buf, sizeof buf);
            bool is_out = fds[i].fd == out_fd;
            if (got > 0) {
                (is_out ? out : err).append(buf, static_cast<std::size_t>(got));
            } else if (got == 0 || (got < 0 && errno != EINTR && errno != EAGAIN)) {
                (is_out ? out_open : err_open) = false;
            }
        }
    }
    return true;
}

} // namespace

ProcessResult run_process(const std::vector<std::string>& argv, const ProcessOptions& opts) {
    if (argv.empty()) throw AdapterFailure("empty argv");

    int out_pipe[2];
    int err_pipe[2];
    if (::pipe(out_pipe) != 0 || ::pipe(err_pipe) != 0) {
        throw IoError("pipe failed");
    }
    set_cloexec(out_pipe[0]);
    set_cloexec(err_pipe[0]);

    pid_t pid = ::fork();
    if (pid < 0) throw IoError("fork failed");

    if (pid == 0) {
        // Child: own process group so a timeout can kill the whole tree.
        ::setpgid(0, 0);
        ::dup2(out_pipe[1], STDOUT_FILENO);
        ::dup2(err_pipe[1], STDERR_FILENO);
        ::close(out_pipe[0]);
        ::close(out_pipe[1]);
        ::close(err_pipe[0]);
        ::close(err_pipe[1]);
        int devnull = ::open("/dev/null", O_RDONLY);
        if (devnull >= 0) ::dup2(devnull, STDIN_FILENO);

        if (opts.cwd && ::chdir(opts.cwd->c_str()) != 0) {
            std::fprintf(stderr, "chdir %s: %s\n", opts.cwd->c_str(), std::strerror(errno));
            ::_exit(127);
        }
        for (const auto& [k, v] : opts.env) {
            ::setenv(k.c_str(), v.c_str(), 1);
        }
        std::vector<char*> cargv;
        cargv.reserve(argv.size() + 1);
        for (const auto& a : argv) cargv.push_back(const_cast<char*>(a.c_str()));
        cargv.push_back(nullptr);
        ::execvp(cargv[0], cargv.data());
        std::fprintf(stderr, "exec %s: %s\n", cargv[0], std::strerror(errno));
        ::_exit(127);
    }

    ::close(out_pipe[1]);
    ::close(err_pipe[1]);

    ProcessResult result;
    bool finished = drain_pipes(out_pipe[0], err_pipe[0], opts.timeout, result.out, result.err);
    ::close(out_pipe[0]);
    ::close(err_pipe[0]);

    if (!finished) {
        result.timed_out = true;
        ::kill(-pid, SIGKILL);
    }

    int status = 0;
    while (::waitpid(pid, &status, 0) < 0) {
        if (errno != EINTR) throw IoError("waitpid failed");
    }
    if (WIFEXITED(status)) {
        result.exit_code = WEXITSTATUS(status);
    } else if (WIFSIGNALED(status)) {
        result.signal = WTERMSIG(status);
    }
    return result;
}

ProcessResult run_shell(const std::string& command, const ProcessOptions& opts) {
    return run_process({"/bin/sh", "-c", command}, opts);
}

} // namespace pbc

// Copyright 2026 The gf2bench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstdlib>
#include <cstring>

#include <httplib.h>

#include "gf2bench/errors.hpp"
#include "gf2bench/llm_runner.hpp"

extern char** environ;

namespace gf2bench {
namespace {

class HttpProvider final : public Provider {
 public:
  explicit HttpProvider(const ProviderConfig& config) : config_(config) {
    const std::string& url = *config.endpoint;
    const std::size_t scheme_end = url.find("://");
    if (scheme_end == std::string::npos) {
      throw ConfigError("endpoint must look like http://host[:port]/path");
    }
    const std::size_t path_start = url.find('/', scheme_end + 3);
    base_ = url.substr(0, path_start);
    path_ = path_start == std::string::npos ? "/" : url.substr(path_start);
#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
    if (url.starts_with("https://")) {
      throw ConfigError("https endpoints need a build with OpenSSL");
    }
#endif
    if (!config.auth_env.empty()) {
      const char* token = std::getenv(config.auth_env.c_str());
      if (token == nullptr || *token == '\0') {
        throw ConfigError("auth_env names '" + config.auth_env +
                          "' but that variable is unset");
      }
      token_ = token;
    }
  }

  ProviderReply complete(const std::string&, const std::string& prompt) override {
    httplib::Client client(base_);
    const auto timeout = std::chrono::duration_cast<std::chrono::microseconds>(
        std::chrono::duration<double>(config_.timeout_s));
    client.set_connection_timeout(timeout);
    client.set_read_timeout(timeout);
    client.set_write_timeout(timeout);
    httplib::Headers headers;
    if (!token_.empty()) headers.emplace("Authorization", "Bearer " + token_);

    const nlohmann::json body = {{"model", config_.model},
                                 {"prompt", prompt},
                                 {"max_tokens", config_.max_tokens}};
    ProviderReply reply;
    auto res = client.Post(path_, headers, body.dump(), "application/json");
    if (!res) {
      reply.error = "http: " + httplib::to_string(res.error());
      return reply;
    }
    reply.metadata["status"] = res->status;
    if (res->status < 200 || res->status >= 300) {
      reply.error = "http status " + std::to_string(res->status);
      return reply;
    }
    const nlohmann::json j = nlohmann::json::parse(res->body, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("text") ||
        !j["text"].is_string()) {
      reply.error = "reply is not a JSON object with a string 'text' field";
      return reply;
    }
    reply.text = j["text"].get<std::string>();
    reply.ok = true;
    return reply;
  }

 private:
  ProviderConfig config_;
  std::string base_;
  std::string path_;
  std::string token_;
};

class Fd {
 public:
  explicit Fd(int fd = -1) : fd_(fd) {}
  Fd(const Fd&) = delete;
  Fd& operator=(const Fd&) = delete;
  ~Fd() { reset(); }
  int get() const { return fd_; }
  void reset() {
    if (fd_ >= 0) ::close(fd_);
    fd_ = -1;
  }

 private:
  int fd_;
};

class CommandProvider final : public Provider {
 public:
  explicit CommandProvider(const ProviderConfig& config) : config_(config) {
    // A child that exits without reading stdin must not kill the runner.
    ::signal(SIGPIPE, SIG_IGN);
  }

  ProviderReply complete(const std::string& id, const std::string& prompt) override {
    ProviderReply reply;
    int in_pipe[2];
    int out_pipe[2];
    if (::pipe2(in_pipe, O_CLOEXEC) != 0) return fail(reply, "pipe");
    Fd in_r(in_pipe[0]), in_w(in_pipe[1]);
    if (::pipe2(out_pipe, O_CLOEXEC) != 0) return fail(reply, "pipe");
    Fd out_r(out_pipe[0]), out_w(out_pipe[1]);

    posix_spawn_file_actions_t actions;
    posix_spawn_file_actions_init(&actions);
    posix_spawn_file_actions_adddup2(&actions, in_r.get(), STDIN_FILENO);
    posix_spawn_file_actions_adddup2(&actions, out_w.get(), STDOUT_FILENO);

    std::vector<std::string> env_store;
    for (char** e = environ; *e != nullptr; ++e) {
      if (std::strncmp(*e, "GF2BENCH_PROMPT_ID=", 19) != 0) env_store.emplace_back(*e);
    }
    env_store.push_back("GF2BENCH_PROMPT_ID=" + id);
    std::vector<char*> envp;
    for (std::string& s : env_store) envp.push_back(s.data());
    envp.push_back(nullptr);
    std::vector<std::string> argv_store = *config_.command;
    std::vector<char*> argv;
    for (std::string& s : argv_store) argv.push_back(s.data());
    argv.push_back(nullptr);

    pid_t pid = 0;
    const int rc = ::posix_spawnp(&pid, argv[0], &actions, nullptr, argv.data(),
                                  envp.data());
    posix_spawn_file_actions_destroy(&actions);
    if (rc != 0) {
      reply.error = "spawn " + argv_store[0] + ": " + std::strerror(rc);
      return reply;
    }
    in_r.reset();
    out_w.reset();
    ::fcntl(in_w.get(), F_SETFL, O_NONBLOCK);

    const auto deadline =
        std::chrono::steady_clock::now() +
        std::chrono::duration_cast<std::chrono::steady_clock::duration>(
            std::chrono::duration<double>(config_.timeout_s));
    std::size_t written = 0;
    bool timed_out = false;
    char buf[4096];
    for (;;) {
      pollfd fds[2];
      nfds_t count = 0;
      fds[count++] = {out_r.get(), POLLIN, 0};
      if (in_w.get() >= 0) fds[count++] = {in_w.get(), POLLOUT, 0};
      const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
          deadline - std::chrono::steady_clock::now());
      if (left.count() <= 0) {
        timed_out = true;
        break;
      }
      if (::poll(fds, count, static_cast<int>(left.count())) < 0) {
        if (errno == EINTR) continue;
        break;
      }
      if (count > 1 && fds[1].revents != 0) {
        const ssize_t n = ::write(in_w.get(), prompt.data() + written,
                                  prompt.size() - written);
        if (n > 0) written += static_cast<std::size_t>(n);
        if (n < 0 && errno != EAGAIN) written = prompt.size();
        if (written == prompt.size()) in_w.reset();
      }
      if (fds[0].revents != 0) {
        const ssize_t n = ::read(out_r.get(), buf, sizeof(buf));
        if (n > 0) {
          reply.text.append(buf, static_cast<std::size_t>(n));
        } else if (n == 0 || errno != EAGAIN) {
          break;
        }
      }
    }
    in_w.reset();
    if (timed_out) ::kill(pid, SIGKILL);
    int status = 0;
    while (::waitpid(pid, &status, 0) < 0 && errno == EINTR) {
    }
    if (timed_out) {
      reply.error = "command timed out";
    } else if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) {
      reply.error = "command exited with status " +
                    std::to_string(WIFEXITED(status) ? WEXITSTATUS(status) : -1);
    } else {
      reply.ok = true;
    }
    reply.metadata["exit"] = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return reply;
  }

 private:
  static ProviderReply& fail(ProviderReply& reply, const char* what) {
    reply.error = std::string(what) + ": " + std::strerror(errno);
    return reply;
  }

  ProviderConfig config_;
};

}  // namespace

std::unique_ptr<Provider> make_provider(const ProviderConfig& config) {
  config.validate();
  if (config.endpoint) return std::make_unique<HttpProvider>(config);
  return std::make_unique<CommandProvider>(config);
}

}  // namespace gf2bench

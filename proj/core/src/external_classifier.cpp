#include <fcntl.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <mutex>

#include <nlohmann/json.hpp>

#include "confetti/classifier.hpp"

namespace confetti {

using json = nlohmann::json;

struct ExternalClassifier::Impl {
  pid_t pid = -1;
  FILE* to_child = nullptr;
  FILE* from_child = nullptr;
  std::mutex mu;
  std::string command;

  ~Impl() {
    if (to_child) fclose(to_child);  // EOF tells the child to exit
    if (from_child) fclose(from_child);
    if (pid > 0) {
      int status = 0;
      for (int i = 0; i < 200; ++i) {  // ~2s grace, then kill
        pid_t r = waitpid(pid, &status, WNOHANG);
        if (r == pid || (r == -1 && errno == ECHILD)) return;
        usleep(10000);
      }
      kill(pid, SIGKILL);
      waitpid(pid, &status, 0);
    }
  }

  void send_line(const std::string& line) {
    if (fputs(line.c_str(), to_child) == EOF || fputc('\n', to_child) == EOF ||
        fflush(to_child) != 0) {
      throw PredictionError("external classifier '" + command + "': write failed (child exited?)");
    }
  }

  std::string read_line() {
    char* buf = nullptr;
    size_t cap = 0;
    ssize_t n = getline(&buf, &cap, from_child);
    if (n < 0) {
      free(buf);
      throw PredictionError("external classifier '" + command + "': channel closed by child");
    }
    std::string out(buf, static_cast<std::size_t>(n));
    free(buf);
    while (!out.empty() && (out.back() == '\n' || out.back() == '\r')) out.pop_back();
    return out;
  }

  json roundtrip(const json& request) {
    send_line(request.dump());
    std::string reply = read_line();
    json parsed = json::parse(reply, nullptr, false);
    if (parsed.is_discarded() || !parsed.is_object()) {
      throw PredictionError("external classifier '" + command + "': protocol error, got '" + reply + "'");
    }
    return parsed;
  }
};

ExternalClassifier::ExternalClassifier(const std::string& command, int n_classes)
    : impl_(std::make_unique<Impl>()), n_classes_(n_classes) {
  if (n_classes_ < 1) throw StructuralError("ExternalClassifier: n_classes must be >= 1");
  impl_->command = command;

  int to_child[2], from_child[2];
  if (pipe(to_child) != 0 || pipe(from_child) != 0) {
    throw PredictionError("ExternalClassifier: pipe() failed: " + std::string(strerror(errno)));
  }
  pid_t pid = fork();
  if (pid < 0) throw PredictionError("ExternalClassifier: fork() failed");
  if (pid == 0) {
    dup2(to_child[0], STDIN_FILENO);
    dup2(from_child[1], STDOUT_FILENO);
    close(to_child[0]);
    close(to_child[1]);
    close(from_child[0]);
    close(from_child[1]);
    execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  close(to_child[0]);
  close(from_child[1]);
  impl_->pid = pid;
  impl_->to_child = fdopen(to_child[1], "w");
  impl_->from_child = fdopen(from_child[0], "r");
  if (!impl_->to_child || !impl_->from_child) {
    throw PredictionError("ExternalClassifier: fdopen() failed");
  }

  json hello = impl_->roundtrip(json{{"op", "hello"}});
  if (!hello.contains("n_classes") || !hello["n_classes"].is_number_integer()) {
    throw PredictionError("external classifier '" + command + "': handshake missing n_classes");
  }
  int reported = hello["n_classes"].get<int>();
  if (reported != n_classes_) {
    throw PredictionError("external classifier '" + command + "': reports " +
                          std::to_string(reported) + " classes, expected " +
                          std::to_string(n_classes_));
  }
}

ExternalClassifier::~ExternalClassifier() = default;

ProbabilityVector ExternalClassifier::predict_proba(const MtsInstance& x) const {
  json series = json::array();
  for (int i = 0; i < x.t(); ++i) {
    json row = json::array();
    for (int c = 0; c < x.d(); ++c) row.push_back(x.at(i, c));
    series.push_back(std::move(row));
  }
  json request{{"op", "predict"}, {"series", std::move(series)}};

  json reply;
  {
    std::lock_guard<std::mutex> lock(impl_->mu);
    reply = impl_->roundtrip(request);
  }
  if (!reply.contains("proba") || !reply["proba"].is_array()) {
    throw PredictionError("external classifier: reply has no 'proba' array");
  }
  const auto& arr = reply["proba"];
  if (static_cast<int>(arr.size()) != n_classes_) {
    throw PredictionError("external classifier: expected " + std::to_string(n_classes_) +
                          " probabilities, got " + std::to_string(arr.size()));
  }
  std::vector<double> probs(arr.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_number()) throw PredictionError("external classifier: non-numeric probability");
    probs[i] = arr[i].get<double>();
    if (!std::isfinite(probs[i]) || probs[i] < -1e-6 || probs[i] > 1.0 + 1e-6) {
      throw PredictionError("external classifier: probability " + std::to_string(probs[i]) +
                            " outside [0,1] beyond tolerance");
    }
    sum += probs[i];
  }
  if (std::abs(sum - 1.0) > 1e-6) {
    throw PredictionError("external classifier: probabilities sum to " + std::to_string(sum) +
                          ", beyond renormalization tolerance");
  }
  // Tolerate float serialization noise: clamp and renormalize.
  double clamped_sum = 0.0;
  for (double& p : probs) {
    p = std::min(1.0, std::max(0.0, p));
    clamped_sum += p;
  }
  for (double& p : probs) p /= clamped_sum;

  ProbabilityVector out{std::move(probs)};
  out.validate();
  return out;
}

}  // namespace confetti

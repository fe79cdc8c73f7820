#pragma once

#include <atomic>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "confetti/series.hpp"

namespace confetti {

// Prediction failures: broken model process, malformed responses, invalid
// probability vectors.
class PredictionError : public std::runtime_error {
 public:
  explicit PredictionError(const std::string& what) : std::runtime_error(what) {}
};

struct ProbabilityVector {
  std::vector<double> probs;

  // Index of the largest probability; ties break toward the lowest class.
  int argmax() const;

  // Entries in [0,1] and summing to 1 within 1e-9.
  void validate() const;
};

// Deterministic mapping from an instance to a class probability vector.
// Implementations must be safely callable from multiple threads.
class Classifier {
 public:
  virtual ~Classifier() = default;

  virtual int n_classes() const = 0;
  virtual ProbabilityVector predict_proba(const MtsInstance& x) const = 0;

  // argmax of predict_proba, ties toward the lowest class index.
  int predict(const MtsInstance& x) const { return predict_proba(x).argmax(); }
};

// Nearest-centroid softmax model: per-class centroid is the cell-wise mean of
// that class's training instances; probabilities are
// softmax(-temperature * l2(x, centroid_c)). Smooth in its inputs, which gives
// the mask search a usable landscape without a deep model.
class CentroidClassifier : public Classifier {
 public:
  CentroidClassifier(std::vector<MtsInstance> centroids, double temperature);

  int n_classes() const override { return static_cast<int>(centroids_.size()); }
  ProbabilityVector predict_proba(const MtsInstance& x) const override;

  const MtsInstance& centroid(int c) const { return centroids_[c]; }
  double temperature() const { return temperature_; }

 private:
  std::vector<MtsInstance> centroids_;
  double temperature_;
};

// Fits a CentroidClassifier; every class in [0, n_classes) needs at least one
// training instance.
CentroidClassifier fit_centroid_classifier(const LabeledDataset& train, double temperature);

// Bridge to a child process speaking one JSON document per line over
// stdin/stdout:
//   handshake: `{"op":"hello"}`  ->  `{"n_classes": K}`
//   request:   `{"op":"predict","series":[[d reals] x t]}` -> `{"proba":[K reals]}`
// The child must flush after every line. Requests are serialized over the
// single child; callers may still invoke concurrently. Replies whose
// probabilities deviate from the invariants by more than 1e-6 are errors;
// smaller deviations are renormalized.
class ExternalClassifier : public Classifier {
 public:
  ExternalClassifier(const std::string& command, int n_classes);
  ~ExternalClassifier() override;

  ExternalClassifier(const ExternalClassifier&) = delete;
  ExternalClassifier& operator=(const ExternalClassifier&) = delete;

  int n_classes() const override { return n_classes_; }
  ProbabilityVector predict_proba(const MtsInstance& x) const override;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  int n_classes_;
};

std::unique_ptr<Classifier> external_classifier(const std::string& command, int n_classes);

// Non-owning wrapper that counts predict_proba calls.
class CountingClassifier : public Classifier {
 public:
  explicit CountingClassifier(const Classifier& inner) : inner_(inner) {}

  int n_classes() const override { return inner_.n_classes(); }
  ProbabilityVector predict_proba(const MtsInstance& x) const override {
    calls_.fetch_add(1, std::memory_order_relaxed);
    return inner_.predict_proba(x);
  }

  long long count() const { return calls_.load(std::memory_order_relaxed); }

 private:
  const Classifier& inner_;
  mutable std::atomic<long long> calls_{0};
};

}  // namespace confetti

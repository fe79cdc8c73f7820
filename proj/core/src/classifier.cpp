#include "confetti/classifier.hpp"

#include <algorithm>
#include <cmath>

#include "confetti/distance.hpp"

namespace confetti {

int ProbabilityVector::argmax() const {
  if (probs.empty()) throw PredictionError("ProbabilityVector: empty");
  int best = 0;
  for (int i = 1; i < static_cast<int>(probs.size()); ++i) {
    if (probs[i] > probs[best]) best = i;
  }
  return best;
}

void ProbabilityVector::validate() const {
  if (probs.empty()) throw PredictionError("ProbabilityVector: empty");
  double sum = 0.0;
  for (double p : probs) {
    if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
      throw PredictionError("ProbabilityVector: entry " + std::to_string(p) + " outside [0,1]");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw PredictionError("ProbabilityVector: entries sum to " + std::to_string(sum));
  }
}

CentroidClassifier::CentroidClassifier(std::vector<MtsInstance> centroids, double temperature)
    : centroids_(std::move(centroids)), temperature_(temperature) {
  if (centroids_.empty()) throw StructuralError("CentroidClassifier: no centroids");
  if (!(temperature_ > 0.0) || !std::isfinite(temperature_)) {
    throw StructuralError("CentroidClassifier: temperature must be positive and finite");
  }
  for (const auto& c : centroids_) {
    if (!c.same_shape(centroids_.front())) {
      throw StructuralError("CentroidClassifier: centroids disagree on shape");
    }
  }
}

ProbabilityVector CentroidClassifier::predict_proba(const MtsInstance& x) const {
  const int k = n_classes();
  std::vector<double> logits(k);
  for (int c = 0; c < k; ++c) logits[c] = -temperature_ * dist_l2(x, centroids_[c]);

  double max_logit = *std::max_element(logits.begin(), logits.end());
  double denom = 0.0;
  for (int c = 0; c < k; ++c) {
    logits[c] = std::exp(logits[c] - max_logit);
    denom += logits[c];
  }
  ProbabilityVector out;
  out.probs.resize(k);
  for (int c = 0; c < k; ++c) out.probs[c] = logits[c] / denom;
  out.validate();
  return out;
}

CentroidClassifier fit_centroid_classifier(const LabeledDataset& train, double temperature) {
  train.validate();
  if (train.empty()) throw StructuralError("fit_centroid_classifier: empty training set");
  const int t = train.t();
  const int d = train.d();
  const std::size_t cells = static_cast<std::size_t>(t) * d;

  std::vector<std::vector<double>> sums(train.n_classes, std::vector<double>(cells, 0.0));
  std::vector<int> counts(train.n_classes, 0);
  for (int i = 0; i < train.size(); ++i) {
    const auto& v = train.instances[i].values();
    auto& s = sums[train.labels[i]];
    for (std::size_t j = 0; j < cells; ++j) s[j] += v[j];
    ++counts[train.labels[i]];
  }

  std::vector<MtsInstance> centroids;
  centroids.reserve(train.n_classes);
  for (int c = 0; c < train.n_classes; ++c) {
    if (counts[c] == 0) {
      throw StructuralError("fit_centroid_classifier: class " + std::to_string(c) +
                            " has no training instances");
    }
    for (std::size_t j = 0; j < cells; ++j) sums[c][j] /= counts[c];
    centroids.emplace_back("centroid" + std::to_string(c), t, d, std::move(sums[c]));
  }
  return CentroidClassifier(std::move(centroids), temperature);
}

std::unique_ptr<Classifier> external_classifier(const std::string& command, int n_classes) {
  return std::make_unique<ExternalClassifier>(command, n_classes);
}

}  // namespace confetti

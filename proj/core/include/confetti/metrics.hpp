#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "confetti/classifier.hpp"
#include "confetti/engine.hpp"
#include "confetti/series.hpp"

namespace confetti {

// yNN direction. Prose: fraction of the k nearest reference neighbors whose
// predicted class agrees with the CE's (higher = stronger support). Literal:
// one minus that fraction.
enum class YnnMode { Prose, Literal };

YnnMode ynn_mode_from_string(const std::string& name);
std::string to_string(YnnMode mode);

struct MetricsSummary {
  double cov = 0.0;
  std::optional<double> val;
  std::optional<double> spa;
  std::optional<double> conf;
  std::optional<double> ynn;
  std::optional<double> l1_mean;
  std::optional<double> l2_mean;
  std::optional<double> dtw_mean;
  int n_instances = 0;  // attempted test instances
  int n_ces = 0;        // total CEs across all reports
};

using Reports = std::vector<std::optional<CounterfactualReport>>;

// Mean over instances (with at least one CE) of the mean over their CEs of
// (1 - hamming/(t*d)). Instances with empty CE sets are excluded, not
// zero-filled. Throws when no CEs exist anywhere.
double sparsity(const LabeledDataset& test, const Reports& reports);

// Mean over instances of the mean over CEs of (1 - P(f(ce) = f(query))),
// where f(query) is the query's predicted class.
double confidence_metric(const Classifier& classifier, const LabeledDataset& test,
                         const Reports& reports);

// Neighborhood support: per CE, the k DTW-nearest reference instances are
// found and scored by predicted-label agreement with the CE.
double ynn(const Classifier& classifier, const Reports& reports, const LabeledDataset& reference,
           int k = 5, YnnMode mode = YnnMode::Prose);

// 100 * (#reports with a non-empty CE set) / attempted.
double coverage(const Reports& reports, int attempted);

// Mean over instances of the fraction of their CEs whose predicted class
// differs from the query's.
double validity(const Classifier& classifier, const LabeledDataset& test, const Reports& reports);

// Mean L1, L2 and DTW distance from each CE to its query, pooled over all CEs.
std::array<double, 3> proximity_means(const LabeledDataset& test, const Reports& reports);

MetricsSummary summarize(const Classifier& classifier, const LabeledDataset& test,
                         const LabeledDataset& reference, const Reports& reports, int attempted,
                         int ynn_k = 5, YnnMode mode = YnnMode::Prose);

}  // namespace confetti

#include "confetti/metrics.hpp"

#include <map>

#include "confetti/distance.hpp"

namespace confetti {

namespace {

const MtsInstance& query_for(const LabeledDataset& test, const std::string& query_id) {
  for (const auto& inst : test.instances) {
    if (inst.id() == query_id) return inst;
  }
  throw StructuralError("metrics: query '" + query_id + "' not found in the test set");
}

// Applies fn(query, report) per report with a non-empty CE set; returns the
// number of such reports.
template <typename Fn>
int for_each_nonempty(const LabeledDataset& test, const Reports& reports, const Fn& fn) {
  int n = 0;
  for (const auto& r : reports) {
    if (!r || r->ces.empty()) continue;
    fn(query_for(test, r->query_id), *r);
    ++n;
  }
  return n;
}

void require_some_ces(int n) {
  if (n == 0) throw StructuralError("metrics: no counterfactuals anywhere, metric undefined");
}

}  // namespace

YnnMode ynn_mode_from_string(const std::string& name) {
  if (name == "prose") return YnnMode::Prose;
  if (name == "literal") return YnnMode::Literal;
  throw StructuralError("unknown yNN mode '" + name + "' (expected prose or literal)");
}

std::string to_string(YnnMode mode) {
  return mode == YnnMode::Prose ? "prose" : "literal";
}

double sparsity(const LabeledDataset& test, const Reports& reports) {
  double sum = 0.0;
  int n = for_each_nonempty(test, reports, [&](const MtsInstance& query, const CounterfactualReport& r) {
    const double cells = static_cast<double>(query.t()) * query.d();
    double inner = 0.0;
    for (const auto& ce : r.ces) {
      inner += 1.0 - static_cast<double>(hamming(query, ce.instance)) / cells;
    }
    sum += inner / static_cast<double>(r.ces.size());
  });
  require_some_ces(n);
  return sum / n;
}

double confidence_metric(const Classifier& classifier, const LabeledDataset& test,
                         const Reports& reports) {
  double sum = 0.0;
  int n = for_each_nonempty(test, reports, [&](const MtsInstance& query, const CounterfactualReport& r) {
    const int original = classifier.predict(query);
    double inner = 0.0;
    for (const auto& ce : r.ces) {
      inner += 1.0 - classifier.predict_proba(ce.instance).probs[original];
    }
    sum += inner / static_cast<double>(r.ces.size());
  });
  require_some_ces(n);
  return sum / n;
}

double ynn(const Classifier& classifier, const Reports& reports, const LabeledDataset& reference,
           int k, YnnMode mode) {
  if (k > reference.size()) {
    throw StructuralError("ynn: k=" + std::to_string(k) + " exceeds reference size " +
                          std::to_string(reference.size()));
  }
  // Predicted labels of the reference pool, computed once.
  std::vector<int> ref_pred(reference.size());
  for (int i = 0; i < reference.size(); ++i) {
    ref_pred[i] = classifier.predict(reference.instances[i]);
  }

  double sum = 0.0;
  int n = 0;
  for (const auto& r : reports) {
    if (!r || r->ces.empty()) continue;
    double inner = 0.0;
    for (const auto& ce : r.ces) {
      int ce_class = classifier.predict(ce.instance);
      auto neighbors = knn_indices(ce.instance, reference.instances, k, DistanceKind::DTW);
      int agree = 0;
      for (int idx : neighbors) {
        if (ref_pred[idx] == ce_class) ++agree;
      }
      double fraction = static_cast<double>(agree) / k;
      inner += mode == YnnMode::Prose ? fraction : 1.0 - fraction;
    }
    sum += inner / static_cast<double>(r->ces.size());
    ++n;
  }
  require_some_ces(n);
  return sum / n;
}

double coverage(const Reports& reports, int attempted) {
  if (attempted <= 0) throw StructuralError("coverage: no instances attempted");
  int covered = 0;
  for (const auto& r : reports) {
    if (r && !r->ces.empty()) ++covered;
  }
  return 100.0 * covered / attempted;
}

double validity(const Classifier& classifier, const LabeledDataset& test, const Reports& reports) {
  double sum = 0.0;
  int n = for_each_nonempty(test, reports, [&](const MtsInstance& query, const CounterfactualReport& r) {
    const int original = classifier.predict(query);
    int valid = 0;
    for (const auto& ce : r.ces) {
      if (classifier.predict(ce.instance) != original) ++valid;
    }
    sum += static_cast<double>(valid) / static_cast<double>(r.ces.size());
  });
  require_some_ces(n);
  return sum / n;
}

std::array<double, 3> proximity_means(const LabeledDataset& test, const Reports& reports) {
  double l1 = 0.0, l2 = 0.0, dtw = 0.0;
  long long count = 0;
  for_each_nonempty(test, reports, [&](const MtsInstance& query, const CounterfactualReport& r) {
    for (const auto& ce : r.ces) {
      l1 += dist_l1(query, ce.instance);
      l2 += dist_l2(query, ce.instance);
      dtw += dist_dtw(query, ce.instance);
      ++count;
    }
  });
  if (count == 0) throw StructuralError("metrics: no counterfactuals anywhere, metric undefined");
  return {l1 / count, l2 / count, dtw / count};
}

MetricsSummary summarize(const Classifier& classifier, const LabeledDataset& test,
                         const LabeledDataset& reference, const Reports& reports, int attempted,
                         int ynn_k, YnnMode mode) {
  MetricsSummary out;
  out.cov = coverage(reports, attempted);
  out.n_instances = attempted;
  for (const auto& r : reports) {
    if (r) out.n_ces += static_cast<int>(r->ces.size());
  }
  if (out.n_ces > 0) {
    out.spa = sparsity(test, reports);
    out.conf = confidence_metric(classifier, test, reports);
    out.val = validity(classifier, test, reports);
    out.ynn = ynn(classifier, reports, reference, ynn_k, mode);
    auto prox = proximity_means(test, reports);
    out.l1_mean = prox[0];
    out.l2_mean = prox[1];
    out.dtw_mean = prox[2];
  }
  return out;
}

}  // namespace confetti

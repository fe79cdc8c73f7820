#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "confetti/classifier.hpp"
#include "confetti/distance.hpp"
#include "confetti/nsga3.hpp"
#include "confetti/nun.hpp"
#include "confetti/series.hpp"

namespace confetti {

// Where the probe window of length k goes when no feature weights are
// available: centered at floor((t-k)/2), at the start, or the best of
// {start, centered, end} by full-substitution confidence (ties toward the
// earliest start).
enum class WindowPlacement { Center, Start, ScanBestOfThree };

WindowPlacement window_placement_from_string(const std::string& name);
std::string to_string(WindowPlacement placement);

struct EngineConfig {
  double theta = 0.51;
  double alpha = 0.5;
  int pop_size = 30;
  int generations = 50;
  double pc = 0.9;
  std::optional<double> pm;  // empty: 1/(k*d) per probe
  int partitions = 6;
  DistanceKind distance = DistanceKind::L2;
  ObjectiveMode objectives = ObjectiveMode::CO_SP_PR;
  std::uint64_t seed = 0;
  bool use_weights = true;
  WindowPlacement placement = WindowPlacement::Center;

  // Throws StructuralError on hard violations; returns a warning for
  // questionable-but-legal settings (theta below 0.5).
  std::optional<std::string> validate() const;
};

struct CounterfactualCe {
  MtsInstance instance;
  double m1;  // P(f(ce) = target)
  double m2;  // hamming(ce, query) / (t*d)
  double m3;  // dist(query, ce)
  Subsequence window;
  std::optional<BinaryMask> genome;  // absent for reports parsed from disk
};

struct CallCounts {
  long long nun = 0;
  long long naive = 0;
  long long window_select = 0;
  long long evolve = 0;
  long long total() const { return nun + naive + window_select + evolve; }
};

struct CounterfactualReport {
  std::string query_id;
  std::string nun_id;
  int nun_index = -1;
  int target_class = -1;
  int query_class = -1;
  std::vector<CounterfactualCe> ces;
  int best_index = -1;
  CallCounts call_counts;
  double wall_time_s = 0.0;
  std::size_t hamming_bound = 0;  // hamming(c0, query), or floor(t/2)*d without weights
  bool used_weights = false;
};

// Seed for the probe at window length k; identical regardless of the order
// in which the binary search visits k.
std::uint64_t probe_seed(std::uint64_t base_seed, int k);

// End-to-end search for one query: NUN retrieval, optional naive stage,
// binary search over window lengths with one NSGA-III run per probe, and
// alpha-weighted best-CE selection. Returns nullopt when no NUN exists.
std::optional<CounterfactualReport> explain(const Classifier& classifier, const MtsInstance& query,
                                            const LabeledDataset& reference,
                                            const EngineConfig& config);

// argmax of alpha*m1 + (1-alpha)*(1-m2); ties toward the lower index.
int select_best(const std::vector<std::pair<double, double>>& confidence_and_m2, double alpha);

struct BatchResult {
  std::vector<std::optional<CounterfactualReport>> reports;  // aligned with test order
  int attempted = 0;
  std::vector<std::pair<int, std::string>> errors;  // (test index, message)
};

// Runs explain per test instance with derived seeds (base seed + index).
// Individual failures are recorded, not fatal. parallel bounds the number of
// concurrent explain calls; results are deterministic regardless.
BatchResult explain_batch(const Classifier& classifier, const LabeledDataset& test,
                          const LabeledDataset& reference, const EngineConfig& config,
                          int parallel = 1);

}  // namespace confetti

#include "confetti/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <chrono>
#include <cmath>
#include <limits>
#include <thread>

#include "confetti/subsequence.hpp"

namespace confetti {

WindowPlacement window_placement_from_string(const std::string& name) {
  if (name == "center") return WindowPlacement::Center;
  if (name == "start") return WindowPlacement::Start;
  if (name == "scan-best-of-three") return WindowPlacement::ScanBestOfThree;
  throw StructuralError("unknown window placement '" + name +
                        "' (expected center, start or scan-best-of-three)");
}

std::string to_string(WindowPlacement placement) {
  switch (placement) {
    case WindowPlacement::Center: return "center";
    case WindowPlacement::Start: return "start";
    case WindowPlacement::ScanBestOfThree: return "scan-best-of-three";
  }
  return "center";
}

std::optional<std::string> EngineConfig::validate() const {
  if (theta < 0.0 || theta > 1.0) throw StructuralError("EngineConfig: theta must be in [0,1]");
  if (alpha < 0.0 || alpha > 1.0) throw StructuralError("EngineConfig: alpha must be in [0,1]");
  if (pc < 0.0 || pc > 1.0) throw StructuralError("EngineConfig: pc must be in [0,1]");
  if (pm && (*pm < 0.0 || *pm > 1.0)) throw StructuralError("EngineConfig: pm must be in [0,1]");
  if (pop_size < 2) throw StructuralError("EngineConfig: pop_size must be >= 2");
  if (generations < 1) throw StructuralError("EngineConfig: generations must be >= 1");
  if (partitions < 1) throw StructuralError("EngineConfig: partitions must be >= 1");
  if (theta < 0.5) {
    return "theta=" + std::to_string(theta) +
           " is below 0.5: the target class may not be the argmax; survivors are "
           "filtered for validity";
  }
  return std::nullopt;
}

std::uint64_t probe_seed(std::uint64_t base_seed, int k) {
  // splitmix64 over the (seed, k) pair
  std::uint64_t x = base_seed ^ (static_cast<std::uint64_t>(k) * 0x9E3779B97F4A7C15ULL);
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

namespace {

// Probe window for no-weights mode.
Subsequence placed_window(const Classifier& classifier, const MtsInstance& query,
                          const NunResult& nun, int k, WindowPlacement placement,
                          double* calls_out) {
  const int t = query.t();
  const int d = query.d();
  auto window_at = [&](int start) { return Subsequence(start, start + k - 1); };
  switch (placement) {
    case WindowPlacement::Start:
      return window_at(0);
    case WindowPlacement::Center:
      return window_at((t - k) / 2);
    case WindowPlacement::ScanBestOfThree: {
      std::vector<int> starts{0, (t - k) / 2, t - k};
      starts.erase(std::unique(starts.begin(), starts.end()), starts.end());
      int best_start = starts.front();
      double best_conf = -1.0;
      for (int s : starts) {
        MtsInstance full = substitute_window(query, nun.nun, window_at(s), BinaryMask::ones(k, d));
        double conf = classifier.predict_proba(full).probs[nun.target_class];
        if (calls_out) *calls_out += 1;
        if (conf > best_conf) {  // strict: earliest start wins ties
          best_conf = conf;
          best_start = s;
        }
      }
      return window_at(best_start);
    }
  }
  return window_at((t - k) / 2);
}

bool ce_already_present(const std::vector<CounterfactualCe>& ces, const MtsInstance& candidate) {
  for (const auto& ce : ces) {
    if (values_equal(ce.instance, candidate)) return true;
  }
  return false;
}

}  // namespace

std::optional<CounterfactualReport> explain(const Classifier& classifier, const MtsInstance& query,
                                            const LabeledDataset& reference,
                                            const EngineConfig& config) {
  config.validate();
  const auto t_start = std::chrono::steady_clock::now();

  CountingClassifier counted(classifier);
  CounterfactualReport report;
  report.query_id = query.id();

  auto nun = find_nun(counted, query, reference, config.theta, config.distance);
  report.call_counts.nun = counted.count();
  if (!nun) return std::nullopt;

  const int t = query.t();
  const int d = query.d();
  const double cells = static_cast<double>(t) * d;
  const int target = nun->target_class;

  report.nun_id = nun->nun.id();
  report.nun_index = nun->nun_index;
  report.target_class = target;
  report.query_class = counted.predict(query);
  report.call_counts.nun = counted.count();
  report.used_weights = config.use_weights;

  int h;
  const FeatureWeights* nun_weights = nullptr;
  if (config.use_weights) {
    auto it = reference.weights.find(nun->nun.id());
    if (it == reference.weights.end()) {
      throw StructuralError("explain: no feature weights for NUN '" + nun->nun.id() + "'");
    }
    nun_weights = &it->second;

    long long before = counted.count();
    NaiveResult naive = naive_stage(counted, query, *nun, *nun_weights, config.theta);
    report.call_counts.naive = counted.count() - before;

    report.hamming_bound = hamming(naive.c0, query);
    report.ces.push_back(CounterfactualCe{
        naive.c0,
        naive.confidence,
        static_cast<double>(hamming(naive.c0, query)) / cells,
        distance(config.distance, query, naive.c0),
        naive.window,
        BinaryMask::ones(naive.length, d),
    });
    h = naive.length;
  } else {
    h = t / 2;
    report.hamming_bound = static_cast<std::size_t>(t / 2) * d;
  }

  const ObjectiveSet active = objective_set(config.objectives);
  const ReferencePointSet refs = das_dennis(active.size(), config.partitions);
  const int z = config.pop_size;

  int l = 1;
  while (l <= h) {
    const int k = (l + h) / 2;
    if (k < 2) {  // a window of length 1 is not a valid Subsequence
      l = k + 1;
      continue;
    }

    Subsequence window(0, 1);
    if (nun_weights) {
      window = find_subsequence(*nun_weights, k);
    } else {
      double extra_calls = 0;
      window = placed_window(counted, query, *nun, k, config.placement, &extra_calls);
      report.call_counts.window_select += static_cast<long long>(extra_calls);
    }

    auto evaluate = [&](const BinaryMask& genome) {
      MtsInstance decoded = substitute_window(query, nun->nun, window, genome);
      ProbabilityVector proba = counted.predict_proba(decoded);
      double m1 = proba.probs[target];
      double m2 = static_cast<double>(hamming(decoded, query)) / cells;
      double m3 = distance(config.distance, query, decoded);
      return MaskCandidate{genome,
                           {m1, m2, m3},
                           m1 >= config.theta,
                           proba.argmax(),
                           std::move(decoded)};
    };

    std::mt19937_64 rng(probe_seed(config.seed, k));
    std::vector<BinaryMask> genomes = binary_sampling(k, d, z, rng);
    std::vector<MaskCandidate> initial;
    initial.reserve(z);
    long long before = counted.count();
    for (const auto& g : genomes) initial.push_back(evaluate(g));

    EvolveParams params{config.generations, config.pc,
                        config.pm ? *config.pm : 1.0 / (static_cast<double>(k) * d), config.theta};
    EvolveResult evolved = nsga3_evolve(std::move(initial), evaluate, refs, active, params, rng);
    report.call_counts.evolve += counted.count() - before;

    // Validity filter: m1 >= theta > 0.5 already implies the argmax is the
    // target; for theta <= 0.5 this drops survivors predicted otherwise.
    std::vector<MaskCandidate> valid;
    for (auto& s : evolved.survivors) {
      if (s.pred_class == target) valid.push_back(std::move(s));
    }

    if (valid.empty()) {
      l = k + 1;
    } else {
      for (auto& s : valid) {
        if (ce_already_present(report.ces, s.decoded)) continue;
        report.ces.push_back(CounterfactualCe{std::move(s.decoded), s.objectives[0],
                                              s.objectives[1], s.objectives[2], window,
                                              std::move(s.genome)});
      }
      h = k - 1;
    }
  }

  if (!report.ces.empty()) {
    std::vector<std::pair<double, double>> scores;
    scores.reserve(report.ces.size());
    for (const auto& ce : report.ces) scores.emplace_back(ce.m1, ce.m2);
    report.best_index = select_best(scores, config.alpha);
  }

  for (const auto& ce : report.ces) {
    assert(hamming(ce.instance, query) <= report.hamming_bound);
    (void)ce;
  }

  report.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  return report;
}

int select_best(const std::vector<std::pair<double, double>>& confidence_and_m2, double alpha) {
  if (confidence_and_m2.empty()) throw StructuralError("select_best: empty CE list");
  int best = 0;
  double best_score = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < static_cast<int>(confidence_and_m2.size()); ++i) {
    const auto& [m1, m2] = confidence_and_m2[i];
    double score = alpha * m1 + (1.0 - alpha) * (1.0 - m2);
    if (score > best_score) {  // strict: lower index wins ties
      best_score = score;
      best = i;
    }
  }
  return best;
}

BatchResult explain_batch(const Classifier& classifier, const LabeledDataset& test,
                          const LabeledDataset& reference, const EngineConfig& config,
                          int parallel) {
  test.validate();
  reference.validate();
  if (test.empty()) throw StructuralError("explain_batch: empty test set");
  if (parallel < 1) throw StructuralError("explain_batch: parallel must be >= 1");

  BatchResult result;
  result.attempted = test.size();
  result.reports.resize(test.size());
  std::vector<std::optional<std::string>> errors(test.size());

  std::atomic<int> next{0};
  auto worker = [&]() {
    for (;;) {
      int i = next.fetch_add(1);
      if (i >= test.size()) return;
      EngineConfig cfg = config;
      cfg.seed = config.seed + static_cast<std::uint64_t>(i);
      try {
        result.reports[i] = explain(classifier, test.instances[i], reference, cfg);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };

  if (parallel == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    int n_threads = std::min(parallel, test.size());
    threads.reserve(n_threads);
    for (int i = 0; i < n_threads; ++i) threads.emplace_back(worker);
    for (auto& th : threads) th.join();
  }

  for (int i = 0; i < test.size(); ++i) {
    if (errors[i]) result.errors.emplace_back(i, *errors[i]);
  }
  return result;
}

}  // namespace confetti

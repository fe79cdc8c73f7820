#include "confetti/nsga3.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace confetti {

namespace {

void emit_points(int m, int p, int remaining, std::vector<int>& prefix,
                 std::vector<std::vector<double>>& out) {
  if (static_cast<int>(prefix.size()) == m - 1) {
    std::vector<double> point(m);
    for (int i = 0; i < m - 1; ++i) point[i] = static_cast<double>(prefix[i]) / p;
    point[m - 1] = static_cast<double>(remaining) / p;
    out.push_back(std::move(point));
    return;
  }
  for (int i = 0; i <= remaining; ++i) {
    prefix.push_back(i);
    emit_points(m, p, remaining - i, prefix, out);
    prefix.pop_back();
  }
}

bool strictly_better(double a, double b, Sense s) {
  return s == Sense::Maximize ? a > b : a < b;
}

}  // namespace

ReferencePointSet das_dennis(int m, int p) {
  if (m < 2) throw StructuralError("das_dennis: need at least 2 objectives");
  if (p < 1) throw StructuralError("das_dennis: need at least 1 partition");
  ReferencePointSet set;
  std::vector<int> prefix;
  emit_points(m, p, p, prefix, set.points);
  return set;
}

bool dominates(const std::vector<double>& a, const std::vector<double>& b,
               const std::vector<Sense>& senses) {
  bool strict = false;
  for (std::size_t i = 0; i < senses.size(); ++i) {
    if (strictly_better(b[i], a[i], senses[i])) return false;
    if (strictly_better(a[i], b[i], senses[i])) strict = true;
  }
  return strict;
}

namespace {

// O(n^2) fast non-dominated sort over an arbitrary dominance predicate.
template <typename Dominates>
std::vector<std::vector<int>> sort_fronts(int n, const Dominates& dom) {
  std::vector<int> dominator_count(n, 0);
  std::vector<std::vector<int>> dominated_by(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (dom(i, j)) {
        dominated_by[i].push_back(j);
        ++dominator_count[j];
      } else if (dom(j, i)) {
        dominated_by[j].push_back(i);
        ++dominator_count[i];
      }
    }
  }
  std::vector<std::vector<int>> fronts;
  std::vector<int> current;
  for (int i = 0; i < n; ++i) {
    if (dominator_count[i] == 0) current.push_back(i);
  }
  while (!current.empty()) {
    fronts.push_back(current);
    std::vector<int> next;
    for (int i : current) {
      for (int j : dominated_by[i]) {
        if (--dominator_count[j] == 0) next.push_back(j);
      }
    }
    std::sort(next.begin(), next.end());  // within-front order: ascending index
    current = std::move(next);
  }
  return fronts;
}

}  // namespace

std::vector<std::vector<int>> nondominated_sort(const std::vector<std::vector<double>>& objectives,
                                                const std::vector<Sense>& senses) {
  if (objectives.empty()) throw StructuralError("nondominated_sort: empty population");
  for (const auto& o : objectives) {
    for (double v : o) {
      if (!std::isfinite(v)) throw StructuralError("nondominated_sort: non-finite objective");
    }
  }
  return sort_fronts(static_cast<int>(objectives.size()), [&](int i, int j) {
    return dominates(objectives[i], objectives[j], senses);
  });
}

std::vector<std::vector<int>> constrained_nondominated_sort(
    const std::vector<std::vector<double>>& objectives, const std::vector<Sense>& senses,
    const std::vector<double>& violations) {
  if (objectives.empty()) throw StructuralError("constrained_nondominated_sort: empty population");
  if (violations.size() != objectives.size()) {
    throw StructuralError("constrained_nondominated_sort: violation count mismatch");
  }
  auto dom = [&](int i, int j) {
    bool feas_i = violations[i] <= 0.0;
    bool feas_j = violations[j] <= 0.0;
    if (feas_i != feas_j) return feas_i;
    if (!feas_i) return violations[i] < violations[j];
    return dominates(objectives[i], objectives[j], senses);
  };
  return sort_fronts(static_cast<int>(objectives.size()), dom);
}

ObjectiveMode objective_mode_from_string(const std::string& name) {
  if (name == "co_pr") return ObjectiveMode::CO_PR;
  if (name == "co_sp") return ObjectiveMode::CO_SP;
  if (name == "sp_pr") return ObjectiveMode::SP_PR;
  if (name == "co_sp_pr") return ObjectiveMode::CO_SP_PR;
  throw StructuralError("unknown objective mode '" + name +
                        "' (expected co_pr, co_sp, sp_pr or co_sp_pr)");
}

std::string to_string(ObjectiveMode mode) {
  switch (mode) {
    case ObjectiveMode::CO_PR: return "co_pr";
    case ObjectiveMode::CO_SP: return "co_sp";
    case ObjectiveMode::SP_PR: return "sp_pr";
    case ObjectiveMode::CO_SP_PR: return "co_sp_pr";
  }
  return "co_sp_pr";
}

ObjectiveSet objective_set(ObjectiveMode mode) {
  // m1 (confidence) maximized, m2 (normalized Hamming) and m3 (proximity) minimized.
  switch (mode) {
    case ObjectiveMode::CO_PR:
      return {{0, 2}, {Sense::Maximize, Sense::Minimize}};
    case ObjectiveMode::CO_SP:
      return {{0, 1}, {Sense::Maximize, Sense::Minimize}};
    case ObjectiveMode::SP_PR:
      return {{1, 2}, {Sense::Minimize, Sense::Minimize}};
    case ObjectiveMode::CO_SP_PR:
      return {{0, 1, 2}, {Sense::Maximize, Sense::Minimize, Sense::Minimize}};
  }
  return {{0, 1, 2}, {Sense::Maximize, Sense::Minimize, Sense::Minimize}};
}

std::vector<BinaryMask> binary_sampling(int k, int d, int z, std::mt19937_64& rng) {
  if (z < 1) throw StructuralError("binary_sampling: z must be >= 1");
  std::uniform_int_distribution<int> coin(0, 1);
  std::vector<BinaryMask> out;
  out.reserve(z);
  for (int i = 0; i < z; ++i) {
    BinaryMask g(k, d);
    for (auto& bit : g.bits()) bit = static_cast<std::uint8_t>(coin(rng));
    out.push_back(std::move(g));
  }
  out[0] = BinaryMask::ones(k, d);  // guaranteed full-substitution seed
  return out;
}

std::pair<BinaryMask, BinaryMask> two_point_crossover_at(const BinaryMask& a, const BinaryMask& b,
                                                         int u, int v) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw StructuralError("two_point_crossover: genome shapes differ");
  }
  const int len = a.rows() * a.cols();
  if (u < 0 || v > len || u >= v) {
    throw StructuralError("two_point_crossover: bad cut points");
  }
  BinaryMask c1 = a, c2 = b;
  for (int i = u; i < v; ++i) std::swap(c1.bits()[i], c2.bits()[i]);
  return {std::move(c1), std::move(c2)};
}

std::pair<BinaryMask, BinaryMask> two_point_crossover(const BinaryMask& a, const BinaryMask& b,
                                                      std::mt19937_64& rng) {
  const int len = a.rows() * a.cols();
  std::uniform_int_distribution<int> cut(0, len);
  int u = 0, v = 0;
  do {
    u = cut(rng);
    v = cut(rng);
  } while (u == v);
  if (u > v) std::swap(u, v);
  return two_point_crossover_at(a, b, u, v);
}

BinaryMask bit_flip_mutation(const BinaryMask& g, double pm, std::mt19937_64& rng) {
  if (pm < 0.0 || pm > 1.0) throw StructuralError("bit_flip_mutation: pm must be in [0,1]");
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  BinaryMask out = g;
  for (auto& bit : out.bits()) {
    if (u01(rng) < pm) bit ^= 1;
  }
  return out;
}

namespace {

std::vector<double> active_values(const MaskCandidate& c, const ObjectiveSet& active) {
  std::vector<double> v(active.indices.size());
  for (std::size_t i = 0; i < active.indices.size(); ++i) v[i] = c.objectives[active.indices[i]];
  return v;
}

// Distance from a normalized point to the ray through the origin and a
// reference direction.
double perpendicular_distance(const std::vector<double>& point, const std::vector<double>& ref) {
  double ref_norm_sq = 0.0, dot = 0.0, point_norm_sq = 0.0;
  for (std::size_t i = 0; i < point.size(); ++i) {
    ref_norm_sq += ref[i] * ref[i];
    dot += point[i] * ref[i];
    point_norm_sq += point[i] * point[i];
  }
  double proj_sq = ref_norm_sq > 0.0 ? (dot * dot) / ref_norm_sq : 0.0;
  return std::sqrt(std::max(0.0, point_norm_sq - proj_sq));
}

// Selects z members from parents + offspring. Niching follows NSGA-III with
// deterministic tie-breaks; the feasible candidate with the best m1 in front 0
// is always retained so the incumbent confidence never regresses.
std::vector<MaskCandidate> environmental_selection(std::vector<MaskCandidate>& combined,
                                                   const ReferencePointSet& refs,
                                                   const ObjectiveSet& active, double theta,
                                                   int z) {
  const int n = static_cast<int>(combined.size());
  std::vector<std::vector<double>> objs(n);
  std::vector<double> viol(n);
  for (int i = 0; i < n; ++i) {
    objs[i] = active_values(combined[i], active);
    viol[i] = combined[i].violation(theta);
  }
  auto fronts = constrained_nondominated_sort(objs, active.senses, viol);

  std::vector<int> chosen;
  std::size_t fi = 0;
  while (fi < fronts.size() && chosen.size() + fronts[fi].size() <= static_cast<std::size_t>(z)) {
    chosen.insert(chosen.end(), fronts[fi].begin(), fronts[fi].end());
    ++fi;
  }
  if (chosen.size() < static_cast<std::size_t>(z) && fi < fronts.size()) {
    const std::vector<int>& boundary = fronts[fi];
    const int m = active.size();

    // Normalize in minimized form: ideal from the whole union, nadir from front 0.
    auto minimized = [&](int i, int j) {
      return active.senses[j] == Sense::Maximize ? -objs[i][j] : objs[i][j];
    };
    std::vector<double> ideal(m, std::numeric_limits<double>::infinity());
    std::vector<double> nadir(m, -std::numeric_limits<double>::infinity());
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < m; ++j) ideal[j] = std::min(ideal[j], minimized(i, j));
    }
    for (int i : fronts[0]) {
      for (int j = 0; j < m; ++j) nadir[j] = std::max(nadir[j], minimized(i, j));
    }
    std::vector<double> span(m);
    for (int j = 0; j < m; ++j) span[j] = std::max(nadir[j] - ideal[j], 1e-12);

    auto normalized = [&](int i) {
      std::vector<double> out(m);
      for (int j = 0; j < m; ++j) out[j] = (minimized(i, j) - ideal[j]) / span[j];
      return out;
    };

    // Associate the chosen members and the boundary with reference directions.
    std::vector<int> assoc(n, -1);
    std::vector<double> assoc_dist(n, 0.0);
    auto associate = [&](int i) {
      std::vector<double> p = normalized(i);
      int best_ref = 0;
      double best_dist = std::numeric_limits<double>::infinity();
      for (std::size_t r = 0; r < refs.points.size(); ++r) {
        double dist = perpendicular_distance(p, refs.points[r]);
        if (dist < best_dist) {
          best_dist = dist;
          best_ref = static_cast<int>(r);
        }
      }
      assoc[i] = best_ref;
      assoc_dist[i] = best_dist;
    };
    for (int i : chosen) associate(i);
    for (int i : boundary) associate(i);

    std::vector<int> niche_count(refs.points.size(), 0);
    for (int i : chosen) ++niche_count[assoc[i]];

    std::vector<char> taken(n, 0);
    int remaining = z - static_cast<int>(chosen.size());

    auto select_member = [&](int i) {
      chosen.push_back(i);
      taken[i] = 1;
      ++niche_count[assoc[i]];
      --remaining;
    };

    // Elitist guarantee: when the boundary is front 0, keep its feasible
    // best-m1 member before niching fills the rest.
    if (fi == 0 && remaining > 0) {
      int elite = -1;
      for (int i : boundary) {
        if (viol[i] > 0.0) continue;
        if (elite < 0 || combined[i].objectives[0] > combined[elite].objectives[0]) elite = i;
      }
      if (elite >= 0) select_member(elite);
    }

    while (remaining > 0) {
      // Least-crowded niche among those with available boundary members.
      int min_count = std::numeric_limits<int>::max();
      for (int i : boundary) {
        if (!taken[i]) min_count = std::min(min_count, niche_count[assoc[i]]);
      }
      // Among candidates in minimal-count niches: smallest perpendicular
      // distance, then lowest index.
      int pick = -1;
      for (int i : boundary) {
        if (taken[i] || niche_count[assoc[i]] != min_count) continue;
        if (pick < 0 || assoc_dist[i] < assoc_dist[pick]) pick = i;
      }
      select_member(pick);
    }
  }

  std::vector<MaskCandidate> next;
  next.reserve(chosen.size());
  for (int i : chosen) next.push_back(std::move(combined[i]));
  return next;
}

}  // namespace

EvolveResult nsga3_evolve(std::vector<MaskCandidate> population, const EvaluateFn& evaluate,
                          const ReferencePointSet& refs, const ObjectiveSet& active,
                          const EvolveParams& params, std::mt19937_64& rng,
                          const GenerationObserver& observer) {
  if (population.empty()) throw StructuralError("nsga3_evolve: empty initial population");
  if (params.generations < 1) throw StructuralError("nsga3_evolve: need at least 1 generation");
  if (refs.points.empty() || static_cast<int>(refs.points.front().size()) != active.size()) {
    throw StructuralError("nsga3_evolve: reference points must match the active objective count");
  }
  const int z = static_cast<int>(population.size());
  std::uniform_int_distribution<int> pick_parent(0, z - 1);
  std::uniform_real_distribution<double> u01(0.0, 1.0);

  if (observer) observer(0, population);

  for (int gen = 1; gen <= params.generations; ++gen) {
    std::vector<MaskCandidate> combined = population;
    combined.reserve(2 * z);
    while (static_cast<int>(combined.size()) < 2 * z) {
      const BinaryMask& p1 = population[pick_parent(rng)].genome;
      const BinaryMask& p2 = population[pick_parent(rng)].genome;
      BinaryMask c1 = p1, c2 = p2;
      if (u01(rng) < params.pc) {
        std::tie(c1, c2) = two_point_crossover(p1, p2, rng);
      }
      c1 = bit_flip_mutation(c1, params.pm, rng);
      c2 = bit_flip_mutation(c2, params.pm, rng);
      combined.push_back(evaluate(c1));
      if (static_cast<int>(combined.size()) < 2 * z) combined.push_back(evaluate(c2));
    }
    population = environmental_selection(combined, refs, active, params.theta, z);
    if (observer) observer(gen, population);
  }

  EvolveResult result;
  for (auto& cand : population) {
    if (!cand.feasible) continue;
    bool duplicate = false;
    for (const auto& kept : result.survivors) {
      if (kept.genome == cand.genome) {
        duplicate = true;
        break;
      }
    }
    if (duplicate) continue;
    result.confidence_sparsity.push_back({cand.objectives[0], cand.objectives[1]});
    result.survivors.push_back(std::move(cand));
  }
  return result;
}

}  // namespace confetti

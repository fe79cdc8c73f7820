#pragma once

#include <array>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "confetti/series.hpp"

namespace confetti {

// Uniformly spaced directions on the unit simplex (Das-Dennis construction).
struct ReferencePointSet {
  std::vector<std::vector<double>> points;
};

// All points with coordinates from {0, 1/p, ..., p/p} summing to 1, in
// ascending lexicographic order. |points| = C(p + m - 1, m - 1).
ReferencePointSet das_dennis(int m, int p);

enum class Sense { Minimize, Maximize };

// True when a is at least as good as b on every objective per its sense and
// strictly better on at least one.
bool dominates(const std::vector<double>& a, const std::vector<double>& b,
               const std::vector<Sense>& senses);

// Fronts of indices: front 0 is the non-dominated set, each subsequent front
// is non-dominated after removing earlier fronts. Within-front order is
// ascending original index.
std::vector<std::vector<int>> nondominated_sort(const std::vector<std::vector<double>>& objectives,
                                                const std::vector<Sense>& senses);

// Feasibility-first variant: a feasible candidate (violation 0) dominates any
// infeasible one; among infeasible candidates the smaller violation dominates;
// among feasible ones plain Pareto dominance applies.
std::vector<std::vector<int>> constrained_nondominated_sort(
    const std::vector<std::vector<double>>& objectives, const std::vector<Sense>& senses,
    const std::vector<double>& violations);

// Which entries of the (m1, m2, m3) triple take part in selection.
enum class ObjectiveMode { CO_PR, CO_SP, SP_PR, CO_SP_PR };

ObjectiveMode objective_mode_from_string(const std::string& name);
std::string to_string(ObjectiveMode mode);

struct ObjectiveSet {
  std::vector<int> indices;   // into the (m1, m2, m3) triple
  std::vector<Sense> senses;  // aligned with indices
  int size() const { return static_cast<int>(indices.size()); }
};

ObjectiveSet objective_set(ObjectiveMode mode);

// One genome with its decoded instance and objective triple
// (m1 = target confidence, m2 = normalized Hamming, m3 = proximity).
struct MaskCandidate {
  BinaryMask genome;
  std::array<double, 3> objectives;  // (m1, m2, m3)
  bool feasible;                     // m1 >= theta
  int pred_class;                    // argmax of the decoded prediction
  MtsInstance decoded;

  double violation(double theta) const {
    return objectives[0] >= theta ? 0.0 : theta - objectives[0];
  }
};

// z genomes of shape k x d, each cell an independent fair coin; the first
// genome is forced to all-ones so a full-substitution individual is always
// present.
std::vector<BinaryMask> binary_sampling(int k, int d, int z, std::mt19937_64& rng);

// Deterministic core: children swap the flattened segment [u, v).
std::pair<BinaryMask, BinaryMask> two_point_crossover_at(const BinaryMask& a, const BinaryMask& b,
                                                         int u, int v);

// Cut positions 0 <= u < v <= k*d drawn uniformly over distinct pairs.
std::pair<BinaryMask, BinaryMask> two_point_crossover(const BinaryMask& a, const BinaryMask& b,
                                                      std::mt19937_64& rng);

// Each bit flips independently with probability pm.
BinaryMask bit_flip_mutation(const BinaryMask& g, double pm, std::mt19937_64& rng);

struct EvolveParams {
  int generations;
  double pc;
  double pm;
  double theta;
};

struct EvolveResult {
  std::vector<MaskCandidate> survivors;                   // feasible, genome-deduplicated
  std::vector<std::array<double, 2>> confidence_sparsity; // (m1, m2) per survivor
};

using EvaluateFn = std::function<MaskCandidate(const BinaryMask&)>;
using GenerationObserver = std::function<void(int generation, const std::vector<MaskCandidate>&)>;

// NSGA-III generational loop over an evaluated initial population: offspring
// by random parent pairing, two-point crossover with probability pc and
// bit-flip mutation at rate pm; environmental selection by constrained
// non-dominated sorting with reference-point niching on the boundary front.
// Returns the feasible members of the final population, deduplicated by
// genome; an empty survivor list signals infeasibility at this window.
// Fully deterministic given the rng state.
EvolveResult nsga3_evolve(std::vector<MaskCandidate> initial, const EvaluateFn& evaluate,
                          const ReferencePointSet& refs, const ObjectiveSet& active,
                          const EvolveParams& params, std::mt19937_64& rng,
                          const GenerationObserver& observer = {});

}  // namespace confetti

#pragma once

#include <string>
#include <vector>

#include "confetti/series.hpp"

namespace confetti {

enum class DistanceKind { L1, L2, DTW };

DistanceKind distance_kind_from_string(const std::string& name);
std::string to_string(DistanceKind kind);

// Sum of absolute cell differences over all t*d cells.
double dist_l1(const MtsInstance& a, const MtsInstance& b);

// Euclidean distance over all t*d cells.
double dist_l2(const MtsInstance& a, const MtsInstance& b);

// Dependent multivariate DTW: the local cost between time steps i and j is
// the Euclidean distance between the two d-vectors; the result is the minimum
// accumulated cost over monotone warping paths with steps (1,0), (0,1), (1,1),
// full window (no band). Lengths may differ; channel counts must match.
double dist_dtw(const MtsInstance& a, const MtsInstance& b);

double distance(DistanceKind kind, const MtsInstance& a, const MtsInstance& b);

// Indices of the k pool entries nearest to the query, ascending by distance,
// ties broken by lower index.
std::vector<int> knn_indices(const MtsInstance& query, const std::vector<MtsInstance>& pool,
                             int k, DistanceKind kind);

}  // namespace confetti

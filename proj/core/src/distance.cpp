#include "confetti/distance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace confetti {

namespace {

void require_same_shape(const MtsInstance& a, const MtsInstance& b, const char* who) {
  if (!a.same_shape(b)) {
    throw StructuralError(std::string(who) + ": shapes differ (" + std::to_string(a.t()) + "x" +
                          std::to_string(a.d()) + " vs " + std::to_string(b.t()) + "x" +
                          std::to_string(b.d()) + ")");
  }
}

// Euclidean distance between the d-vectors at time steps i of a and j of b.
double step_cost(const MtsInstance& a, int i, const MtsInstance& b, int j) {
  double s = 0.0;
  for (int c = 0; c < a.d(); ++c) {
    double diff = a.at(i, c) - b.at(j, c);
    s += diff * diff;
  }
  return std::sqrt(s);
}

}  // namespace

DistanceKind distance_kind_from_string(const std::string& name) {
  if (name == "l1") return DistanceKind::L1;
  if (name == "l2") return DistanceKind::L2;
  if (name == "dtw") return DistanceKind::DTW;
  throw StructuralError("unknown distance kind '" + name + "' (expected l1, l2 or dtw)");
}

std::string to_string(DistanceKind kind) {
  switch (kind) {
    case DistanceKind::L1: return "l1";
    case DistanceKind::L2: return "l2";
    case DistanceKind::DTW: return "dtw";
  }
  return "l2";
}

double dist_l1(const MtsInstance& a, const MtsInstance& b) {
  require_same_shape(a, b, "dist_l1");
  double s = 0.0;
  const auto& av = a.values();
  const auto& bv = b.values();
  for (std::size_t i = 0; i < av.size(); ++i) s += std::abs(av[i] - bv[i]);
  return s;
}

double dist_l2(const MtsInstance& a, const MtsInstance& b) {
  require_same_shape(a, b, "dist_l2");
  double s = 0.0;
  const auto& av = a.values();
  const auto& bv = b.values();
  for (std::size_t i = 0; i < av.size(); ++i) {
    double diff = av[i] - bv[i];
    s += diff * diff;
  }
  return std::sqrt(s);
}

double dist_dtw(const MtsInstance& a, const MtsInstance& b) {
  if (a.d() != b.d()) {
    throw StructuralError("dist_dtw: channel counts differ (" + std::to_string(a.d()) + " vs " +
                          std::to_string(b.d()) + ")");
  }
  const int n = a.t();
  const int m = b.t();
  const double inf = std::numeric_limits<double>::infinity();

  // Two-row DP over the full (n x m) grid.
  std::vector<double> prev(m + 1, inf), curr(m + 1, inf);
  prev[0] = 0.0;
  for (int i = 1; i <= n; ++i) {
    curr[0] = inf;
    for (int j = 1; j <= m; ++j) {
      double best = std::min({prev[j], curr[j - 1], prev[j - 1]});
      curr[j] = step_cost(a, i - 1, b, j - 1) + best;
    }
    std::swap(prev, curr);
  }
  return prev[m];
}

double distance(DistanceKind kind, const MtsInstance& a, const MtsInstance& b) {
  switch (kind) {
    case DistanceKind::L1: return dist_l1(a, b);
    case DistanceKind::L2: return dist_l2(a, b);
    case DistanceKind::DTW: return dist_dtw(a, b);
  }
  return dist_l2(a, b);
}

std::vector<int> knn_indices(const MtsInstance& query, const std::vector<MtsInstance>& pool,
                             int k, DistanceKind kind) {
  if (pool.empty()) throw StructuralError("knn_indices: empty pool");
  if (k <= 0) throw StructuralError("knn_indices: k must be positive");
  if (k > static_cast<int>(pool.size())) {
    throw StructuralError("knn_indices: k=" + std::to_string(k) + " exceeds pool size " +
                          std::to_string(pool.size()));
  }
  std::vector<std::pair<double, int>> ranked(pool.size());
  for (std::size_t i = 0; i < pool.size(); ++i) {
    ranked[i] = {distance(kind, query, pool[i]), static_cast<int>(i)};
  }
  std::sort(ranked.begin(), ranked.end());
  std::vector<int> out(k);
  for (int i = 0; i < k; ++i) out[i] = ranked[i].second;
  return out;
}

}  // namespace confetti

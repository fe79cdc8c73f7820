#pragma once

#include <optional>

#include "confetti/classifier.hpp"
#include "confetti/distance.hpp"
#include "confetti/series.hpp"

namespace confetti {

struct NunResult {
  MtsInstance nun;
  int nun_index;     // position in the reference set
  int target_class;  // the NUN's own predicted class c
  double confidence; // P(f(nun) = c), >= theta
  double distance;   // distance to the query under the chosen kind
};

// Nearest unlike neighbor: among reference instances whose predicted class
// differs from the query's and whose confidence in their own predicted class
// is at least theta, returns the one closest to the query (ties toward the
// lower reference index). Filtering uses predicted labels, not stored ones.
// Returns nullopt when the filtered set is empty.
std::optional<NunResult> find_nun(const Classifier& classifier, const MtsInstance& query,
                                  const LabeledDataset& reference, double theta,
                                  DistanceKind kind);

}  // namespace confetti

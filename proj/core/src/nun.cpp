#include "confetti/nun.hpp"

namespace confetti {

std::optional<NunResult> find_nun(const Classifier& classifier, const MtsInstance& query,
                                  const LabeledDataset& reference, double theta,
                                  DistanceKind kind) {
  if (reference.empty()) throw StructuralError("find_nun: empty reference set");
  if (theta < 0.0 || theta > 1.0) throw StructuralError("find_nun: theta must be in [0,1]");

  const int query_class = classifier.predict(query);

  // Filter first, then scan distances over the retained candidates only.
  std::optional<NunResult> best;
  for (int i = 0; i < reference.size(); ++i) {
    const MtsInstance& r = reference.instances[i];
    ProbabilityVector proba = classifier.predict_proba(r);
    int pred = proba.argmax();
    if (pred == query_class) continue;
    double confidence = proba.probs[pred];
    if (confidence < theta) continue;
    double dist = distance(kind, query, r);
    if (!best || dist < best->distance) {
      best = NunResult{r, i, pred, confidence, dist};
    }
  }
  return best;
}

}  // namespace confetti

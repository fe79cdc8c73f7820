#include "confetti/subsequence.hpp"

namespace confetti {

Subsequence find_subsequence(const FeatureWeights& weights, int ell) {
  const int t = weights.length();
  if (ell < 2 || ell > t) {
    throw StructuralError("find_subsequence: ell=" + std::to_string(ell) +
                          " out of range [2, " + std::to_string(t) + "]");
  }
  double curr = 0.0;
  for (int i = 0; i < ell; ++i) curr += weights.at(i);
  double best = curr;
  int start = 0;
  for (int i = 1; i + ell <= t; ++i) {
    curr = curr - weights.at(i - 1) + weights.at(i + ell - 1);
    if (curr > best) {  // strict: earliest maximal window wins
      best = curr;
      start = i;
    }
  }
  return Subsequence(start, start + ell - 1);
}

NaiveResult naive_stage(const Classifier& classifier, const MtsInstance& query,
                        const NunResult& nun, const FeatureWeights& nun_weights, double theta) {
  if (!query.same_shape(nun.nun)) {
    throw StructuralError("naive_stage: query and NUN shapes differ");
  }
  if (nun_weights.length() != query.t()) {
    throw StructuralError("naive_stage: weight vector length " +
                          std::to_string(nun_weights.length()) + " != t=" +
                          std::to_string(query.t()));
  }
  const int t = query.t();
  const int d = query.d();
  for (int ell = 2; ell <= t; ++ell) {
    Subsequence window = find_subsequence(nun_weights, ell);
    MtsInstance c0 = substitute_window(query, nun.nun, window, BinaryMask::ones(ell, d));
    double confidence = classifier.predict_proba(c0).probs[nun.target_class];
    if (confidence >= theta || ell == t) {
      return NaiveResult{std::move(c0), window, ell, confidence};
    }
  }
  // Unreachable: the ell == t iteration always returns.
  throw StructuralError("naive_stage: no window satisfied the threshold");
}

}  // namespace confetti

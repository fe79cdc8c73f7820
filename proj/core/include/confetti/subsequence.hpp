#pragma once

#include "confetti/classifier.hpp"
#include "confetti/nun.hpp"
#include "confetti/series.hpp"

namespace confetti {

// Most influential window of length ell: the contiguous segment with the
// largest weight sum, found by a sliding O(t) scan. Strict improvement keeps
// the earliest start on ties. Weights may be negative. ell must be in [2, t]
// (a window of length 1 is not a valid Subsequence).
Subsequence find_subsequence(const FeatureWeights& weights, int ell);

struct NaiveResult {
  MtsInstance c0;
  Subsequence window;
  int length;         // ell = window length
  double confidence;  // P(f(c0) = target), >= theta
};

// Naive stage: starting at ell = 2, substitutes the donor's max-weight window
// wholesale into the query and grows ell by one until the classifier's
// confidence in the target class reaches theta. Terminates at ell = t at the
// latest, where c0 equals the NUN cell-wise and the NUN filter already
// guaranteed confidence >= theta.
NaiveResult naive_stage(const Classifier& classifier, const MtsInstance& query,
                        const NunResult& nun, const FeatureWeights& nun_weights, double theta);

}  // namespace confetti

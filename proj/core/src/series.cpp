#include "confetti/series.hpp"

#include <cmath>
#include <numeric>

namespace confetti {

MtsInstance::MtsInstance(std::string id, int t, int d, std::vector<double> values)
    : id_(std::move(id)), t_(t), d_(d), values_(std::move(values)) {
  if (t_ < 1 || d_ < 1) {
    throw StructuralError("MtsInstance '" + id_ + "': t and d must be >= 1, got t=" +
                          std::to_string(t_) + " d=" + std::to_string(d_));
  }
  if (values_.size() != static_cast<std::size_t>(t_) * d_) {
    throw StructuralError("MtsInstance '" + id_ + "': expected " + std::to_string(t_ * d_) +
                          " values, got " + std::to_string(values_.size()));
  }
  for (double v : values_) {
    if (!std::isfinite(v)) {
      throw StructuralError("MtsInstance '" + id_ + "': non-finite value");
    }
  }
}

bool values_equal(const MtsInstance& a, const MtsInstance& b) {
  return a.same_shape(b) && a.values() == b.values();
}

Subsequence::Subsequence(int start, int end) : start_(start), end_(end) {
  if (start_ < 0 || end_ <= start_) {
    throw StructuralError("Subsequence: need 0 <= start < end, got [" + std::to_string(start_) +
                          ", " + std::to_string(end_) + "]");
  }
}

FeatureWeights::FeatureWeights(std::vector<double> weights) : weights_(std::move(weights)) {
  if (weights_.empty()) throw StructuralError("FeatureWeights: empty vector");
  for (double w : weights_) {
    if (!std::isfinite(w)) throw StructuralError("FeatureWeights: non-finite entry");
  }
}

int LabeledDataset::t() const {
  if (instances.empty()) throw StructuralError("LabeledDataset: empty dataset has no shape");
  return instances.front().t();
}

int LabeledDataset::d() const {
  if (instances.empty()) throw StructuralError("LabeledDataset: empty dataset has no shape");
  return instances.front().d();
}

void LabeledDataset::validate() const {
  if (labels.size() != instances.size()) {
    throw StructuralError("LabeledDataset: " + std::to_string(instances.size()) + " instances vs " +
                          std::to_string(labels.size()) + " labels");
  }
  if (n_classes < 1) throw StructuralError("LabeledDataset: n_classes must be >= 1");
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < 0 || labels[i] >= n_classes) {
      throw StructuralError("LabeledDataset: label " + std::to_string(labels[i]) +
                            " out of range at instance " + std::to_string(i));
    }
  }
  for (const auto& inst : instances) {
    if (!inst.same_shape(instances.front())) {
      throw StructuralError("LabeledDataset: instance '" + inst.id() + "' has shape " +
                            std::to_string(inst.t()) + "x" + std::to_string(inst.d()) +
                            ", dataset shape is " + std::to_string(t()) + "x" + std::to_string(d()));
    }
  }
  if (!instances.empty()) {
    for (const auto& [id, w] : weights) {
      if (w.length() != t()) {
        throw StructuralError("LabeledDataset: weight vector for '" + id + "' has length " +
                              std::to_string(w.length()) + ", expected t=" + std::to_string(t()));
      }
    }
  }
}

BinaryMask::BinaryMask(int rows, int cols) : rows_(rows), cols_(cols) {
  if (rows_ < 1 || cols_ < 1) {
    throw StructuralError("BinaryMask: rows and cols must be >= 1");
  }
  bits_.assign(static_cast<std::size_t>(rows_) * cols_, 0);
}

BinaryMask BinaryMask::ones(int rows, int cols) {
  BinaryMask m(rows, cols);
  std::fill(m.bits_.begin(), m.bits_.end(), std::uint8_t{1});
  return m;
}

std::size_t BinaryMask::popcount() const {
  return std::accumulate(bits_.begin(), bits_.end(), std::size_t{0});
}

MtsInstance substitute_window(const MtsInstance& base, const MtsInstance& donor,
                              const Subsequence& window, const BinaryMask& mask) {
  if (!base.same_shape(donor)) {
    throw StructuralError("substitute_window: base is " + std::to_string(base.t()) + "x" +
                          std::to_string(base.d()) + ", donor is " + std::to_string(donor.t()) +
                          "x" + std::to_string(donor.d()));
  }
  if (window.end() >= base.t()) {
    throw StructuralError("substitute_window: window [" + std::to_string(window.start()) + ", " +
                          std::to_string(window.end()) + "] exceeds t=" + std::to_string(base.t()));
  }
  if (mask.rows() != window.length() || mask.cols() != base.d()) {
    throw StructuralError("substitute_window: mask is " + std::to_string(mask.rows()) + "x" +
                          std::to_string(mask.cols()) + ", window needs " +
                          std::to_string(window.length()) + "x" + std::to_string(base.d()));
  }
  std::vector<double> out = base.values();
  for (int r = 0; r < mask.rows(); ++r) {
    for (int c = 0; c < mask.cols(); ++c) {
      if (mask.at(r, c)) {
        out[static_cast<std::size_t>(window.start() + r) * base.d() + c] = donor.at(window.start() + r, c);
      }
    }
  }
  return MtsInstance(base.id(), base.t(), base.d(), std::move(out));
}

std::size_t hamming(const MtsInstance& a, const MtsInstance& b) {
  if (!a.same_shape(b)) {
    throw StructuralError("hamming: shapes differ (" + std::to_string(a.t()) + "x" +
                          std::to_string(a.d()) + " vs " + std::to_string(b.t()) + "x" +
                          std::to_string(b.d()) + ")");
  }
  std::size_t count = 0;
  const auto& av = a.values();
  const auto& bv = b.values();
  for (std::size_t i = 0; i < av.size(); ++i) {
    if (av[i] != bv[i]) ++count;
  }
  return count;
}

}  // namespace confetti

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace confetti {

// Shape mismatches, invalid indices, and bad construction arguments.
class StructuralError : public std::runtime_error {
 public:
  explicit StructuralError(const std::string& what) : std::runtime_error(what) {}
};

// One multivariate time series: t time steps by d channels, stored row-major
// (time-major). Immutable after construction; every entry must be finite.
class MtsInstance {
 public:
  MtsInstance(std::string id, int t, int d, std::vector<double> values);

  int t() const { return t_; }
  int d() const { return d_; }
  const std::string& id() const { return id_; }
  const std::vector<double>& values() const { return values_; }

  double at(int time, int channel) const { return values_[static_cast<std::size_t>(time) * d_ + channel]; }

  bool same_shape(const MtsInstance& other) const { return t_ == other.t_ && d_ == other.d_; }

  // Full equality: id, shape and cell-exact values.
  bool operator==(const MtsInstance& other) const {
    return id_ == other.id_ && same_shape(other) && values_ == other.values_;
  }

 private:
  std::string id_;
  int t_;
  int d_;
  std::vector<double> values_;
};

// Cell-exact value equality, ignoring ids.
bool values_equal(const MtsInstance& a, const MtsInstance& b);

// Contiguous time window [start, end], both inclusive. Windows shorter than
// two steps are rejected at construction.
class Subsequence {
 public:
  Subsequence(int start, int end);

  int start() const { return start_; }
  int end() const { return end_; }
  int length() const { return end_ - start_ + 1; }

  bool operator==(const Subsequence& other) const {
    return start_ == other.start_ && end_ == other.end_;
  }

 private:
  int start_;
  int end_;
};

// Per-time-step importance weights (already averaged across channels).
// Entries may be negative; all must be finite.
class FeatureWeights {
 public:
  explicit FeatureWeights(std::vector<double> weights);

  int length() const { return static_cast<int>(weights_.size()); }
  double at(int i) const { return weights_[i]; }
  const std::vector<double>& values() const { return weights_; }

 private:
  std::vector<double> weights_;
};

// A collection of same-shaped instances with integer class labels and
// optional per-instance feature weights keyed by instance id.
struct LabeledDataset {
  std::vector<MtsInstance> instances;
  std::vector<int> labels;
  std::map<std::string, FeatureWeights> weights;
  int n_classes = 0;

  int size() const { return static_cast<int>(instances.size()); }
  bool empty() const { return instances.empty(); }
  int t() const;
  int d() const;

  // Throws StructuralError on any invariant violation (sizes, label range,
  // shape uniformity, weight vector lengths).
  void validate() const;
};

// Binary substitution mask over a window: rows = window length, cols = channels.
class BinaryMask {
 public:
  BinaryMask(int rows, int cols);  // all zeros
  static BinaryMask ones(int rows, int cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::uint8_t at(int r, int c) const { return bits_[static_cast<std::size_t>(r) * cols_ + c]; }
  void set(int r, int c, bool v) { bits_[static_cast<std::size_t>(r) * cols_ + c] = v ? 1 : 0; }
  void flip(int r, int c) { bits_[static_cast<std::size_t>(r) * cols_ + c] ^= 1; }

  std::size_t popcount() const;
  const std::vector<std::uint8_t>& bits() const { return bits_; }
  std::vector<std::uint8_t>& bits() { return bits_; }

  bool operator==(const BinaryMask& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ && bits_ == other.bits_;
  }

 private:
  int rows_;
  int cols_;
  std::vector<std::uint8_t> bits_;
};

// Copies donor values into base for every masked cell inside the window;
// all other cells keep base's values bit-for-bit. Returns a new instance
// carrying base's id.
MtsInstance substitute_window(const MtsInstance& base, const MtsInstance& donor,
                              const Subsequence& window, const BinaryMask& mask);

// Number of cells whose stored values differ exactly. No epsilon: substitution
// copies values verbatim, so changed cells differ exactly.
std::size_t hamming(const MtsInstance& a, const MtsInstance& b);

}  // namespace confetti

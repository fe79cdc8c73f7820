#pragma once

#include <istream>
#include <map>
#include <stdexcept>
#include <string>

#include "confetti/series.hpp"

namespace confetti {

// Parse failure with the 1-based input line it was detected on (0 = whole file).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

struct TsHeader {
  std::string problem_name;
  int dimensions = 0;
  int series_length = 0;
  std::vector<std::string> class_labels;
  bool equal_length = true;
};

// Reads the sktime `.ts` text format: `@`-prefixed header directives, then
// `@data`, then one record per line with `:`-separated channels of
// comma-separated values and a trailing class label. `#` lines are comments.
// Only equal-length, non-timestamped datasets are accepted. Class labels map
// to dense integers in header declaration order; instance ids are the record
// indices "0", "1", ...
//
// Rejected inputs (each a distinct, line-numbered ParseError):
//   missing @data / ragged channel length / unknown class label /
//   non-numeric value / equalLength=false / timeStamps=true / channel count
LabeledDataset parse_ts(std::istream& in);

// Writes a dataset back in `.ts` form with class labels "c0".."c{k-1}".
// parse_ts(serialize_ts(ds)) reproduces instances, labels and n_classes for
// datasets whose ids follow the parser's "0","1",... convention.
std::string serialize_ts(const LabeledDataset& ds, const std::string& problem_name);

// Simple CSV: each row is `id,label,v0,...,v{t*d-1}` with values time-major.
LabeledDataset parse_csv(std::istream& in, int t, int d);
std::string serialize_csv(const LabeledDataset& ds);

// Weights file: each row is `id,w0,...,w{t-1}`. Duplicate ids are errors.
std::map<std::string, FeatureWeights> parse_weights(std::istream& in, int t);
std::string serialize_weights(const std::map<std::string, FeatureWeights>& weights);

// File helpers; dispatch on extension is left to callers.
LabeledDataset load_ts_file(const std::string& path);
LabeledDataset load_csv_file(const std::string& path, int t, int d);
std::map<std::string, FeatureWeights> load_weights_file(const std::string& path, int t);

}  // namespace confetti

#include "confetti/ts_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace confetti {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::vector<std::string> split(const std::string& s, char delim) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream ss(s);
  while (std::getline(ss, item, delim)) out.push_back(item);
  if (!s.empty() && s.back() == delim) out.push_back("");
  return out;
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream ss(s);
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

double parse_double(const std::string& tok, int line) {
  std::string t = trim(tok);
  if (t.empty()) throw ParseError("non-numeric value: empty field", line);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc{} || ptr != t.data() + t.size()) {
    throw ParseError("non-numeric value '" + t + "'", line);
  }
  return v;
}

long parse_long(const std::string& tok, int line, const char* what) {
  std::string t = trim(tok);
  long v = 0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc{} || ptr != t.data() + t.size()) {
    throw ParseError(std::string("expected integer for ") + what + ", got '" + t + "'", line);
  }
  return v;
}

bool parse_bool(const std::string& tok, int line, const char* what) {
  std::string t = lower(trim(tok));
  if (t == "true") return true;
  if (t == "false") return false;
  throw ParseError(std::string("expected true/false for ") + what + ", got '" + tok + "'", line);
}

// Shortest round-trip representation.
std::string fmt_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

}  // namespace

LabeledDataset parse_ts(std::istream& in) {
  TsHeader header;
  bool saw_dimensions = false, saw_length = false, saw_labels = false, saw_data = false;
  bool univariate = false, saw_univariate = false;

  std::string raw;
  int lineno = 0;
  LabeledDataset ds;

  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;

    if (!saw_data) {
      if (line[0] != '@') {
        throw ParseError("record before @data", lineno);
      }
      auto tokens = split_ws(line);
      std::string key = lower(tokens[0]);
      if (key == "@data") {
        saw_data = true;
        if (!saw_length) throw ParseError("missing @seriesLength directive", lineno);
        if (!saw_dimensions && !saw_univariate) {
          throw ParseError("missing @dimensions or @univariate directive", lineno);
        }
        if (!saw_dimensions) header.dimensions = univariate ? 1 : 0;
        if (header.dimensions < 1) throw ParseError("dimensions must be >= 1", lineno);
        if (!saw_labels || header.class_labels.empty()) {
          throw ParseError("missing @classLabel directive with a label list", lineno);
        }
        ds.n_classes = static_cast<int>(header.class_labels.size());
        continue;
      }
      if (tokens.size() < 2 && key != "@data") {
        throw ParseError("directive '" + tokens[0] + "' has no value", lineno);
      }
      if (key == "@problemname") {
        header.problem_name = tokens[1];
      } else if (key == "@dimensions" || key == "@dimension") {
        header.dimensions = static_cast<int>(parse_long(tokens[1], lineno, "@dimensions"));
        saw_dimensions = true;
      } else if (key == "@univariate") {
        univariate = parse_bool(tokens[1], lineno, "@univariate");
        saw_univariate = true;
      } else if (key == "@serieslength") {
        header.series_length = static_cast<int>(parse_long(tokens[1], lineno, "@seriesLength"));
        if (header.series_length < 1) throw ParseError("seriesLength must be >= 1", lineno);
        saw_length = true;
      } else if (key == "@equallength") {
        header.equal_length = parse_bool(tokens[1], lineno, "@equalLength");
        if (!header.equal_length) {
          throw ParseError("equalLength=false unsupported: only equal-length datasets are accepted", lineno);
        }
      } else if (key == "@timestamps") {
        if (parse_bool(tokens[1], lineno, "@timeStamps")) {
          throw ParseError("timestamped .ts unsupported (timeStamps=true)", lineno);
        }
      } else if (key == "@classlabel") {
        if (!parse_bool(tokens[1], lineno, "@classLabel")) {
          throw ParseError("classLabel=false unsupported: class labels are required", lineno);
        }
        header.class_labels.assign(tokens.begin() + 2, tokens.end());
        saw_labels = true;
      }
      // Unknown directives (e.g. @missing) are tolerated.
      continue;
    }

    // Record line: channel:channel:...:label
    auto fields = split(line, ':');
    if (static_cast<int>(fields.size()) != header.dimensions + 1) {
      throw ParseError("channel count mismatch: expected " + std::to_string(header.dimensions) +
                           " channels plus label, got " + std::to_string(fields.size()) + " fields",
                       lineno);
    }
    std::string label_str = trim(fields.back());
    auto it = std::find(header.class_labels.begin(), header.class_labels.end(), label_str);
    if (it == header.class_labels.end()) {
      throw ParseError("unknown class label '" + label_str + "'", lineno);
    }
    int label = static_cast<int>(it - header.class_labels.begin());

    const int t = header.series_length;
    const int d = header.dimensions;
    std::vector<double> values(static_cast<std::size_t>(t) * d);
    for (int c = 0; c < d; ++c) {
      auto cells = split(fields[c], ',');
      if (static_cast<int>(cells.size()) != t) {
        throw ParseError("ragged channel length: channel " + std::to_string(c) + " has " +
                             std::to_string(cells.size()) + " values, expected " + std::to_string(t),
                         lineno);
      }
      for (int i = 0; i < t; ++i) {
        values[static_cast<std::size_t>(i) * d + c] = parse_double(cells[i], lineno);
      }
    }
    std::string id = std::to_string(ds.instances.size());
    ds.instances.emplace_back(id, t, d, std::move(values));
    ds.labels.push_back(label);
  }

  if (!saw_data) throw ParseError("missing @data section", lineno);
  ds.validate();
  return ds;
}

std::string serialize_ts(const LabeledDataset& ds, const std::string& problem_name) {
  ds.validate();
  if (ds.empty()) throw StructuralError("serialize_ts: empty dataset");
  std::ostringstream out;
  out << "@problemName " << problem_name << "\n";
  out << "@timeStamps false\n";
  out << "@univariate " << (ds.d() == 1 ? "true" : "false") << "\n";
  out << "@dimensions " << ds.d() << "\n";
  out << "@equalLength true\n";
  out << "@seriesLength " << ds.t() << "\n";
  out << "@classLabel true";
  for (int c = 0; c < ds.n_classes; ++c) out << " c" << c;
  out << "\n@data\n";
  for (int i = 0; i < ds.size(); ++i) {
    const auto& inst = ds.instances[i];
    for (int c = 0; c < ds.d(); ++c) {
      if (c > 0) out << ':';
      for (int s = 0; s < ds.t(); ++s) {
        if (s > 0) out << ',';
        out << fmt_double(inst.at(s, c));
      }
    }
    out << ":c" << ds.labels[i] << "\n";
  }
  return out.str();
}

LabeledDataset parse_csv(std::istream& in, int t, int d) {
  if (t < 1 || d < 1) throw StructuralError("parse_csv: t and d must be >= 1");
  LabeledDataset ds;
  int max_label = -1;
  std::string raw;
  int lineno = 0;
  const int expected = 2 + t * d;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    auto fields = split(line, ',');
    if (static_cast<int>(fields.size()) != expected) {
      throw ParseError("field count mismatch: expected " + std::to_string(expected) + ", got " +
                           std::to_string(fields.size()),
                       lineno);
    }
    std::string id = trim(fields[0]);
    int label = static_cast<int>(parse_long(fields[1], lineno, "label"));
    if (label < 0) throw ParseError("negative class label", lineno);
    std::vector<double> values(static_cast<std::size_t>(t) * d);
    for (int i = 0; i < t * d; ++i) values[i] = parse_double(fields[2 + i], lineno);
    ds.instances.emplace_back(id, t, d, std::move(values));
    ds.labels.push_back(label);
    max_label = std::max(max_label, label);
  }
  ds.n_classes = max_label + 1;
  if (ds.empty()) throw ParseError("missing data: no records", lineno);
  ds.validate();
  return ds;
}

std::string serialize_csv(const LabeledDataset& ds) {
  ds.validate();
  std::ostringstream out;
  for (int i = 0; i < ds.size(); ++i) {
    const auto& inst = ds.instances[i];
    out << inst.id() << ',' << ds.labels[i];
    for (double v : inst.values()) out << ',' << fmt_double(v);
    out << "\n";
  }
  return out.str();
}

std::map<std::string, FeatureWeights> parse_weights(std::istream& in, int t) {
  if (t < 1) throw StructuralError("parse_weights: t must be >= 1");
  std::map<std::string, FeatureWeights> out;
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    auto fields = split(line, ',');
    if (static_cast<int>(fields.size()) != t + 1) {
      throw ParseError("wrong length: expected id plus " + std::to_string(t) + " weights, got " +
                           std::to_string(fields.size() - 1),
                       lineno);
    }
    std::string id = trim(fields[0]);
    if (out.count(id)) throw ParseError("duplicate id '" + id + "'", lineno);
    std::vector<double> w(t);
    for (int i = 0; i < t; ++i) w[i] = parse_double(fields[1 + i], lineno);
    out.emplace(id, FeatureWeights(std::move(w)));
  }
  return out;
}

std::string serialize_weights(const std::map<std::string, FeatureWeights>& weights) {
  std::ostringstream out;
  for (const auto& [id, w] : weights) {
    out << id;
    for (double v : w.values()) out << ',' << fmt_double(v);
    out << "\n";
  }
  return out.str();
}

namespace {
std::ifstream open_or_throw(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw StructuralError("cannot open file '" + path + "'");
  return f;
}
}  // namespace

LabeledDataset load_ts_file(const std::string& path) {
  auto f = open_or_throw(path);
  return parse_ts(f);
}

LabeledDataset load_csv_file(const std::string& path, int t, int d) {
  auto f = open_or_throw(path);
  return parse_csv(f, t, d);
}

std::map<std::string, FeatureWeights> load_weights_file(const std::string& path, int t) {
  auto f = open_or_throw(path);
  return parse_weights(f, t);
}

}  // namespace confetti

// Copyright 2026 The mixsel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mixsel/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "mixsel/rng.hpp"

namespace mixsel {

DataShape DataShape::Flat(int dim) {
  if (dim < 1) {
    throw std::invalid_argument("DataShape::Flat: dim must be >= 1");
  }
  DataShape s;
  s.kind = Kind::kFlat;
  s.width = dim;  // flat: dim stored in width, height/channels unused
  s.height = 1;
  s.channels = 1;
  return s;
}

DataShape DataShape::Grid(int height, int width, int channels) {
  if (height < 1 || width < 1 || channels < 1) {
    throw std::invalid_argument("DataShape::Grid: dims must be >= 1");
  }
  DataShape s;
  s.kind = Kind::kGrid;
  s.height = height;
  s.width = width;
  s.channels = channels;
  return s;
}

int DataShape::dim() const { return height * width * channels; }

LabeledDataset::LabeledDataset(Eigen::MatrixXd features,
                               std::vector<int> labels, int num_classes,
                               DataShape shape)
    : features_(std::move(features)),
      labels_(std::move(labels)),
      num_classes_(num_classes),
      shape_(shape) {
  const int n = static_cast<int>(features_.rows());
  if (num_classes_ < 1) {
    throw std::invalid_argument("LabeledDataset: num_classes must be >= 1");
  }
  if (static_cast<int>(labels_.size()) != n) {
    throw std::invalid_argument("LabeledDataset: labels/features size mismatch");
  }
  if (shape_.dim() != static_cast<int>(features_.cols())) {
    throw std::invalid_argument(
        "LabeledDataset: shape dim does not match feature columns");
  }
  class_indices_.assign(static_cast<std::size_t>(num_classes_), {});
  for (int i = 0; i < n; ++i) {
    const int y = labels_[static_cast<std::size_t>(i)];
    if (y < 0 || y >= num_classes_) {
      throw std::invalid_argument("LabeledDataset: label " + std::to_string(y) +
                                  " out of range [0, " +
                                  std::to_string(num_classes_) + ")");
    }
    class_indices_[static_cast<std::size_t>(y)].push_back(i);
  }
  for (int c = 0; c < num_classes_; ++c) {
    if (class_indices_[static_cast<std::size_t>(c)].empty()) {
      throw std::invalid_argument("LabeledDataset: class " + std::to_string(c) +
                                  " has no samples");
    }
  }
}

namespace {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

[[noreturn]] void parse_fail(const std::string& path, int line_no,
                             const std::string& what) {
  throw std::runtime_error(path + ":" + std::to_string(line_no) + ": " + what);
}

// Parses "KEY=<int>" tokens from the header line.
bool header_value(const std::string& header, const std::string& key, int* out) {
  std::istringstream iss(header);
  std::string tok;
  while (iss >> tok) {
    if (tok.rfind(key + "=", 0) == 0) {
      try {
        *out = std::stoi(tok.substr(key.size() + 1));
      } catch (const std::exception&) {
        return false;
      }
      return true;
    }
  }
  return false;
}

}  // namespace

LabeledDataset load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("load_csv: cannot open " + path);
  }
  std::string header;
  if (!std::getline(in, header) || header.empty() || header[0] != '#') {
    parse_fail(path, 1, "missing '# D=<d> M=<m>' header");
  }
  int d = 0, m = 0;
  if (!header_value(header, "D", &d) || !header_value(header, "M", &m)) {
    parse_fail(path, 1, "header must declare D and M");
  }
  if (d < 1 || m < 1) {
    parse_fail(path, 1, "D and M must be >= 1");
  }
  DataShape shape = DataShape::Flat(d);
  int h = 0, w = 0, ch = 0;
  if (header_value(header, "H", &h)) {
    if (!header_value(header, "W", &w) || !header_value(header, "CH", &ch)) {
      parse_fail(path, 1, "grid header needs H, W and CH");
    }
    shape = DataShape::Grid(h, w, ch);
    if (shape.dim() != d) {
      parse_fail(path, 1, "D must equal H*W*CH");
    }
  }

  std::vector<double> values;
  std::vector<int> labels;
  std::string line;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) {
      continue;
    }
    std::istringstream iss(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(iss, field, ',')) {
      fields.push_back(field);
    }
    if (static_cast<int>(fields.size()) != d + 1) {
      parse_fail(path, line_no,
                 "expected " + std::to_string(d + 1) + " fields, got " +
                     std::to_string(fields.size()));
    }
    for (int j = 0; j < d; ++j) {
      std::size_t pos = 0;
      double v = 0.0;
      try {
        v = std::stod(fields[static_cast<std::size_t>(j)], &pos);
      } catch (const std::exception&) {
        parse_fail(path, line_no, "bad numeric field " + std::to_string(j + 1));
      }
      if (pos != fields[static_cast<std::size_t>(j)].size()) {
        parse_fail(path, line_no, "bad numeric field " + std::to_string(j + 1));
      }
      values.push_back(v);
    }
    int y = 0;
    try {
      std::size_t pos = 0;
      y = std::stoi(fields.back(), &pos);
      if (pos != fields.back().size()) {
        throw std::invalid_argument("trailing characters");
      }
    } catch (const std::exception&) {
      parse_fail(path, line_no, "bad label field");
    }
    if (y < 0 || y >= m) {
      parse_fail(path, line_no, "label out of range at line " +
                                    std::to_string(line_no) + " (label " +
                                    std::to_string(y) + ", M=" +
                                    std::to_string(m) + ")");
    }
    labels.push_back(y);
  }
  const int n = static_cast<int>(labels.size());
  if (n == 0) {
    parse_fail(path, line_no, "no data rows");
  }
  Eigen::MatrixXd features(n, d);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < d; ++j) {
      features(i, j) = values[static_cast<std::size_t>(i) *
                                  static_cast<std::size_t>(d) +
                              static_cast<std::size_t>(j)];
    }
  }
  try {
    return LabeledDataset(std::move(features), std::move(labels), m, shape);
  } catch (const std::invalid_argument& e) {
    // e.g. an empty class: report as a parse error of this file
    throw std::runtime_error(path + ": " + e.what());
  }
}

void save_csv(const LabeledDataset& ds, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("save_csv: cannot open " + path);
  }
  out << "# D=" << ds.dim() << " M=" << ds.num_classes();
  if (ds.shape().is_grid()) {
    out << " H=" << ds.shape().height << " W=" << ds.shape().width
        << " CH=" << ds.shape().channels;
  }
  out << "\n";
  for (int i = 0; i < ds.num_samples(); ++i) {
    for (int j = 0; j < ds.dim(); ++j) {
      out << format_double(ds.features()(i, j)) << ",";
    }
    out << ds.label(i) << "\n";
  }
  if (!out) {
    throw std::runtime_error("save_csv: write failed for " + path);
  }
}

LabeledDataset generate_blobs(int num_classes, int dim, int per_class,
                              double spread, std::uint64_t seed) {
  if (num_classes < 2) {
    throw std::invalid_argument("generate_blobs: need at least 2 classes");
  }
  if (dim < 2) {
    throw std::invalid_argument("generate_blobs: need dim >= 2");
  }
  if (per_class < 1) {
    throw std::invalid_argument("generate_blobs: per_class must be >= 1");
  }
  if (spread < 0.0) {
    throw std::invalid_argument("generate_blobs: spread must be >= 0");
  }
  constexpr double kScale = 2.0;
  Eigen::MatrixXd means = Eigen::MatrixXd::Zero(num_classes, dim);
  if (num_classes <= dim) {
    for (int c = 0; c < num_classes; ++c) {
      means(c, c) = kScale;  // simplex corners
    }
  } else {
    for (int c = 0; c < num_classes; ++c) {
      const double angle =
          2.0 * std::numbers::pi * static_cast<double>(c) / num_classes;
      means(c, 0) = kScale * std::cos(angle);
      means(c, 1) = kScale * std::sin(angle);
    }
  }

  const int n = num_classes * per_class;
  Eigen::MatrixXd features(n, dim);
  std::vector<int> labels(static_cast<std::size_t>(n));
  Rng rng(substream_seed(seed, "blobs"));
  int row = 0;
  for (int c = 0; c < num_classes; ++c) {
    for (int k = 0; k < per_class; ++k) {
      for (int j = 0; j < dim; ++j) {
        features(row, j) = means(c, j) + spread * rng.normal();
      }
      labels[static_cast<std::size_t>(row)] = c;
      ++row;
    }
  }
  return LabeledDataset(std::move(features), std::move(labels), num_classes,
                        DataShape::Flat(dim));
}

std::vector<int> long_tail_counts(int num_classes, int n_max, double rho) {
  if (num_classes < 1 || n_max < 1) {
    throw std::invalid_argument("long_tail_counts: need M >= 1 and n_max >= 1");
  }
  if (!(rho >= 1.0)) {
    throw std::invalid_argument("long_tail_counts: rho must be >= 1");
  }
  std::vector<int> counts(static_cast<std::size_t>(num_classes));
  for (int i = 0; i < num_classes; ++i) {
    const double exponent =
        num_classes == 1
            ? 0.0
            : -static_cast<double>(i) / static_cast<double>(num_classes - 1);
    counts[static_cast<std::size_t>(i)] =
        static_cast<int>(std::llround(n_max * std::pow(rho, exponent)));
  }
  return counts;
}

LabeledDataset make_long_tailed(const LabeledDataset& ds,
                                const LongTailSpec& spec, std::uint64_t seed) {
  const int m = ds.num_classes();
  const std::vector<int> counts = long_tail_counts(m, spec.n_max, spec.rho);
  for (int c = 0; c < m; ++c) {
    const int want = counts[static_cast<std::size_t>(c)];
    const int have = ds.class_count(c);
    if (want < 1) {
      throw std::invalid_argument("make_long_tailed: class " +
                                  std::to_string(c) +
                                  " count rounds to zero; lower rho or raise "
                                  "n_max");
    }
    if (have < want) {
      throw std::invalid_argument(
          "make_long_tailed: class " + std::to_string(c) + " has " +
          std::to_string(have) + " samples, needs " + std::to_string(want) +
          " (deficit " + std::to_string(want - have) + ")");
    }
  }

  Rng rng(substream_seed(seed, "longtail"));
  std::vector<int> keep;
  for (int c = 0; c < m; ++c) {
    std::vector<int> pool = ds.class_indices()[static_cast<std::size_t>(c)];
    rng.shuffle(pool);
    pool.resize(static_cast<std::size_t>(counts[static_cast<std::size_t>(c)]));
    std::sort(pool.begin(), pool.end());  // keep original row order per class
    keep.insert(keep.end(), pool.begin(), pool.end());
  }

  Eigen::MatrixXd features(static_cast<int>(keep.size()), ds.dim());
  std::vector<int> labels(keep.size());
  for (std::size_t i = 0; i < keep.size(); ++i) {
    features.row(static_cast<int>(i)) = ds.features().row(keep[i]);
    labels[i] = ds.label(keep[i]);
  }
  return LabeledDataset(std::move(features), std::move(labels), m, ds.shape());
}

std::vector<std::vector<int>> iter_batches(int num_samples, int batch_size,
                                           std::uint64_t seed, int epoch) {
  if (batch_size < 1) {
    throw std::invalid_argument("iter_batches: batch_size must be >= 1");
  }
  std::vector<int> order(static_cast<std::size_t>(num_samples));
  std::iota(order.begin(), order.end(), 0);
  Rng rng(substream_seed(seed, "shuffle", static_cast<std::uint64_t>(epoch)));
  rng.shuffle(order);

  std::vector<std::vector<int>> batches;
  for (int start = 0; start < num_samples; start += batch_size) {
    const int end = std::min(start + batch_size, num_samples);
    batches.emplace_back(order.begin() + start, order.begin() + end);
  }
  return batches;
}

}  // namespace mixsel

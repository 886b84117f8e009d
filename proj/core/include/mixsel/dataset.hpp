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

#ifndef MIXSEL_DATASET_HPP_
#define MIXSEL_DATASET_HPP_

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

namespace mixsel {

/// Sample layout: flat feature vectors of dimension D, or H x W x Ch grids
/// stored row-major (D = H*W*Ch). Grid shape is what makes region-based
/// mixing (CutMix) applicable.
struct DataShape {
  enum class Kind { kFlat, kGrid };

  Kind kind = Kind::kFlat;
  int height = 0;
  int width = 0;
  int channels = 0;

  static DataShape Flat(int dim);
  static DataShape Grid(int height, int width, int channels);

  bool is_grid() const { return kind == Kind::kGrid; }
  int dim() const;

  friend bool operator==(const DataShape&, const DataShape&) = default;
};

/// Immutable labeled dataset: an N x D feature matrix, integer labels in
/// [0, M), and per-class row-index lists. Construction validates that the
/// class index lists partition [0, N) and that no class is empty; after
/// that the object is safe to share across threads read-only.
class LabeledDataset {
 public:
  LabeledDataset(Eigen::MatrixXd features, std::vector<int> labels,
                 int num_classes, DataShape shape);

  int num_samples() const { return static_cast<int>(features_.rows()); }
  int num_classes() const { return num_classes_; }
  int dim() const { return static_cast<int>(features_.cols()); }
  const DataShape& shape() const { return shape_; }

  const Eigen::MatrixXd& features() const { return features_; }
  const std::vector<int>& labels() const { return labels_; }
  int label(int i) const { return labels_[static_cast<std::size_t>(i)]; }
  Eigen::VectorXd sample(int i) const { return features_.row(i).transpose(); }

  /// Row indices of each class; class_indices()[c] is never empty.
  const std::vector<std::vector<int>>& class_indices() const {
    return class_indices_;
  }
  int class_count(int c) const {
    return static_cast<int>(class_indices_[static_cast<std::size_t>(c)].size());
  }

 private:
  Eigen::MatrixXd features_;
  std::vector<int> labels_;
  std::vector<std::vector<int>> class_indices_;
  int num_classes_ = 0;
  DataShape shape_;
};

/// Reads the CSV interchange format:
///   # D=<d> M=<m> [H=<h> W=<w> CH=<ch>]
///   <d comma-separated decimals>,<integer label>
/// Parse errors name the offending line.
LabeledDataset load_csv(const std::string& path);

/// Writes the same format; floats use max-precision round-trip formatting,
/// so save(load(p)) is a fixpoint byte-for-byte.
void save_csv(const LabeledDataset& ds, const std::string& path);

/// Synthetic Gaussian clusters. Class means sit on a fixed scaled simplex
/// (R*e_k when m <= d) or a circle in the first two dimensions; only the
/// noise consumes the seed. spread is the per-dimension standard deviation.
LabeledDataset generate_blobs(int num_classes, int dim, int per_class,
                              double spread, std::uint64_t seed);

/// Long-tail subsampling spec: head class keeps n_max samples, tail class
/// roughly n_max/rho, exponential in between.
struct LongTailSpec {
  double rho = 1.0;
  int n_max = 0;
};

/// Per-class target counts round(n_max * rho^(-i/(M-1))) for i = 0..M-1
/// (half away from zero). rho = 1 degenerates to all-equal counts.
std::vector<int> long_tail_counts(int num_classes, int n_max, double rho);

/// Subsamples ds to the exponential count profile, uniformly without
/// replacement per class. Errors name the class and deficit when a class
/// is too small.
LabeledDataset make_long_tailed(const LabeledDataset& ds,
                                const LongTailSpec& spec, std::uint64_t seed);

/// Deterministic epoch shuffle: a permutation of [0, N) derived from
/// (seed, epoch), chunked into batches; the last batch may be short.
std::vector<std::vector<int>> iter_batches(int num_samples, int batch_size,
                                           std::uint64_t seed, int epoch);

}  // namespace mixsel

#endif  // MIXSEL_DATASET_HPP_

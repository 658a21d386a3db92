#ifndef TMO_DATASET_H_
#define TMO_DATASET_H_

#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tmo {

// Raised for malformed LIBSVM input. line() is 1-based, 0 when the error is
// not tied to a particular line (e.g. empty input).
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Dense, immutable classification dataset: n rows of p real features, each
// labelled with a class id in [0, class_count).
class Dataset {
 public:
  // `features` is row-major with rows.size() * feature_count entries.
  // Throws std::invalid_argument if the shape or labels are inconsistent,
  // n == 0, or class_count < 2.
  Dataset(std::vector<double> features, std::vector<int> labels,
          std::size_t feature_count, int class_count);

  std::size_t size() const { return labels_.size(); }
  std::size_t feature_count() const { return feature_count_; }
  int class_count() const { return class_count_; }

  std::span<const double> row(std::size_t i) const {
    return {features_.data() + i * feature_count_, feature_count_};
  }
  double value(std::size_t i, std::size_t feature) const {
    return features_[i * feature_count_ + feature];
  }
  int label(std::size_t i) const { return labels_[i]; }
  const std::vector<int>& labels() const { return labels_; }

  // Rows in the given order (duplicates allowed). class_count is inherited.
  Dataset Subset(std::span<const std::size_t> rows) const;

  // Per-class counts of the given rows (or of all rows).
  std::vector<std::size_t> ClassCounts() const;
  std::vector<std::size_t> ClassCounts(std::span<const std::size_t> rows) const;

  // Observed [min, max] of a feature column.
  std::pair<double, double> FeatureRange(std::size_t feature) const;

 private:
  std::vector<double> features_;
  std::vector<int> labels_;
  std::size_t feature_count_;
  int class_count_;
};

// Parses LIBSVM text: one `<label> <idx>:<value> ...` record per non-empty
// line, 1-based strictly increasing indices. Unlisted features are 0.0, p is
// the largest index seen, and distinct raw labels are numbered 0..C-1 in
// ascending numeric order. `#` starts a comment.
Dataset ParseLibsvm(std::istream& in);
Dataset ParseLibsvm(std::string_view text);
Dataset LoadLibsvm(const std::string& path);

// Writes class ids as labels and every nonzero value with round-trip
// precision. The last feature index is always written so p survives a
// re-parse.
void WriteLibsvm(const Dataset& data, std::ostream& out);

struct SplitSpec {
  double train_fraction = 0.64;
  double val_fraction = 0.16;
  double test_fraction = 0.20;
  std::uint64_t seed = 0;

  // Throws std::invalid_argument unless each fraction is in (0,1) and they
  // sum to 1 within 1e-9.
  void Validate() const;
};

struct DatasetSplit {
  Dataset train;
  Dataset validation;
  Dataset test;
  std::vector<std::size_t> train_rows;
  std::vector<std::size_t> validation_rows;
  std::vector<std::size_t> test_rows;
};

// Seeded shuffle of the row indices, cut at floor(f * n) for train and
// validation; the remainder goes to test. Throws if n < 3 or a part is empty.
DatasetSplit SplitDataset(const Dataset& data, const SplitSpec& spec);

// n rows drawn uniformly with replacement.
Dataset BootstrapSample(const Dataset& data, std::uint64_t seed);

}  // namespace tmo

#endif  // TMO_DATASET_H_

#include "tmo/dataset.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "tmo/random.h"

namespace tmo {

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error(line == 0 ? what
                                   : "line " + std::to_string(line) + ": " + what),
      line_(line) {}

Dataset::Dataset(std::vector<double> features, std::vector<int> labels,
                 std::size_t feature_count, int class_count)
    : features_(std::move(features)),
      labels_(std::move(labels)),
      feature_count_(feature_count),
      class_count_(class_count) {
  if (labels_.empty()) throw std::invalid_argument("dataset has no rows");
  if (feature_count_ == 0) throw std::invalid_argument("dataset has no features");
  if (class_count_ < 2) {
    throw std::invalid_argument("dataset needs at least 2 classes, got " +
                                std::to_string(class_count_));
  }
  if (features_.size() != labels_.size() * feature_count_) {
    throw std::invalid_argument("feature matrix size does not match n * p");
  }
  for (int y : labels_) {
    if (y < 0 || y >= class_count_) {
      throw std::invalid_argument("label " + std::to_string(y) +
                                  " outside [0, class_count)");
    }
  }
}

Dataset Dataset::Subset(std::span<const std::size_t> rows) const {
  std::vector<double> features;
  features.reserve(rows.size() * feature_count_);
  std::vector<int> labels;
  labels.reserve(rows.size());
  for (std::size_t i : rows) {
    auto r = row(i);
    features.insert(features.end(), r.begin(), r.end());
    labels.push_back(labels_[i]);
  }
  return Dataset(std::move(features), std::move(labels), feature_count_,
                 class_count_);
}

std::vector<std::size_t> Dataset::ClassCounts() const {
  std::vector<std::size_t> counts(class_count_, 0);
  for (int y : labels_) ++counts[y];
  return counts;
}

std::vector<std::size_t> Dataset::ClassCounts(
    std::span<const std::size_t> rows) const {
  std::vector<std::size_t> counts(class_count_, 0);
  for (std::size_t i : rows) ++counts[labels_[i]];
  return counts;
}

std::pair<double, double> Dataset::FeatureRange(std::size_t feature) const {
  double lo = value(0, feature);
  double hi = lo;
  for (std::size_t i = 1; i < size(); ++i) {
    const double v = value(i, feature);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return {lo, hi};
}

namespace {

bool ParseDouble(std::string_view token, double& out) {
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  if (token.empty()) return false;
  const char* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, out);
  return ec == std::errc() && ptr == end && std::isfinite(out);
}

struct RawRecord {
  double label;
  std::vector<std::pair<std::size_t, double>> entries;  // 1-based index
};

}  // namespace

Dataset ParseLibsvm(std::istream& in) {
  std::vector<RawRecord> records;
  std::size_t max_index = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    if (auto hash = view.find('#'); hash != std::string_view::npos) {
      view = view.substr(0, hash);
    }
    std::vector<std::string_view> tokens;
    std::size_t pos = 0;
    while (pos < view.size()) {
      while (pos < view.size() && std::isspace(static_cast<unsigned char>(view[pos]))) ++pos;
      std::size_t start = pos;
      while (pos < view.size() && !std::isspace(static_cast<unsigned char>(view[pos]))) ++pos;
      if (pos > start) tokens.push_back(view.substr(start, pos - start));
    }
    if (tokens.empty()) continue;

    RawRecord record;
    if (!ParseDouble(tokens[0], record.label)) {
      throw ParseError(line_no, "bad label '" + std::string(tokens[0]) + "'");
    }
    std::size_t previous = 0;
    for (std::size_t t = 1; t < tokens.size(); ++t) {
      const std::string_view tok = tokens[t];
      const std::size_t colon = tok.find(':');
      if (colon == std::string_view::npos) {
        throw ParseError(line_no, "expected idx:value, got '" + std::string(tok) + "'");
      }
      std::size_t index = 0;
      const std::string_view idx_text = tok.substr(0, colon);
      auto [ptr, ec] = std::from_chars(idx_text.data(),
                                       idx_text.data() + idx_text.size(), index);
      if (ec != std::errc() || ptr != idx_text.data() + idx_text.size() || index == 0) {
        throw ParseError(line_no, "bad feature index '" + std::string(idx_text) + "'");
      }
      if (index <= previous) {
        throw ParseError(line_no, "feature indices must be strictly increasing");
      }
      double value = 0.0;
      if (!ParseDouble(tok.substr(colon + 1), value)) {
        throw ParseError(line_no, "bad feature value in '" + std::string(tok) + "'");
      }
      previous = index;
      max_index = std::max(max_index, index);
      record.entries.emplace_back(index, value);
    }
    records.push_back(std::move(record));
  }
  if (records.empty()) throw ParseError(0, "no data rows in LIBSVM input");
  if (max_index == 0) throw ParseError(0, "no features in LIBSVM input");

  std::map<double, int> class_ids;
  for (const auto& r : records) class_ids.emplace(r.label, 0);
  int next_id = 0;
  for (auto& [raw, id] : class_ids) id = next_id++;

  const std::size_t p = max_index;
  std::vector<double> features(records.size() * p, 0.0);
  std::vector<int> labels;
  labels.reserve(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    for (const auto& [index, value] : records[i].entries) {
      features[i * p + index - 1] = value;
    }
    labels.push_back(class_ids.at(records[i].label));
  }
  return Dataset(std::move(features), std::move(labels), p,
                 static_cast<int>(class_ids.size()));
}

Dataset ParseLibsvm(std::string_view text) {
  std::istringstream in{std::string(text)};
  return ParseLibsvm(in);
}

Dataset LoadLibsvm(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open dataset file '" + path + "'");
  try {
    return ParseLibsvm(in);
  } catch (const ParseError& e) {
    throw ParseError(e.line(), path + ": " + e.what());
  }
}

void WriteLibsvm(const Dataset& data, std::ostream& out) {
  char buffer[64];
  const std::size_t p = data.feature_count();
  for (std::size_t i = 0; i < data.size(); ++i) {
    out << data.label(i);
    for (std::size_t f = 0; f < p; ++f) {
      const double v = data.value(i, f);
      if (v == 0.0 && f + 1 != p) continue;
      std::snprintf(buffer, sizeof buffer, " %zu:%.17g", f + 1, v);
      out << buffer;
    }
    out << '\n';
  }
}

void SplitSpec::Validate() const {
  for (double f : {train_fraction, val_fraction, test_fraction}) {
    if (!(f > 0.0 && f < 1.0)) {
      throw std::invalid_argument("split fractions must lie in (0, 1)");
    }
  }
  if (std::abs(train_fraction + val_fraction + test_fraction - 1.0) > 1e-9) {
    throw std::invalid_argument("split fractions must sum to 1");
  }
}

DatasetSplit SplitDataset(const Dataset& data, const SplitSpec& spec) {
  spec.Validate();
  const std::size_t n = data.size();
  if (n < 3) throw std::invalid_argument("split needs at least 3 rows");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(spec.seed);
  for (std::size_t i = n - 1; i > 0; --i) {
    std::swap(order[i], order[rng.UniformIndex(i + 1)]);
  }

  // The small slack keeps products such as 0.29 * 100 from flooring to 28.
  auto part = [n](double fraction) {
    return static_cast<std::size_t>(std::floor(fraction * static_cast<double>(n) + 1e-9));
  };
  const std::size_t n_train = part(spec.train_fraction);
  const std::size_t n_val = part(spec.val_fraction);
  if (n_train == 0 || n_val == 0 || n_train + n_val >= n) {
    throw std::invalid_argument("split of " + std::to_string(n) +
                                " rows leaves an empty part");
  }

  std::vector<std::size_t> train_rows(order.begin(), order.begin() + n_train);
  std::vector<std::size_t> val_rows(order.begin() + n_train,
                                    order.begin() + n_train + n_val);
  std::vector<std::size_t> test_rows(order.begin() + n_train + n_val, order.end());
  return DatasetSplit{data.Subset(train_rows),
                      data.Subset(val_rows),
                      data.Subset(test_rows),
                      std::move(train_rows),
                      std::move(val_rows),
                      std::move(test_rows)};
}

Dataset BootstrapSample(const Dataset& data, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::size_t> rows(data.size());
  for (auto& r : rows) r = rng.UniformIndex(data.size());
  return data.Subset(rows);
}

}  // namespace tmo

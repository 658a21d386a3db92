#include "tmo/greedy.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace tmo {

namespace {

__extension__ typedef unsigned __int128 Wide;

// Weighted child impurity is minimized by maximizing
//   SL / nL + SR / nR,   S = sum_c n_c^2,
// which is compared exactly as the fraction (SL*nR + SR*nL) / (nL*nR).
struct SplitScore {
  std::uint64_t numerator = 0;
  std::uint64_t denominator = 1;

  bool Beats(const SplitScore& other) const {
    return Wide{numerator} * other.denominator > Wide{other.numerator} * denominator;
  }
};

std::uint64_t SumOfSquares(std::span<const std::size_t> counts) {
  std::uint64_t s = 0;
  for (std::size_t c : counts) s += std::uint64_t{c} * c;
  return s;
}

}  // namespace

double GiniImpurity(std::span<const std::size_t> counts) {
  std::size_t total = 0;
  for (std::size_t c : counts) total += c;
  if (total == 0) throw std::invalid_argument("Gini impurity of an empty node");
  const double n = static_cast<double>(total);
  double sum = 0.0;
  for (std::size_t c : counts) {
    const double share = static_cast<double>(c) / n;
    sum += share * share;
  }
  return 1.0 - sum;
}

double MidpointThreshold(double lo, double hi) {
  const double mid = lo + (hi - lo) / 2.0;
  return mid < hi ? mid : lo;
}

std::optional<SplitCandidate> BestAxisSplit(const Dataset& data,
                                            std::span<const std::size_t> rows,
                                            std::span<const std::size_t> feature_pool) {
  const std::size_t n = rows.size();
  if (n < 2) return std::nullopt;
  const std::size_t classes = static_cast<std::size_t>(data.class_count());
  const std::vector<std::size_t> parent_counts = data.ClassCounts(rows);
  const std::uint64_t parent_squares = SumOfSquares(parent_counts);

  std::vector<std::size_t> pool(feature_pool.begin(), feature_pool.end());
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());

  std::optional<SplitCandidate> best;
  SplitScore best_score;
  std::vector<std::pair<double, int>> column(n);
  std::vector<std::size_t> left(classes);
  std::vector<std::size_t> right(classes);

  for (std::size_t f : pool) {
    for (std::size_t k = 0; k < n; ++k) {
      column[k] = {data.value(rows[k], f), data.label(rows[k])};
    }
    std::sort(column.begin(), column.end());
    std::fill(left.begin(), left.end(), 0);
    right = parent_counts;
    std::uint64_t left_squares = 0;
    std::uint64_t right_squares = parent_squares;

    for (std::size_t k = 0; k + 1 < n; ++k) {
      const std::size_t c = static_cast<std::size_t>(column[k].second);
      left_squares += 2 * left[c] + 1;
      right_squares -= 2 * right[c] - 1;
      ++left[c];
      --right[c];
      if (!(column[k].first < column[k + 1].first)) continue;

      const std::uint64_t n_left = k + 1;
      const std::uint64_t n_right = n - n_left;
      const SplitScore score{left_squares * n_right + right_squares * n_left,
                             n_left * n_right};
      // Positive decrease iff score > parent_squares / n.
      const bool improves = Wide{score.numerator} * n >
                            Wide{parent_squares} * score.denominator;
      if (!improves) continue;
      if (best && !score.Beats(best_score)) continue;

      const double nd = static_cast<double>(n);
      const double decrease =
          (static_cast<double>(left_squares) / static_cast<double>(n_left) +
           static_cast<double>(right_squares) / static_cast<double>(n_right)) / nd -
          static_cast<double>(parent_squares) / (nd * nd);
      best_score = score;
      best = SplitCandidate{static_cast<int>(f),
                            MidpointThreshold(column[k].first, column[k + 1].first),
                            std::max(decrease, 0.0)};
    }
  }
  return best;
}

std::size_t DefaultSubspaceSize(std::size_t feature_count) {
  auto m = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(feature_count))));
  while (m * m < feature_count) ++m;
  while (m > 1 && (m - 1) * (m - 1) >= feature_count) --m;
  return std::max<std::size_t>(m, 1);
}

namespace {

class GreedyGrower {
 public:
  GreedyGrower(const Dataset& data, const GreedyOptions& options, Rng& rng)
      : data_(data), options_(options), rng_(rng), tree_(options.max_depth) {
    all_features_.resize(data.feature_count());
    std::iota(all_features_.begin(), all_features_.end(), std::size_t{0});
  }

  Tree Grow() {
    std::vector<std::size_t> rows(data_.size());
    std::iota(rows.begin(), rows.end(), std::size_t{0});
    GrowNode(0, rows);
    return std::move(tree_);
  }

 private:
  void GrowNode(NodeId id, const std::vector<std::size_t>& rows) {
    const std::vector<std::size_t> counts = data_.ClassCounts(rows);
    tree_.SetLabel(id, MajorityClass(counts));
    const bool pure =
        std::count_if(counts.begin(), counts.end(), [](std::size_t c) { return c > 0; }) <= 1;
    if (pure || Tree::DepthOf(id) >= options_.max_depth) return;

    const auto split = BestAxisSplit(data_, rows, DrawPool());
    if (!split) return;

    tree_.Split(id, split->feature, split->threshold);
    std::vector<std::size_t> left_rows;
    std::vector<std::size_t> right_rows;
    for (std::size_t i : rows) {
      (data_.value(i, split->feature) <= split->threshold ? left_rows : right_rows)
          .push_back(i);
    }
    GrowNode(Tree::Left(id), left_rows);
    GrowNode(Tree::Right(id), right_rows);
  }

  std::vector<std::size_t> DrawPool() {
    const std::size_t p = all_features_.size();
    const std::size_t m = options_.subspace_size.value_or(p);
    if (m >= p) return all_features_;
    std::vector<std::size_t> features = all_features_;
    for (std::size_t k = 0; k < m; ++k) {
      std::swap(features[k], features[k + rng_.UniformIndex(p - k)]);
    }
    features.resize(m);
    return features;
  }

  const Dataset& data_;
  const GreedyOptions& options_;
  Rng& rng_;
  Tree tree_;
  std::vector<std::size_t> all_features_;
};

}  // namespace

Tree GrowGreedyTree(const Dataset& train, const GreedyOptions& options, Rng& rng) {
  if (options.max_depth < 1) throw std::invalid_argument("max_depth must be >= 1");
  if (options.subspace_size && *options.subspace_size == 0) {
    throw std::invalid_argument("subspace_size must be positive");
  }
  if (options.bootstrap) {
    const Dataset sample = BootstrapSample(train, rng.NextU64());
    return GreedyGrower(sample, options, rng).Grow();
  }
  return GreedyGrower(train, options, rng).Grow();
}

}  // namespace tmo

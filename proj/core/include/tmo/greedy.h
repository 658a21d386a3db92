#ifndef TMO_GREEDY_H_
#define TMO_GREEDY_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "tmo/dataset.h"
#include "tmo/random.h"
#include "tmo/tree.h"

namespace tmo {

// 1 - sum_c (n_c / n)^2. Throws std::invalid_argument on an empty count.
double GiniImpurity(std::span<const std::size_t> counts);

struct SplitCandidate {
  int feature = -1;
  double threshold = 0.0;
  // Gini(parent) - weighted Gini(children), within the node.
  double impurity_decrease = 0.0;
};

// Midpoint of two consecutive distinct sorted values, guaranteed to satisfy
// lo <= t < hi so that `x <= t` separates them.
double MidpointThreshold(double lo, double hi);

// Best Gini split of `rows` (duplicates allowed) over the features in
// `feature_pool`, trying the midpoints between consecutive distinct values.
// Ties go to the lower feature index, then the lower threshold. Returns
// nullopt when no split strictly decreases impurity.
std::optional<SplitCandidate> BestAxisSplit(const Dataset& data,
                                            std::span<const std::size_t> rows,
                                            std::span<const std::size_t> feature_pool);

struct GreedyOptions {
  int max_depth = 2;
  // Features drawn per node; nullopt (or >= p) means all features.
  std::optional<std::size_t> subspace_size;
  // Grow (and label) on a bootstrap sample of the training set.
  bool bootstrap = false;
};

// CART-style top-down induction. Stops at max_depth, on pure nodes, and when
// no pooled feature gives a positive Gini decrease. Leaves carry the
// majority class of the rows they were grown on.
Tree GrowGreedyTree(const Dataset& train, const GreedyOptions& options, Rng& rng);

// ceil(sqrt(p)), the usual random-forest default for classification.
std::size_t DefaultSubspaceSize(std::size_t feature_count);

}  // namespace tmo

#endif  // TMO_GREEDY_H_

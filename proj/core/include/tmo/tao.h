#ifndef TMO_TAO_H_
#define TMO_TAO_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "tmo/dataset.h"
#include "tmo/tree.h"

namespace tmo {

// Rows of the optimization set reaching each node, indexed by NodeId.
// Absent nodes hold empty lists.
using ReducedSets = std::vector<std::vector<std::size_t>>;

ReducedSets ComputeReducedSets(const Tree& tree, const Dataset& data);

enum class Care : std::uint8_t { kDontCare, kPreferLeft, kPreferRight };

// For each row of `rows` (same order): which child of branch `node` would
// classify it correctly, given the current subtrees.
std::vector<Care> ComputeCareLabels(const Tree& tree, NodeId node,
                                    const Dataset& data,
                                    std::span<const std::size_t> rows);

// Number of care rows that (feature, threshold) routes against their
// preference.
std::size_t CountCareErrors(const Dataset& data, std::span<const std::size_t> rows,
                            std::span<const Care> care, int feature, double threshold);

struct NodeUpdate {
  int feature = -1;
  double threshold = 0.0;
  std::size_t care_errors = 0;
  bool changed = false;
};

// Exhaustive search over every (feature, midpoint) pair of the rows' values
// for the split with the fewest care errors. The incumbent split of `node`
// is kept unless a candidate is strictly better; ties between candidates go
// to the lower feature, then the lower threshold.
NodeUpdate OptimizeInternalNode(const Tree& tree, NodeId node, const Dataset& data,
                                std::span<const std::size_t> rows,
                                std::span<const Care> care);

struct TaoOptions {
  int max_passes = 10;
  // Called after every node optimization with the state the node saw.
  std::function<void(NodeId node, std::span<const std::size_t> rows,
                     std::span<const Care> care, const NodeUpdate& update)>
      on_node;
};

struct TaoResult {
  Tree tree;
  std::size_t initial_errors = 0;
  // Misclassification count on the optimization set after each pass.
  std::vector<std::size_t> pass_errors;
};

// Alternating optimization of a fixed tree skeleton. Each pass visits the
// branch levels from the deepest to the root, re-optimizing every branch
// that receives rows and then relabeling leaves by majority. Stops after a
// pass that does not reduce the error count, or after max_passes. The
// skeleton (which nodes are branches and leaves) never changes.
TaoResult TaoOptimizeTraced(Tree tree, const Dataset& data, const TaoOptions& options = {});

Tree TaoOptimize(Tree tree, const Dataset& data, int max_passes = 10);

}  // namespace tmo

#endif  // TMO_TAO_H_

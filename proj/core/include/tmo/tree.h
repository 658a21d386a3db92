#ifndef TMO_TREE_H_
#define TMO_TREE_H_

#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <vector>

#include "tmo/dataset.h"

namespace tmo {

// Position of a node in the complete binary layout of depth max_depth:
// root 0, children of z at 2z+1 (left) and 2z+2 (right).
using NodeId = std::size_t;

enum class NodeKind : std::uint8_t { kAbsent, kBranch, kLeaf };

struct Node {
  NodeKind kind = NodeKind::kAbsent;
  int feature = -1;        // branch only
  double threshold = 0.0;  // branch only
  int label = 0;           // leaf only

  bool operator==(const Node&) const = default;
};

// Axis-aligned classification tree of bounded depth. A point goes left at a
// branch iff x[feature] <= threshold. Every mutator keeps the structure valid:
// branches always have two children and nothing lives below max_depth.
class Tree {
 public:
  // A single leaf predicting `label`. Requires max_depth >= 1.
  explicit Tree(int max_depth, int label = 0);

  static constexpr NodeId Left(NodeId id) { return 2 * id + 1; }
  static constexpr NodeId Right(NodeId id) { return 2 * id + 2; }
  static constexpr NodeId Parent(NodeId id) { return (id - 1) / 2; }
  static int DepthOf(NodeId id);
  // Number of slots in a complete tree of the given depth: 2^(depth+1) - 1.
  static std::size_t CapacityFor(int depth);

  int max_depth() const { return max_depth_; }
  std::size_t capacity() const { return nodes_.size(); }
  const Node& node(NodeId id) const { return nodes_[id]; }
  std::span<const Node> nodes() const { return nodes_; }
  bool is_branch(NodeId id) const { return nodes_[id].kind == NodeKind::kBranch; }
  bool is_leaf(NodeId id) const { return nodes_[id].kind == NodeKind::kLeaf; }

  // Turns leaf `id` into a branch with two fresh leaves carrying its label,
  // or updates the parameters if `id` is already a branch. Throws if `id` is
  // absent or sits at max_depth.
  void Split(NodeId id, int feature, double threshold);
  // Replaces the node (and any subtree) by a leaf. Throws if absent.
  void MakeLeaf(NodeId id, int label);
  void SetLabel(NodeId id, int label);

  NodeId LeafFor(std::span<const double> x) const { return LeafFrom(0, x); }
  NodeId LeafFrom(NodeId start, std::span<const double> x) const;
  int Predict(std::span<const double> x) const { return nodes_[LeafFor(x)].label; }
  int PredictFrom(NodeId start, std::span<const double> x) const {
    return nodes_[LeafFrom(start, x)].label;
  }

  std::vector<NodeId> BranchIds() const;
  std::vector<NodeId> LeafIds() const;
  // Length of the longest root-to-leaf path (0 for a single leaf).
  int Depth() const;

  // Throws std::logic_error describing the first violated invariant: kinds
  // consistent with parents, depth bound, feature < feature_count, labels in
  // [0, class_count).
  void Validate(std::size_t feature_count, int class_count) const;

  bool operator==(const Tree&) const = default;

 private:
  void PruneBelow(NodeId id);

  int max_depth_;
  std::vector<Node> nodes_;
};

std::size_t CountErrors(const Tree& tree, const Dataset& data);
// Fraction of rows classified correctly; 1 - CountErrors / n.
double EvaluateAccuracy(const Tree& tree, const Dataset& data);

// Majority label of the given class counts; ties go to the smallest class id.
int MajorityClass(std::span<const std::size_t> counts);

// Relabels every leaf with the majority class of the rows routed to it. An
// empty leaf takes the majority of its nearest ancestor that receives rows.
Tree AssignLeafLabels(Tree tree, const Dataset& train);

// Line-based text form: a `tree <max_depth>` header, then one line per slot
// in BFS order: `<id> B <feature> <threshold>`, `<id> L <label>` or `<id> N`.
void WriteTree(const Tree& tree, std::ostream& out);
Tree ReadTree(std::istream& in);

}  // namespace tmo

#endif  // TMO_TREE_H_

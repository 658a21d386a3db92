#include "tmo/tree.h"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <string>

namespace tmo {

int Tree::DepthOf(NodeId id) {
  return std::bit_width(id + 1) - 1;
}

std::size_t Tree::CapacityFor(int depth) {
  return (std::size_t{1} << (depth + 1)) - 1;
}

Tree::Tree(int max_depth, int label) : max_depth_(max_depth) {
  if (max_depth < 1 || max_depth > 20) {
    throw std::invalid_argument("max_depth must be in [1, 20]");
  }
  nodes_.resize(CapacityFor(max_depth));
  nodes_[0].kind = NodeKind::kLeaf;
  nodes_[0].label = label;
}

void Tree::Split(NodeId id, int feature, double threshold) {
  if (id >= nodes_.size() || nodes_[id].kind == NodeKind::kAbsent) {
    throw std::logic_error("Split on absent node " + std::to_string(id));
  }
  if (DepthOf(id) >= max_depth_) {
    throw std::logic_error("Split at max depth on node " + std::to_string(id));
  }
  Node& n = nodes_[id];
  if (n.kind == NodeKind::kLeaf) {
    const int label = n.label;
    n.kind = NodeKind::kBranch;
    n.label = 0;
    nodes_[Left(id)] = Node{NodeKind::kLeaf, -1, 0.0, label};
    nodes_[Right(id)] = Node{NodeKind::kLeaf, -1, 0.0, label};
  }
  n.feature = feature;
  n.threshold = threshold;
}

void Tree::MakeLeaf(NodeId id, int label) {
  if (id >= nodes_.size() || nodes_[id].kind == NodeKind::kAbsent) {
    throw std::logic_error("MakeLeaf on absent node " + std::to_string(id));
  }
  PruneBelow(id);
  nodes_[id] = Node{NodeKind::kLeaf, -1, 0.0, label};
}

void Tree::PruneBelow(NodeId id) {
  if (nodes_[id].kind != NodeKind::kBranch) return;
  for (NodeId child : {Left(id), Right(id)}) {
    PruneBelow(child);
    nodes_[child] = Node{};
  }
}

void Tree::SetLabel(NodeId id, int label) {
  if (id >= nodes_.size() || nodes_[id].kind != NodeKind::kLeaf) {
    throw std::logic_error("SetLabel on non-leaf node " + std::to_string(id));
  }
  nodes_[id].label = label;
}

NodeId Tree::LeafFrom(NodeId start, std::span<const double> x) const {
  NodeId id = start;
  while (nodes_[id].kind == NodeKind::kBranch) {
    const Node& n = nodes_[id];
    id = x[n.feature] <= n.threshold ? Left(id) : Right(id);
  }
  return id;
}

std::vector<NodeId> Tree::BranchIds() const {
  std::vector<NodeId> ids;
  for (NodeId id = 0; id < nodes_.size(); ++id) {
    if (nodes_[id].kind == NodeKind::kBranch) ids.push_back(id);
  }
  return ids;
}

std::vector<NodeId> Tree::LeafIds() const {
  std::vector<NodeId> ids;
  for (NodeId id = 0; id < nodes_.size(); ++id) {
    if (nodes_[id].kind == NodeKind::kLeaf) ids.push_back(id);
  }
  return ids;
}

int Tree::Depth() const {
  int depth = 0;
  for (NodeId id = 0; id < nodes_.size(); ++id) {
    if (nodes_[id].kind == NodeKind::kLeaf) depth = std::max(depth, DepthOf(id));
  }
  return depth;
}

void Tree::Validate(std::size_t feature_count, int class_count) const {
  auto fail = [](NodeId id, const std::string& what) {
    throw std::logic_error("node " + std::to_string(id) + ": " + what);
  };
  if (nodes_.size() != CapacityFor(max_depth_)) fail(0, "bad capacity");
  if (nodes_[0].kind == NodeKind::kAbsent) fail(0, "root is absent");
  for (NodeId id = 0; id < nodes_.size(); ++id) {
    const Node& n = nodes_[id];
    const bool parent_branch =
        id == 0 || nodes_[Parent(id)].kind == NodeKind::kBranch;
    if (parent_branch != (n.kind != NodeKind::kAbsent)) {
      fail(id, parent_branch ? "missing child of a branch" : "orphan node");
    }
    if (n.kind == NodeKind::kBranch) {
      if (DepthOf(id) >= max_depth_) fail(id, "branch at max depth");
      if (n.feature < 0 || static_cast<std::size_t>(n.feature) >= feature_count) {
        fail(id, "feature index out of range");
      }
    } else if (n.kind == NodeKind::kLeaf) {
      if (n.label < 0 || n.label >= class_count) fail(id, "label out of range");
    }
  }
}

std::size_t CountErrors(const Tree& tree, const Dataset& data) {
  std::size_t errors = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (tree.Predict(data.row(i)) != data.label(i)) ++errors;
  }
  return errors;
}

double EvaluateAccuracy(const Tree& tree, const Dataset& data) {
  const std::size_t n = data.size();
  return static_cast<double>(n - CountErrors(tree, data)) / static_cast<double>(n);
}

int MajorityClass(std::span<const std::size_t> counts) {
  int best = 0;
  for (std::size_t c = 1; c < counts.size(); ++c) {
    if (counts[c] > counts[best]) best = static_cast<int>(c);
  }
  return best;
}

Tree AssignLeafLabels(Tree tree, const Dataset& train) {
  const std::size_t classes = static_cast<std::size_t>(train.class_count());
  std::vector<std::size_t> counts(tree.capacity() * classes, 0);
  for (std::size_t i = 0; i < train.size(); ++i) {
    const auto x = train.row(i);
    const std::size_t y = static_cast<std::size_t>(train.label(i));
    NodeId id = 0;
    while (true) {
      ++counts[id * classes + y];
      if (!tree.is_branch(id)) break;
      const Node& n = tree.node(id);
      id = x[n.feature] <= n.threshold ? Tree::Left(id) : Tree::Right(id);
    }
  }
  auto node_counts = [&](NodeId id) {
    return std::span<const std::size_t>(counts.data() + id * classes, classes);
  };
  auto total = [&](NodeId id) {
    std::size_t sum = 0;
    for (std::size_t c : node_counts(id)) sum += c;
    return sum;
  };
  for (NodeId leaf : tree.LeafIds()) {
    NodeId source = leaf;
    while (source != 0 && total(source) == 0) source = Tree::Parent(source);
    tree.SetLabel(leaf, MajorityClass(node_counts(source)));
  }
  return tree;
}

void WriteTree(const Tree& tree, std::ostream& out) {
  out << "tree " << tree.max_depth() << '\n';
  char buffer[64];
  for (NodeId id = 0; id < tree.capacity(); ++id) {
    const Node& n = tree.node(id);
    switch (n.kind) {
      case NodeKind::kBranch:
        std::snprintf(buffer, sizeof buffer, "%.17g", n.threshold);
        out << id << " B " << n.feature << ' ' << buffer << '\n';
        break;
      case NodeKind::kLeaf:
        out << id << " L " << n.label << '\n';
        break;
      case NodeKind::kAbsent:
        out << id << " N\n";
        break;
    }
  }
}

Tree ReadTree(std::istream& in) {
  std::string word;
  int depth = 0;
  if (!(in >> word >> depth) || word != "tree") {
    throw std::runtime_error("tree text must start with 'tree <depth>'");
  }
  Tree tree(depth);
  std::vector<Node> nodes(tree.capacity());
  for (NodeId expected = 0; expected < nodes.size(); ++expected) {
    NodeId id = 0;
    std::string kind;
    if (!(in >> id >> kind) || id != expected) {
      throw std::runtime_error("tree text: expected slot " + std::to_string(expected));
    }
    Node& n = nodes[id];
    if (kind == "B") {
      n.kind = NodeKind::kBranch;
      if (!(in >> n.feature >> n.threshold)) {
        throw std::runtime_error("tree text: bad branch on slot " + std::to_string(id));
      }
    } else if (kind == "L") {
      n.kind = NodeKind::kLeaf;
      if (!(in >> n.label)) {
        throw std::runtime_error("tree text: bad leaf on slot " + std::to_string(id));
      }
    } else if (kind != "N") {
      throw std::runtime_error("tree text: unknown slot kind '" + kind + "'");
    }
  }
  // Rebuild through the mutators so structural invariants are enforced.
  std::vector<NodeId> stack{0};
  while (!stack.empty()) {
    const NodeId id = stack.back();
    stack.pop_back();
    const Node& n = nodes[id];
    if (n.kind == NodeKind::kBranch) {
      tree.Split(id, n.feature, n.threshold);
      stack.push_back(Tree::Right(id));
      stack.push_back(Tree::Left(id));
    } else if (n.kind == NodeKind::kLeaf) {
      tree.SetLabel(id, n.label);
    } else {
      throw std::runtime_error("tree text: slot " + std::to_string(id) +
                               " is missing under a branch");
    }
  }
  for (NodeId id = 0; id < nodes.size(); ++id) {
    if (nodes[id].kind != NodeKind::kAbsent && !(tree.node(id) == nodes[id])) {
      throw std::runtime_error("tree text: unreachable slot " + std::to_string(id));
    }
  }
  return tree;
}

}  // namespace tmo

#include "tmo/encoding.h"

#include <stdexcept>
#include <string>

namespace tmo {

std::ostream& operator<<(std::ostream& out, const Gene& gene) {
  switch (gene.kind) {
    case Gene::Kind::kSplit:
      return out << '(' << gene.feature << ", " << gene.threshold << ')';
    case Gene::Kind::kLeaf:
      return out << "(-1, -1)";
    case Gene::Kind::kNil:
      return out << "(nil, nil)";
  }
  return out;
}

std::ostream& operator<<(std::ostream& out, const EncodedTree& encoded) {
  out << '[';
  for (std::size_t z = 0; z < encoded.slots.size(); ++z) {
    if (z > 0) out << ", ";
    out << encoded.slots[z];
  }
  return out << ']';
}

EncodedTree Encode(const Tree& tree) {
  EncodedTree encoded;
  encoded.depth = tree.max_depth();
  const std::size_t length = Tree::CapacityFor(tree.max_depth() - 1);
  encoded.slots.reserve(length);
  for (NodeId id = 0; id < length; ++id) {
    const Node& n = tree.node(id);
    switch (n.kind) {
      case NodeKind::kBranch:
        encoded.slots.push_back(Gene::MakeSplit(n.feature, n.threshold));
        break;
      case NodeKind::kLeaf:
        encoded.slots.push_back(Gene::MakeLeaf());
        break;
      case NodeKind::kAbsent:
        encoded.slots.push_back(Gene::MakeNil());
        break;
    }
  }
  return encoded;
}

Tree DecodeAndRepair(const EncodedTree& encoded, const Dataset& train, Rng& rng) {
  const int depth = encoded.depth;
  const std::size_t length = Tree::CapacityFor(depth - 1);
  if (depth < 1 || encoded.slots.size() != length) {
    throw std::invalid_argument("encoded tree length does not match 2^d - 1");
  }
  const std::size_t p = train.feature_count();
  for (const Gene& gene : encoded.slots) {
    if (gene.kind == Gene::Kind::kSplit &&
        (gene.feature < 0 || static_cast<std::size_t>(gene.feature) >= p)) {
      throw std::invalid_argument("encoded split feature " +
                                  std::to_string(gene.feature) + " out of range");
    }
  }

  Tree tree(depth);
  if (encoded.slots[0].kind == Gene::Kind::kNil) {
    return AssignLeafLabels(std::move(tree), train);
  }

  auto has_split_child = [&](NodeId id) {
    const NodeId left = Tree::Left(id);
    if (left >= length) return false;
    return encoded.slots[left].kind == Gene::Kind::kSplit ||
           encoded.slots[Tree::Right(id)].kind == Gene::Kind::kSplit;
  };

  // Ids increase in BFS order and a parent precedes its children, so every
  // node is already present (as a leaf) when its slot is visited.
  for (NodeId id = 0; id < length; ++id) {
    if (tree.node(id).kind != NodeKind::kLeaf) continue;
    const Gene& gene = encoded.slots[id];
    if (gene.kind == Gene::Kind::kSplit) {
      tree.Split(id, gene.feature, gene.threshold);
    } else if (has_split_child(id)) {
      const int feature = static_cast<int>(rng.UniformIndex(p));
      const auto [lo, hi] = train.FeatureRange(static_cast<std::size_t>(feature));
      tree.Split(id, feature, rng.Uniform(lo, hi));
    }
  }
  return AssignLeafLabels(std::move(tree), train);
}

}  // namespace tmo

#ifndef TMO_ENCODING_H_
#define TMO_ENCODING_H_

#include <ostream>
#include <vector>

#include "tmo/dataset.h"
#include "tmo/random.h"
#include "tmo/tree.h"

namespace tmo {

// One slot of the fixed-length genome: a split (f, tau), a leaf (-1, -1) or
// a missing node (nil, nil).
struct Gene {
  enum class Kind : std::uint8_t { kSplit, kLeaf, kNil };

  Kind kind = Kind::kNil;
  int feature = -1;
  double threshold = -1.0;

  static Gene MakeSplit(int feature, double threshold) {
    return {Kind::kSplit, feature, threshold};
  }
  static Gene MakeLeaf() { return {Kind::kLeaf, -1, -1.0}; }
  static Gene MakeNil() { return {}; }

  bool operator==(const Gene&) const = default;
};

std::ostream& operator<<(std::ostream& out, const Gene& gene);

// Genome of a depth-d tree: the 2^d - 1 slots of the balanced depth d-1
// structure in BFS order (left child first). The depth-d leaf level is
// implied and not stored.
struct EncodedTree {
  int depth = 1;
  std::vector<Gene> slots;

  bool operator==(const EncodedTree&) const = default;
};

std::ostream& operator<<(std::ostream& out, const EncodedTree& encoded);

EncodedTree Encode(const Tree& tree);

// Builds a valid tree from any genome in one top-down pass over reachable
// slots:
//  - a nil root gives a single leaf;
//  - a leaf or nil slot reached from a branch parent becomes a leaf, unless
//    one of its child slots holds a split, in which case it becomes a branch
//    with a random feature and a threshold drawn uniformly from that
//    feature's observed range in `train`;
//  - slots below a leaf are ignored;
//  - branches on the last encoded level get two implicit leaves.
// Leaf labels are then set by AssignLeafLabels on `train`. Random draws are
// consumed in BFS order, feature before threshold.
Tree DecodeAndRepair(const EncodedTree& encoded, const Dataset& train, Rng& rng);

}  // namespace tmo

#endif  // TMO_ENCODING_H_

#include "tmo/tao.h"

#include <algorithm>
#include <utility>

#include "tmo/greedy.h"

namespace tmo {

ReducedSets ComputeReducedSets(const Tree& tree, const Dataset& data) {
  ReducedSets sets(tree.capacity());
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto x = data.row(i);
    NodeId id = 0;
    while (true) {
      sets[id].push_back(i);
      if (!tree.is_branch(id)) break;
      const Node& n = tree.node(id);
      id = x[n.feature] <= n.threshold ? Tree::Left(id) : Tree::Right(id);
    }
  }
  return sets;
}

std::vector<Care> ComputeCareLabels(const Tree& tree, NodeId node,
                                    const Dataset& data,
                                    std::span<const std::size_t> rows) {
  std::vector<Care> care;
  care.reserve(rows.size());
  for (std::size_t i : rows) {
    const auto x = data.row(i);
    const int y = data.label(i);
    const bool left_ok = tree.PredictFrom(Tree::Left(node), x) == y;
    const bool right_ok = tree.PredictFrom(Tree::Right(node), x) == y;
    if (left_ok == right_ok) {
      care.push_back(Care::kDontCare);
    } else {
      care.push_back(left_ok ? Care::kPreferLeft : Care::kPreferRight);
    }
  }
  return care;
}

std::size_t CountCareErrors(const Dataset& data, std::span<const std::size_t> rows,
                            std::span<const Care> care, int feature, double threshold) {
  std::size_t errors = 0;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (care[k] == Care::kDontCare) continue;
    const bool goes_left = data.value(rows[k], feature) <= threshold;
    if (goes_left != (care[k] == Care::kPreferLeft)) ++errors;
  }
  return errors;
}

NodeUpdate OptimizeInternalNode(const Tree& tree, NodeId node, const Dataset& data,
                                std::span<const std::size_t> rows,
                                std::span<const Care> care) {
  const Node& incumbent = tree.node(node);
  NodeUpdate best{incumbent.feature, incumbent.threshold,
                  CountCareErrors(data, rows, care, incumbent.feature, incumbent.threshold),
                  false};
  const std::size_t n = rows.size();
  const auto prefer_left =
      static_cast<std::size_t>(std::count(care.begin(), care.end(), Care::kPreferLeft));
  const auto prefer_right =
      static_cast<std::size_t>(std::count(care.begin(), care.end(), Care::kPreferRight));
  if (best.care_errors == 0 || prefer_left + prefer_right == 0 || n < 2) return best;

  std::vector<std::pair<double, Care>> column(n);
  for (std::size_t f = 0; f < data.feature_count(); ++f) {
    for (std::size_t k = 0; k < n; ++k) column[k] = {data.value(rows[k], f), care[k]};
    std::sort(column.begin(), column.end());
    // Errors with the first k+1 rows on the left: right-preferring rows in
    // the prefix plus left-preferring rows in the suffix.
    std::size_t errors = prefer_left;
    for (std::size_t k = 0; k + 1 < n; ++k) {
      if (column[k].second == Care::kPreferLeft) --errors;
      if (column[k].second == Care::kPreferRight) ++errors;
      if (!(column[k].first < column[k + 1].first)) continue;
      if (errors < best.care_errors) {
        best = NodeUpdate{static_cast<int>(f),
                          MidpointThreshold(column[k].first, column[k + 1].first), errors,
                          true};
      }
    }
  }
  return best;
}

TaoResult TaoOptimizeTraced(Tree tree, const Dataset& data, const TaoOptions& options) {
  if (options.max_passes < 1) throw std::invalid_argument("max_passes must be >= 1");
  TaoResult result{std::move(tree), 0, {}};
  Tree& current = result.tree;
  std::size_t errors = CountErrors(current, data);
  result.initial_errors = errors;

  for (int pass = 0; pass < options.max_passes; ++pass) {
    for (int level = current.max_depth() - 1; level >= 0; --level) {
      const NodeId first = (NodeId{1} << level) - 1;
      const NodeId last = (NodeId{1} << (level + 1)) - 1;
      bool any_branch = false;
      for (NodeId id = first; id < last; ++id) any_branch |= current.is_branch(id);
      if (!any_branch) continue;

      const ReducedSets sets = ComputeReducedSets(current, data);
      for (NodeId id = first; id < last; ++id) {
        if (!current.is_branch(id) || sets[id].empty()) continue;
        const std::vector<Care> care = ComputeCareLabels(current, id, data, sets[id]);
        const NodeUpdate update = OptimizeInternalNode(current, id, data, sets[id], care);
        if (update.changed) current.Split(id, update.feature, update.threshold);
        if (options.on_node) options.on_node(id, sets[id], care, update);
      }
      current = AssignLeafLabels(std::move(current), data);
    }
    const std::size_t after = CountErrors(current, data);
    result.pass_errors.push_back(after);
    if (after >= errors) break;
    errors = after;
  }
  return result;
}

Tree TaoOptimize(Tree tree, const Dataset& data, int max_passes) {
  TaoOptions options;
  options.max_passes = max_passes;
  return TaoOptimizeTraced(std::move(tree), data, options).tree;
}

}  // namespace tmo

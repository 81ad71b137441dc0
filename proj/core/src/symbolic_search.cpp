#include "wfts/symbolic_search.hpp"

#include <deque>
#include <sstream>

namespace wfts {

DfsOrder dfsFts(const Wfts& w) {
  const auto& fm = w.featureModel();
  std::vector<ProductSet> white(w.stateCount(), fm.all());
  std::vector<DfsEntry> entries;

  struct Frame {
    StateId state;
    ProductSet exploring;
    std::size_t edge = 0;
  };
  std::vector<Frame> stack;

  auto enter = [&](StateId u, const ProductSet& lambda) {
    ProductSet exploring = white[u] & lambda;
    white[u] -= lambda;
    stack.push_back({u, std::move(exploring), 0});
  };

  for (StateId root = 0; root < w.stateCount(); ++root) {
    if (white[root].empty())
      continue;
    enter(root, white[root]);
    while (!stack.empty()) {
      Frame& top = stack.back();
      const auto& out = w.outgoing(top.state);
      if (top.edge < out.size()) {
        const std::size_t t = out[top.edge++];
        const StateId v = w.transitions()[t].target;
        // Only products still exploring this state follow the edge.
        ProductSet next = w.guardSet(t) & top.exploring;
        if (white[v].intersects(next))
          enter(v, next);
      } else {
        entries.push_back({top.state, std::move(top.exploring), entries.size() + 1});
        stack.pop_back();
      }
    }
  }
  return DfsOrder(std::move(entries));
}

FinishingTimesTree buildFinishingTimesTree(const DfsOrder& order, const FeatureModel& fm) {
  std::vector<TreeNode> nodes;
  TreeNode root;
  root.edgeLabel = fm.all();
  root.pathProducts = fm.all();
  root.maxO = order.size() + 1;
  nodes.push_back(std::move(root));

  std::deque<std::size_t> queue = {0};
  while (!queue.empty()) {
    const std::size_t id = queue.front();
    queue.pop_front();
    const ProductSet path = nodes[id].pathProducts;
    ProductSet notChildren = fm.all();
    for (std::size_t j = nodes[id].maxO - 1; j > 0; --j) {
      // Every product on the path has found its child.
      if (!notChildren.intersects(path))
        break;
      const DfsEntry& entry = order.at(j);
      ProductSet label = entry.products & notChildren;
      if (!label.intersects(path))
        continue;
      TreeNode child;
      child.state = entry.state;
      child.parent = id;
      child.depth = nodes[id].depth + 1;
      child.pathProducts = label & path;
      child.edgeLabel = std::move(label);
      child.maxO = j;
      notChildren -= entry.products;
      nodes[id].children.push_back(nodes.size());
      queue.push_back(nodes.size());
      nodes.push_back(std::move(child));
    }
  }
  return FinishingTimesTree(std::move(nodes));
}

std::vector<std::size_t> FinishingTimesTree::leaves() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    if (nodes_[i].children.empty())
      out.push_back(i);
  return out;
}

std::vector<std::size_t> FinishingTimesTree::pathFor(std::size_t product) const {
  std::vector<std::size_t> path = {root()};
  for (;;) {
    const auto& n = nodes_[path.back()];
    std::size_t next = TreeNode::npos;
    for (std::size_t c : n.children) {
      if (nodes_[c].edgeLabel.contains(product)) {
        next = c;
        break;
      }
    }
    if (next == TreeNode::npos)
      return path;
    path.push_back(next);
  }
}

std::string FinishingTimesTree::dump(const Wfts& w) const {
  std::ostringstream out;
  const auto& fm = w.featureModel();
  std::vector<std::size_t> stack = {root()};
  while (!stack.empty()) {
    const std::size_t id = stack.back();
    stack.pop_back();
    const auto& n = nodes_[id];
    out << std::string(2 * n.depth, ' ');
    if (n.isRoot())
      out << "root";
    else
      out << w.stateName(n.state) << " [" << describe(n.edgeLabel, fm).toString() << "]";
    out << "\n";
    for (auto it = n.children.rbegin(); it != n.children.rend(); ++it)
      stack.push_back(*it);
  }
  return out.str();
}

std::string FinishingTimesTree::toDot(const Wfts& w) const {
  std::ostringstream out;
  const auto& fm = w.featureModel();
  out << "digraph finishing_times {\n  n0 [label=\"root\"];\n";
  for (std::size_t i = 1; i < nodes_.size(); ++i) {
    const auto& n = nodes_[i];
    out << "  n" << i << " [label=\"" << w.stateName(n.state) << "\"];\n";
    out << "  n" << n.parent << " -> n" << i << " [label=\"" << describe(n.edgeLabel, fm).toString()
        << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

} // namespace wfts

#include "treeval/dag.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace treeval {

void check_dag(const PebbleGraph& g) {
  int n = g.size();
  // Kahn's algorithm over child -> parent edges.
  std::vector<int> pending(n, 0);
  std::vector<std::vector<int>> parents(n);
  for (int v = 0; v < n; ++v) {
    pending[v] = static_cast<int>(g.children[v].size());
    for (int c : g.children[v]) parents[c].push_back(v);
  }
  std::vector<int> order;
  for (int v = 0; v < n; ++v)
    if (pending[v] == 0) order.push_back(v);
  for (size_t i = 0; i < order.size(); ++i)
    for (int p : parents[order[i]])
      if (--pending[p] == 0) order.push_back(p);
  if (static_cast<int>(order.size()) != n) throw std::invalid_argument("dag: cycle detected");
  // Every node must reach a sink.
  std::vector<bool> reaches(n, false);
  std::vector<int> stack;
  for (int s : g.sinks) {
    reaches[s] = true;
    stack.push_back(s);
  }
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int c : g.children[v])
      if (!reaches[c]) {
        reaches[c] = true;
        stack.push_back(c);
      }
  }
  for (int v = 0; v < n; ++v)
    if (!reaches[v]) throw std::invalid_argument("dag: node " + g.names[v] + " reaches no sink");
}

namespace {

// Inorder rank of every tree node; the first floor(d/2) children are
// visited before their parent.
std::vector<long long> inorder_ranks(const TreeShape& shape) {
  std::vector<long long> rank(shape.node_count() + 1, 0);
  long long counter = 0;
  struct Frame {
    long long node;
    int next;
  };
  std::vector<Frame> stack{{1, 0}};
  int before = shape.degree / 2;
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (shape.is_leaf(f.node)) {
      rank[f.node] = counter++;
      stack.pop_back();
      continue;
    }
    if (f.next == before) rank[f.node] = counter++;
    if (f.next < shape.degree) {
      stack.push_back({shape.child(f.node, f.next++), 0});
      continue;
    }
    stack.pop_back();
  }
  return rank;
}

PebbleGraph build_split(int d, int h, int c, bool prune) {
  if (c < 1) throw std::invalid_argument("build_G: c >= 1 required");
  TreeShape shape(d, h);
  long long n_tree = shape.node_count();
  PebbleGraph g;
  int total = static_cast<int>(n_tree * c + 1);
  g.children.resize(total);
  g.names.resize(total);
  auto copy_index = [&](long long v, int i) {  // i in [0, c)
    return static_cast<int>((v - 1) * c + i);
  };
  for (long long v = 1; v <= n_tree; ++v)
    for (int i = 0; i < c; ++i)
      g.names[copy_index(v, i)] = std::to_string(v) + "." + std::to_string(i + 1);
  int root = total - 1;
  g.names[root] = "root";
  g.sinks = {root};
  for (int i = 0; i < c; ++i) g.children[root].push_back(copy_index(1, i));
  std::vector<long long> rank = inorder_ranks(shape);
  for (long long v = 1; v <= n_tree; ++v) {
    if (shape.is_leaf(v)) continue;
    std::vector<long long> kids;
    for (int j = 0; j < d; ++j) kids.push_back(shape.child(v, j));
    std::sort(kids.begin(), kids.end(),
              [&](long long a, long long b) { return rank[a] < rank[b]; });
    // All copies of all tree children, ordered by (inorder rank, copy index).
    std::vector<int> ordered;
    for (long long u : kids)
      for (int i = 0; i < c; ++i) ordered.push_back(copy_index(u, i));
    for (int i = 0; i < c; ++i) {
      // Copy i+1 (1-based) drops its i smallest and c-1-i largest children.
      int from = prune ? i : 0;
      int to = static_cast<int>(ordered.size()) - (prune ? c - 1 - i : 0);
      g.children[copy_index(v, i)].assign(ordered.begin() + from, ordered.begin() + to);
    }
  }
  check_dag(g);
  return g;
}

}  // namespace

PebbleGraph build_G(int d, int h, int c) { return build_split(d, h, c, false); }

PebbleGraph build_Gprime(int d, int h, int c) { return build_split(d, h, c, true); }

std::string dag_to_text(const PebbleGraph& g) {
  std::vector<std::string> lines;
  std::vector<bool> mentioned(g.size(), false);
  for (int v = 0; v < g.size(); ++v)
    for (int ch : g.children[v]) {
      lines.push_back(g.names[ch] + " " + g.names[v]);
      mentioned[ch] = mentioned[v] = true;
    }
  for (int v = 0; v < g.size(); ++v)
    if (!mentioned[v]) lines.push_back("node " + g.names[v]);
  std::sort(lines.begin(), lines.end());
  std::ostringstream out;
  for (const auto& line : lines) out << line << "\n";
  return out.str();
}

PebbleGraph dag_from_text(const std::string& text) {
  std::istringstream in(text);
  std::map<std::string, int> ids;
  PebbleGraph g;
  auto intern = [&](const std::string& name) {
    auto it = ids.find(name);
    if (it != ids.end()) return it->second;
    int id = g.size();
    ids.emplace(name, id);
    g.names.push_back(name);
    g.children.emplace_back();
    return id;
  };
  std::string line;
  std::vector<std::pair<int, int>> edges;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string a, b;
    if (!(ls >> a)) continue;
    if (a == "node") {
      ls >> b;
      intern(b);
      continue;
    }
    if (!(ls >> b)) throw std::invalid_argument("dag: expected 'child parent' line");
    int child = intern(a), parent = intern(b);
    edges.emplace_back(child, parent);
  }
  std::vector<bool> is_child(g.size(), false);
  for (auto [child, parent] : edges) {
    g.children[parent].push_back(child);
    is_child[child] = true;
  }
  for (int v = 0; v < g.size(); ++v)
    if (!is_child[v]) g.sinks.push_back(v);
  check_dag(g);
  return g;
}

}  // namespace treeval

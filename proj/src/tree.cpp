#include "treedet/tree.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <set>
#include <string>

#include "treedet/error.hpp"

namespace treedet {

namespace {

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t i) {
  while (parent[i] != i) {
    parent[i] = parent[parent[i]];
    i = parent[i];
  }
  return i;
}

}  // namespace

WeightedTree WeightedTree::validate(std::size_t n, std::vector<Edge> edges) {
  if (n == 0) throw Error(Errc::not_a_tree, "a tree needs at least one vertex");
  for (const auto& e : edges) {
    if (e.u < 1 || e.v < 1 || static_cast<std::size_t>(e.u) > n || static_cast<std::size_t>(e.v) > n) {
      throw Error(Errc::bad_vertex_label, "edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                              ") outside 1.." + std::to_string(n));
    }
    if (e.u == e.v) throw Error(Errc::not_a_tree, "self-loop at vertex " + std::to_string(e.u));
  }
  std::set<std::pair<Vertex, Vertex>> seen;
  for (const auto& e : edges) {
    if (!seen.emplace(std::min(e.u, e.v), std::max(e.u, e.v)).second) {
      throw Error(Errc::not_a_tree, "duplicate edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ")");
    }
  }
  if (edges.size() != n - 1) {
    throw Error(Errc::not_a_tree, std::to_string(edges.size()) + " edges on " + std::to_string(n) +
                                      " vertices, expected " + std::to_string(n - 1));
  }
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  for (const auto& e : edges) {
    const auto a = find_root(parent, static_cast<std::size_t>(e.u - 1));
    const auto b = find_root(parent, static_cast<std::size_t>(e.v - 1));
    if (a == b) throw Error(Errc::not_a_tree, "cycle through edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ")");
    parent[a] = b;
  }
  // n - 1 edges without a cycle is connected.

  WeightedTree tree;
  tree.n_ = n;
  tree.adjacency_.resize(n);
  for (const auto& e : edges) {
    tree.adjacency_[static_cast<std::size_t>(e.u - 1)].push_back({e.v, e.w});
    tree.adjacency_[static_cast<std::size_t>(e.v - 1)].push_back({e.u, e.w});
  }
  tree.edges_ = std::move(edges);
  return tree;
}

bool WeightedTree::has_unit_weights() const noexcept {
  return std::all_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.w == 1; });
}

IntMatrix weighted_distance_matrix(const WeightedTree& tree) {
  const auto n = tree.vertex_count();
  IntMatrix d(n);
  std::vector<Vertex> stack;
  std::vector<bool> visited(n);
  for (std::size_t root = 0; root < n; ++root) {
    std::fill(visited.begin(), visited.end(), false);
    visited[root] = true;
    stack.assign(1, static_cast<Vertex>(root + 1));
    while (!stack.empty()) {
      const Vertex u = stack.back();
      stack.pop_back();
      for (const auto& [v, w] : tree.neighbors(u)) {
        const auto vi = static_cast<std::size_t>(v - 1);
        if (visited[vi]) continue;
        visited[vi] = true;
        d(root, vi) = d(root, static_cast<std::size_t>(u - 1)) + w;
        stack.push_back(v);
      }
    }
  }
  return d;
}

std::vector<Vertex> leaves(const WeightedTree& tree) {
  std::vector<Vertex> out;
  for (Vertex v = 1; static_cast<std::size_t>(v) <= tree.vertex_count(); ++v)
    if (tree.is_leaf(v)) out.push_back(v);
  return out;
}

Edge pendant_edge(const WeightedTree& tree, Vertex leaf) {
  if (leaf < 1 || static_cast<std::size_t>(leaf) > tree.vertex_count()) {
    throw Error(Errc::bad_vertex_label, "vertex " + std::to_string(leaf));
  }
  if (!tree.is_leaf(leaf)) throw Error(Errc::not_a_leaf, "vertex " + std::to_string(leaf) + " has degree " +
                                                             std::to_string(tree.degree(leaf)));
  for (const auto& e : tree.edges())
    if (e.u == leaf || e.v == leaf) return e;
  throw Error(Errc::not_a_leaf, "vertex " + std::to_string(leaf));  // unreachable for a valid tree
}

Relabeled delete_vertices(const WeightedTree& tree, std::span<const Vertex> vertices) {
  const auto n = tree.vertex_count();
  std::vector<bool> removed(n, false);
  for (Vertex v : vertices) {
    if (v < 1 || static_cast<std::size_t>(v) > n) throw Error(Errc::bad_vertex_label, "vertex " + std::to_string(v));
    removed[static_cast<std::size_t>(v - 1)] = true;
  }
  std::vector<Vertex> new_label(n, 0);
  Vertex next = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (!removed[i]) new_label[i] = ++next;
  if (next == 0) throw Error(Errc::disconnects_tree, "no vertices left");

  std::vector<Edge> kept;
  for (const auto& e : tree.edges()) {
    const auto a = new_label[static_cast<std::size_t>(e.u - 1)];
    const auto b = new_label[static_cast<std::size_t>(e.v - 1)];
    if (a != 0 && b != 0) kept.push_back({a, b, e.w});
  }
  if (kept.size() + 1 != static_cast<std::size_t>(next)) {
    throw Error(Errc::disconnects_tree, "remaining " + std::to_string(next) + " vertices are not connected");
  }
  return {WeightedTree::validate(static_cast<std::size_t>(next), std::move(kept)), std::move(new_label)};
}

WeightedTree relabel(const WeightedTree& tree, std::span<const Vertex> new_label) {
  const auto n = tree.vertex_count();
  if (new_label.size() != n) throw Error(Errc::bad_config, "relabeling has wrong length");
  std::vector<bool> hit(n, false);
  for (Vertex v : new_label) {
    if (v < 1 || static_cast<std::size_t>(v) > n || hit[static_cast<std::size_t>(v - 1)]) {
      throw Error(Errc::bad_config, "relabeling is not a permutation of 1.." + std::to_string(n));
    }
    hit[static_cast<std::size_t>(v - 1)] = true;
  }
  std::vector<Edge> edges;
  edges.reserve(tree.edges().size());
  for (const auto& e : tree.edges())
    edges.push_back({new_label[static_cast<std::size_t>(e.u - 1)], new_label[static_cast<std::size_t>(e.v - 1)], e.w});
  return WeightedTree::validate(n, std::move(edges));
}

WeightedTree with_endpoints(const WeightedTree& tree, Vertex first, Vertex last) {
  const auto n = tree.vertex_count();
  if (first < 1 || last < 1 || static_cast<std::size_t>(first) > n || static_cast<std::size_t>(last) > n) {
    throw Error(Errc::bad_vertex_label, "endpoint outside 1.." + std::to_string(n));
  }
  if (first == last) throw Error(Errc::same_leaf, "endpoints coincide at vertex " + std::to_string(first));
  std::vector<Vertex> label(n, 0);
  label[static_cast<std::size_t>(first - 1)] = 1;
  label[static_cast<std::size_t>(last - 1)] = static_cast<Vertex>(n);
  Vertex next = 1;
  for (std::size_t i = 0; i < n; ++i)
    if (label[i] == 0) label[i] = ++next;
  return relabel(tree, label);
}

WeightedTree with_random_leaf_endpoints(const WeightedTree& tree, std::mt19937_64& rng) {
  auto pool = leaves(tree);
  if (pool.size() < 2) throw Error(Errc::bad_size, "need a tree with at least two leaves");
  std::shuffle(pool.begin(), pool.end(), rng);
  return with_endpoints(tree, pool[0], pool[1]);
}

WeightedTree path_tree(std::size_t n, Weight w) {
  std::vector<Weight> weights(n == 0 ? 0 : n - 1, w);
  if (n == 0) throw Error(Errc::not_a_tree, "a tree needs at least one vertex");
  return path_tree(weights);
}

WeightedTree path_tree(std::span<const Weight> weights) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < weights.size(); ++i)
    edges.push_back({static_cast<Vertex>(i + 1), static_cast<Vertex>(i + 2), weights[i]});
  return WeightedTree::validate(weights.size() + 1, std::move(edges));
}

WeightedTree example_1_1() {
  return WeightedTree::validate(4, {{1, 2, 1}, {1, 3, 1}, {1, 4, 1}});
}

WeightedTree example_1_2() {
  return WeightedTree::validate(8, {{1, 2, 1}, {2, 3, 1}, {3, 4, 1}, {5, 6, 1}, {6, 7, 1}, {2, 7, 1}, {7, 8, 1}});
}

// --- Prüfer ----------------------------------------------------------------

std::vector<Vertex> prufer_encode(const WeightedTree& tree) {
  const auto n = tree.vertex_count();
  if (n <= 2) return {};
  std::vector<std::size_t> degree(n + 1);
  for (Vertex v = 1; static_cast<std::size_t>(v) <= n; ++v) degree[static_cast<std::size_t>(v)] = tree.degree(v);
  std::priority_queue<Vertex, std::vector<Vertex>, std::greater<>> leaf_queue;
  for (Vertex v = 1; static_cast<std::size_t>(v) <= n; ++v)
    if (degree[static_cast<std::size_t>(v)] == 1) leaf_queue.push(v);
  std::vector<bool> removed(n + 1, false);
  std::vector<Vertex> seq;
  seq.reserve(n - 2);
  while (seq.size() < n - 2) {
    const Vertex leaf = leaf_queue.top();
    leaf_queue.pop();
    removed[static_cast<std::size_t>(leaf)] = true;
    for (const auto& nb : tree.neighbors(leaf)) {
      const auto u = static_cast<std::size_t>(nb.vertex);
      if (removed[u]) continue;
      seq.push_back(nb.vertex);
      if (--degree[u] == 1) leaf_queue.push(nb.vertex);
    }
  }
  return seq;
}

std::vector<std::pair<Vertex, Vertex>> prufer_decode(std::span<const Vertex> sequence, std::size_t n) {
  if (n == 0) throw Error(Errc::bad_size, "n must be positive");
  if (n == 1) {
    if (!sequence.empty()) throw Error(Errc::bad_size, "sequence too long for n = 1");
    return {};
  }
  if (sequence.size() != n - 2) throw Error(Errc::bad_size, "Prüfer sequence must have length n - 2");
  std::vector<std::size_t> degree(n + 1, 1);
  for (Vertex v : sequence) {
    if (v < 1 || static_cast<std::size_t>(v) > n) throw Error(Errc::bad_vertex_label, "vertex " + std::to_string(v));
    ++degree[static_cast<std::size_t>(v)];
  }
  std::priority_queue<Vertex, std::vector<Vertex>, std::greater<>> leaf_queue;
  for (Vertex v = 1; static_cast<std::size_t>(v) <= n; ++v)
    if (degree[static_cast<std::size_t>(v)] == 1) leaf_queue.push(v);
  std::vector<std::pair<Vertex, Vertex>> edges;
  edges.reserve(n - 1);
  for (Vertex v : sequence) {
    const Vertex leaf = leaf_queue.top();
    leaf_queue.pop();
    edges.emplace_back(std::min(leaf, v), std::max(leaf, v));
    if (--degree[static_cast<std::size_t>(v)] == 1) leaf_queue.push(v);
  }
  const Vertex a = leaf_queue.top();
  leaf_queue.pop();
  const Vertex b = leaf_queue.top();
  edges.emplace_back(std::min(a, b), std::max(a, b));
  return edges;
}

TreeGenerator::TreeGenerator(TreeGenSpec spec, WeightFn weights)
    : spec_(spec), weight_fn_(std::move(weights)), rng_(spec.seed) {
  if (spec_.n < 1) throw Error(Errc::bad_config, "tree generation needs n >= 1");
  if (spec_.weight_min > spec_.weight_max) throw Error(Errc::bad_config, "weight_min > weight_max");
  if (spec_.mode == GenMode::exhaustive) {
    if (spec_.n > spec_.exhaustive_cap) {
      throw Error(Errc::cap_exceeded, "exhaustive enumeration at n = " + std::to_string(spec_.n) +
                                          " exceeds cap " + std::to_string(spec_.exhaustive_cap));
    }
    counter_.assign(spec_.n >= 2 ? spec_.n - 2 : 0, 1);
  }
}

std::uint64_t TreeGenerator::exhaustive_count() const noexcept {
  if (spec_.n <= 2) return 1;
  std::uint64_t c = 1;
  for (std::size_t i = 0; i + 2 < spec_.n; ++i) c *= spec_.n;
  return c;
}

WeightedTree TreeGenerator::build(std::span<const Vertex> sequence) {
  const auto pairs = prufer_decode(sequence, spec_.n);
  std::uniform_int_distribution<Weight> dist(spec_.weight_min, spec_.weight_max);
  std::vector<Edge> edges;
  edges.reserve(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto [u, v] = pairs[i];
    edges.push_back({u, v, weight_fn_ ? weight_fn_(i, u, v) : dist(rng_)});
  }
  return WeightedTree::validate(spec_.n, std::move(edges));
}

std::optional<WeightedTree> TreeGenerator::next() {
  if (spec_.mode == GenMode::random) {
    std::vector<Vertex> seq(spec_.n >= 2 ? spec_.n - 2 : 0);
    std::uniform_int_distribution<Vertex> pick(1, static_cast<Vertex>(spec_.n));
    for (auto& v : seq) v = pick(rng_);
    return build(seq);
  }
  if (exhausted_) return std::nullopt;
  auto tree = build(counter_);
  // Advance the base-n odometer; wrap-around means every sequence was seen.
  std::size_t i = counter_.size();
  for (;;) {
    if (i == 0) {
      exhausted_ = true;
      break;
    }
    --i;
    if (static_cast<std::size_t>(counter_[i]) < spec_.n) {
      ++counter_[i];
      break;
    }
    counter_[i] = 1;
  }
  return tree;
}

std::vector<WeightedTree> generate(const TreeGenSpec& spec, std::size_t count, WeightFn weights) {
  TreeGenerator gen(spec, std::move(weights));
  std::vector<WeightedTree> out;
  while (out.size() < count) {
    auto t = gen.next();
    if (!t) break;
    out.push_back(std::move(*t));
  }
  return out;
}

}  // namespace treedet

#pragma once

// Weighted labeled trees on vertices 1..n.

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <vector>

namespace treedet {

using Vertex = std::int32_t;  // 1-based label
using Weight = std::int64_t;

struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  Weight w = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

// Dense n x n integer matrix; row/column i belongs to vertex i + 1.
class IntMatrix {
 public:
  IntMatrix() = default;
  explicit IntMatrix(std::size_t n) : n_(n), data_(n * n, 0) {}

  std::size_t size() const noexcept { return n_; }
  std::int64_t& operator()(std::size_t r, std::size_t c) { return data_[r * n_ + c]; }
  std::int64_t operator()(std::size_t r, std::size_t c) const { return data_[r * n_ + c]; }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::int64_t> data_;
};

class WeightedTree {
 public:
  struct Neighbor {
    Vertex vertex;
    Weight weight;
  };

  // Checks label range, edge count, duplicates, cycles and connectivity.
  // Throws Error{bad_vertex_label} or Error{not_a_tree}.
  static WeightedTree validate(std::size_t n, std::vector<Edge> edges);

  std::size_t vertex_count() const noexcept { return n_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  std::span<const Neighbor> neighbors(Vertex v) const { return adjacency_[static_cast<std::size_t>(v - 1)]; }
  std::size_t degree(Vertex v) const { return neighbors(v).size(); }
  bool is_leaf(Vertex v) const { return degree(v) == 1; }
  bool has_unit_weights() const noexcept;

  friend bool operator==(const WeightedTree& a, const WeightedTree& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  WeightedTree() = default;

  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Neighbor>> adjacency_;
};

// d(u, v) for all pairs, one traversal per root.
IntMatrix weighted_distance_matrix(const WeightedTree& tree);

// Vertices of degree one, ascending.
std::vector<Vertex> leaves(const WeightedTree& tree);

// The unique edge at a leaf. Throws Error{not_a_leaf}.
Edge pendant_edge(const WeightedTree& tree, Vertex leaf);

struct Relabeled {
  WeightedTree tree;
  // Indexed by old label - 1; 0 marks a deleted vertex.
  std::vector<Vertex> new_label;
};

// Induced subtree on the remaining vertices, relabeled 1..m in the original
// order. Throws Error{disconnects_tree} if the remainder is not a tree.
Relabeled delete_vertices(const WeightedTree& tree, std::span<const Vertex> vertices);

// new_label[old - 1] is the new label of vertex old; must be a permutation.
WeightedTree relabel(const WeightedTree& tree, std::span<const Vertex> new_label);

// Relabels so that `first` becomes vertex 1 and `last` becomes vertex n. The
// remaining vertices keep their relative order.
WeightedTree with_endpoints(const WeightedTree& tree, Vertex first, Vertex last);

// Picks two distinct leaves uniformly at random and moves them to v_1 and v_n.
// Needs n >= 2.
WeightedTree with_random_leaf_endpoints(const WeightedTree& tree, std::mt19937_64& rng);

WeightedTree path_tree(std::size_t n, Weight w = 1);
WeightedTree path_tree(std::span<const Weight> weights);

// Fixture trees behind `example 1.1` and `example 1.2`: a star centred at
// v_1, and an 8-vertex tree with leaves v_1 and v_8.
WeightedTree example_1_1();
WeightedTree example_1_2();

// --- Prüfer sequences --------------------------------------------------------

std::vector<Vertex> prufer_encode(const WeightedTree& tree);
// Edge endpoints of the labeled tree on n vertices with the given sequence.
std::vector<std::pair<Vertex, Vertex>> prufer_decode(std::span<const Vertex> sequence, std::size_t n);

enum class GenMode { random, exhaustive };

struct TreeGenSpec {
  std::size_t n = 2;
  Weight weight_min = 1;
  Weight weight_max = 1;
  std::uint64_t seed = 0;
  GenMode mode = GenMode::random;
  std::size_t exhaustive_cap = 8;
};

// Weight for the edge_index-th edge of a decoded tree.
using WeightFn = std::function<Weight(std::size_t edge_index, Vertex u, Vertex v)>;

// Random mode decodes uniformly random Prüfer sequences and never ends.
// Exhaustive mode yields each of the n^(n-2) labeled trees exactly once.
// Without a WeightFn, weights are uniform on [weight_min, weight_max].
class TreeGenerator {
 public:
  // Throws Error{bad_config} for an invalid spec, Error{cap_exceeded} for
  // exhaustive n above the cap.
  explicit TreeGenerator(TreeGenSpec spec, WeightFn weights = {});

  std::optional<WeightedTree> next();

  // Number of trees in exhaustive mode.
  std::uint64_t exhaustive_count() const noexcept;

 private:
  WeightedTree build(std::span<const Vertex> sequence);

  TreeGenSpec spec_;
  WeightFn weight_fn_;
  std::mt19937_64 rng_;
  std::vector<Vertex> counter_;
  bool exhausted_ = false;
};

// Convenience: the first `count` trees of a generator.
std::vector<WeightedTree> generate(const TreeGenSpec& spec, std::size_t count, WeightFn weights = {});

}  // namespace treedet

#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <random>
#include <set>

#include "treedet/error.hpp"
#include "treedet/tree.hpp"
#include "treedet/tree_io.hpp"

using namespace treedet;

namespace {

template <class F>
void expect_error(Errc code, F&& f) {
  try {
    f();
    ADD_FAILURE() << "no error, expected " << errc_name(code);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

// All-pairs distances by Floyd-Warshall on the edge list.
std::vector<std::vector<long>> floyd(const WeightedTree& t) {
  const auto n = t.vertex_count();
  const long inf = 1L << 50;
  std::vector<std::vector<long>> d(n, std::vector<long>(n, inf));
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 0, reach[i][i] = true;
  for (const auto& e : t.edges()) {
    d[e.u - 1][e.v - 1] = d[e.v - 1][e.u - 1] = e.w;
    reach[e.u - 1][e.v - 1] = reach[e.v - 1][e.u - 1] = true;
  }
  // Paths are unique, so "shortest" is just "the" path even with negative weights.
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j && reach[i][k] && reach[k][j] && !reach[i][j] && i != k && j != k) {
          d[i][j] = d[i][k] + d[k][j];
          reach[i][j] = true;
        }
  return d;
}

std::vector<WeightedTree> random_trees(std::size_t n, std::size_t count, Weight lo, Weight hi, std::uint64_t seed) {
  TreeGenSpec spec;
  spec.n = n;
  spec.weight_min = lo;
  spec.weight_max = hi;
  spec.seed = seed;
  return generate(spec, count);
}

}  // namespace

TEST(Tree, ValidateRejectsBadInput) {
  expect_error(Errc::bad_vertex_label, [] { WeightedTree::validate(3, {{1, 4, 1}, {1, 2, 1}}); });
  expect_error(Errc::bad_vertex_label, [] { WeightedTree::validate(3, {{0, 2, 1}, {1, 3, 1}}); });
  expect_error(Errc::not_a_tree, [] { WeightedTree::validate(3, {{1, 2, 1}}); });
  expect_error(Errc::not_a_tree, [] { WeightedTree::validate(3, {{1, 2, 1}, {2, 1, 1}}); });
  expect_error(Errc::not_a_tree, [] { WeightedTree::validate(4, {{1, 2, 1}, {2, 3, 1}, {3, 1, 1}}); });
  expect_error(Errc::not_a_tree, [] { WeightedTree::validate(2, {{1, 1, 1}}); });
  EXPECT_EQ(WeightedTree::validate(1, {}).vertex_count(), 1u);
}

TEST(Tree, ExampleFixtures) {
  const auto star = example_1_1();
  EXPECT_EQ(star.vertex_count(), 4u);
  EXPECT_EQ(leaves(star), (std::vector<Vertex>{2, 3, 4}));
  const auto t = example_1_2();
  EXPECT_EQ(t.vertex_count(), 8u);
  EXPECT_EQ(leaves(t), (std::vector<Vertex>{1, 4, 5, 8}));
  EXPECT_TRUE(t.has_unit_weights());
}

TEST(Tree, PendantEdge) {
  const auto t = example_1_2();
  EXPECT_EQ(pendant_edge(t, 8), (Edge{7, 8, 1}));
  expect_error(Errc::not_a_leaf, [&] { pendant_edge(t, 2); });
}

TEST(Tree, PathDistances) {
  const std::array<Weight, 3> w = {2, -1, 5};
  const auto p = path_tree(w);
  const auto d = weighted_distance_matrix(p);
  EXPECT_EQ(d(0, 3), 6);
  EXPECT_EQ(d(1, 2), -1);
  EXPECT_EQ(d(3, 1), 4);
}

TEST(TreeProperty, DistancesMatchFloydWarshall) {
  for (std::size_t n = 1; n <= 9; ++n) {
    for (const auto& t : random_trees(n, 40, -5, 5, n)) {
      const auto d = weighted_distance_matrix(t);
      const auto o = floyd(t);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) ASSERT_EQ(d(i, j), o[i][j]);
    }
  }
}

TEST(TreeProperty, DistanceMetricAndFourPoint) {
  for (const auto& t : random_trees(8, 100, 1, 6, 42)) {
    const auto d = weighted_distance_matrix(t);
    for (std::size_t i = 0; i < 8; ++i) {
      EXPECT_EQ(d(i, i), 0);
      for (std::size_t j = 0; j < 8; ++j) {
        EXPECT_EQ(d(i, j), d(j, i));
        if (i != j) EXPECT_GT(d(i, j), 0);
      }
    }
    // The two largest of the three pair sums coincide.
    for (std::size_t a = 0; a < 8; ++a)
      for (std::size_t b = a + 1; b < 8; ++b)
        for (std::size_t c = b + 1; c < 8; ++c)
          for (std::size_t e = c + 1; e < 8; ++e) {
            std::array<long, 3> s = {d(a, b) + d(c, e), d(a, c) + d(b, e), d(a, e) + d(b, c)};
            std::sort(s.begin(), s.end());
            EXPECT_EQ(s[1], s[2]);
          }
  }
}

TEST(TreeProperty, AtLeastTwoLeaves) {
  for (std::size_t n = 2; n <= 10; ++n)
    for (const auto& t : random_trees(n, 50, 1, 1, 100 + n)) EXPECT_GE(leaves(t).size(), 2u);
}

TEST(TreeProperty, PruferRoundTrip) {
  for (std::size_t n = 2; n <= 6; ++n) {
    TreeGenSpec spec;
    spec.n = n;
    spec.mode = GenMode::exhaustive;
    TreeGenerator gen(spec);
    std::set<std::vector<Vertex>> seen;
    while (auto t = gen.next()) {
      const auto seq = prufer_encode(*t);
      EXPECT_EQ(seq.size(), n - 2);
      EXPECT_TRUE(seen.insert(seq).second);
      auto edges = prufer_decode(seq, n);
      std::vector<Edge> rebuilt;
      for (auto [u, v] : edges) rebuilt.push_back({u, v, 1});
      EXPECT_EQ(prufer_encode(WeightedTree::validate(n, rebuilt)), seq);
    }
    std::size_t expected = 1;
    for (std::size_t i = 2; i < n; ++i) expected *= n;
    EXPECT_EQ(seen.size(), expected) << n;
    EXPECT_EQ(gen.exhaustive_count(), expected);
  }
}

TEST(Tree, GeneratorErrors) {
  TreeGenSpec spec;
  spec.n = 9;
  spec.mode = GenMode::exhaustive;
  expect_error(Errc::cap_exceeded, [&] { TreeGenerator gen(spec); });
  spec.n = 0;
  spec.mode = GenMode::random;
  expect_error(Errc::bad_config, [&] { TreeGenerator gen(spec); });
  spec.n = 3;
  spec.weight_min = 2;
  spec.weight_max = 1;
  expect_error(Errc::bad_config, [&] { TreeGenerator gen(spec); });
}

TEST(Tree, GeneratorIsSeeded) {
  EXPECT_EQ(random_trees(7, 20, -5, 5, 3), random_trees(7, 20, -5, 5, 3));
  EXPECT_NE(random_trees(7, 20, -5, 5, 3), random_trees(7, 20, -5, 5, 4));
}

TEST(Tree, CustomWeightFunction) {
  TreeGenSpec spec;
  spec.n = 5;
  const auto trees = generate(spec, 3, [](std::size_t i, Vertex, Vertex) { return static_cast<Weight>(i + 10); });
  for (const auto& t : trees)
    for (std::size_t i = 0; i < t.edges().size(); ++i) EXPECT_GE(t.edges()[i].w, 10);
}

TEST(Tree, WithEndpointsPreservesDistances) {
  const auto t = example_1_2();
  const auto r = with_endpoints(t, 4, 5);
  EXPECT_TRUE(r.is_leaf(1));
  EXPECT_TRUE(r.is_leaf(8));
  // old 4 -> new 1, old 5 -> new 8
  EXPECT_EQ(weighted_distance_matrix(r)(0, 7), weighted_distance_matrix(t)(3, 4));
  std::mt19937_64 rng(1);
  for (const auto& s : random_trees(9, 30, 1, 3, 8)) {
    const auto u = with_random_leaf_endpoints(s, rng);
    EXPECT_TRUE(u.is_leaf(1));
    EXPECT_TRUE(u.is_leaf(9));
  }
}

TEST(Tree, DeleteVertices) {
  const auto t = example_1_2();
  const std::array<Vertex, 2> gone = {1, 8};
  const auto r = delete_vertices(t, gone);
  EXPECT_EQ(r.tree.vertex_count(), 6u);
  EXPECT_EQ(r.new_label[0], 0);
  EXPECT_EQ(r.new_label[1], 1);
  const std::array<Vertex, 1> cut = {2};
  expect_error(Errc::disconnects_tree, [&] { delete_vertices(t, cut); });
}

TEST(TreeIo, FileRoundTrip) {
  const auto t = random_trees(6, 1, -4, 4, 2)[0];
  EXPECT_EQ(parse_tree_file(format_tree_file(t)), t);
  EXPECT_EQ(tree_from_json(tree_to_json(t)), t);
  const auto u = parse_tree_file("# star\nn 4\n1 2 1\n1 3 -2\n\n1 4 3\n");
  EXPECT_EQ(u.edges()[1], (Edge{1, 3, -2}));
}

TEST(TreeIo, FileErrors) {
  expect_error(Errc::parse_error, [] { parse_tree_file("1 2 1\n"); });
  expect_error(Errc::parse_error, [] { parse_tree_file("n 3\n1 2\n2 3 1\n"); });
  expect_error(Errc::parse_error, [] { parse_tree_file("n 3\n1 2 a\n2 3 1\n"); });
  expect_error(Errc::not_a_tree, [] { parse_tree_file("n 3\n1 2 1\n"); });
  expect_error(Errc::bad_vertex_label, [] { parse_tree_file("n 2\n1 5 1\n"); });
  try {
    parse_tree_file("n 3\n1 2 1\nbogus\n");
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
}

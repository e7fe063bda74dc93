#pragma once

// Builders for the tree matrix families over MultiPoly.
//
// "Shifted" matrices come from a tree on N = n + 1 vertices and are n x n:
// row j is vertex v_{j+1}, column k is vertex v_k (1 <= j, k <= n).

#include <string>
#include <vector>

#include "treedet/ring.hpp"
#include "treedet/tree.hpp"

namespace treedet {

class RingMatrix {
 public:
  RingMatrix() = default;
  explicit RingMatrix(std::size_t n) : n_(n), data_(n * n) {}

  std::size_t size() const noexcept { return n_; }
  MultiPoly& operator()(std::size_t r, std::size_t c) { return data_[r * n_ + c]; }
  const MultiPoly& operator()(std::size_t r, std::size_t c) const { return data_[r * n_ + c]; }

  RingMatrix transposed() const;
  bool is_symmetric() const;
  // Entrywise substitution.
  RingMatrix substituted(Var v, const MultiPoly& value) const;

  friend bool operator==(const RingMatrix&, const RingMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<MultiPoly> data_;
};

enum class Layout { full, shifted };

// With Hypothesis::two_leaves the shifted builders reject trees where v_1 or
// v_N is not a leaf (Error{not_a_leaf}). Example 1.1 needs ::unchecked.
enum class Hypothesis { unchecked, two_leaves };

// d(v_{j+1}, v_k) for the shifted layout. Throws
// Error{shift_needs_two_vertices} for a one-vertex tree.
IntMatrix shifted_distance_matrix(const WeightedTree& tree, Hypothesis h = Hypothesis::unchecked);

// [d(v_j, v_k)] as constants.
RingMatrix distance_matrix(const WeightedTree& tree);

// [[d]_q] in either layout.
RingMatrix q_distance_matrix(const WeightedTree& tree, Layout layout = Layout::full,
                             Hypothesis h = Hypothesis::unchecked);

// [q^d] or [q^d - t].
RingMatrix exp_matrix(const WeightedTree& tree, Layout layout, bool t_term,
                      Hypothesis h = Hypothesis::unchecked);

// [q^d - offset]; exp_matrix with t_term is offset = t.
RingMatrix exp_offset_matrix(const WeightedTree& tree, Layout layout, const MultiPoly& offset,
                             Hypothesis h = Hypothesis::unchecked);

// [x + d] (q_mode false) or [x + [d]_q] (q_mode true). `x` defaults to the
// indeterminate; pass a constant to specialize.
RingMatrix x_shift_matrix(const WeightedTree& tree, bool q_mode, Layout layout,
                          Hypothesis h = Hypothesis::unchecked,
                          const MultiPoly& x = MultiPoly::var(Var::x));

// The (n+1) x (n+1) bordered matrix: a leading column (1, ..., 1, 1 - q),
// the q-distance matrix in rows 1..n, and a last row of ones.
RingMatrix bordered_matrix(const WeightedTree& tree);

// [q^{|j - k + 1|} - t], n x n, built without a tree.
RingMatrix path_t_matrix(std::size_t n);

// One row per line, entries in canonical text separated by " & ".
std::string format_matrix(const RingMatrix& m);

// Rows of a distance matrix in the usual typeset q-distance notation: "0",
// "1", then "[m]_q".
std::string format_q_layout(const IntMatrix& d);

}  // namespace treedet

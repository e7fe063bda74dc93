#include "treedet/matrix.hpp"

#include <cstdlib>
#include <sstream>

#include "treedet/error.hpp"

namespace treedet {

RingMatrix RingMatrix::transposed() const {
  RingMatrix t(n_);
  for (std::size_t r = 0; r < n_; ++r)
    for (std::size_t c = 0; c < n_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

bool RingMatrix::is_symmetric() const {
  for (std::size_t r = 0; r < n_; ++r)
    for (std::size_t c = r + 1; c < n_; ++c)
      if ((*this)(r, c) != (*this)(c, r)) return false;
  return true;
}

RingMatrix RingMatrix::substituted(Var v, const MultiPoly& value) const {
  RingMatrix out(n_);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = substitute(data_[i], v, value);
  return out;
}

namespace {

void check_hypothesis(const WeightedTree& tree, Hypothesis h) {
  if (h != Hypothesis::two_leaves) return;
  const auto last = static_cast<Vertex>(tree.vertex_count());
  for (Vertex v : {Vertex{1}, last}) {
    if (!tree.is_leaf(v)) {
      throw Error(Errc::not_a_leaf, "v_" + std::to_string(v) + " must be a leaf of the tree");
    }
  }
}

// Distances laid out per `layout`; entries are then mapped through `entry`.
template <class F>
RingMatrix build(const WeightedTree& tree, Layout layout, Hypothesis h, F entry) {
  const IntMatrix d = layout == Layout::full ? weighted_distance_matrix(tree) : shifted_distance_matrix(tree, h);
  RingMatrix m(d.size());
  for (std::size_t r = 0; r < d.size(); ++r)
    for (std::size_t c = 0; c < d.size(); ++c) m(r, c) = entry(d(r, c));
  return m;
}

}  // namespace

IntMatrix shifted_distance_matrix(const WeightedTree& tree, Hypothesis h) {
  const auto total = tree.vertex_count();
  if (total < 2) throw Error(Errc::shift_needs_two_vertices, "shifted layout on a one-vertex tree");
  check_hypothesis(tree, h);
  const IntMatrix full = weighted_distance_matrix(tree);
  const auto n = total - 1;
  IntMatrix d(n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) d(j, k) = full(j + 1, k);
  return d;
}

RingMatrix distance_matrix(const WeightedTree& tree) {
  return build(tree, Layout::full, Hypothesis::unchecked, [](std::int64_t d) { return MultiPoly(d); });
}

RingMatrix q_distance_matrix(const WeightedTree& tree, Layout layout, Hypothesis h) {
  return build(tree, layout, h, [](std::int64_t d) { return q_analogue(d); });
}

RingMatrix exp_matrix(const WeightedTree& tree, Layout layout, bool t_term, Hypothesis h) {
  return exp_offset_matrix(tree, layout, t_term ? MultiPoly::var(Var::t) : MultiPoly(), h);
}

RingMatrix exp_offset_matrix(const WeightedTree& tree, Layout layout, const MultiPoly& offset, Hypothesis h) {
  return build(tree, layout, h, [&](std::int64_t d) { return q_power(d) - offset; });
}

RingMatrix x_shift_matrix(const WeightedTree& tree, bool q_mode, Layout layout, Hypothesis h, const MultiPoly& x) {
  return build(tree, layout, h, [&](std::int64_t d) { return x + (q_mode ? q_analogue(d) : MultiPoly(d)); });
}

RingMatrix bordered_matrix(const WeightedTree& tree) {
  const auto n = tree.vertex_count();
  const IntMatrix d = weighted_distance_matrix(tree);
  RingMatrix m(n + 1);
  for (std::size_t r = 0; r < n; ++r) {
    m(r, 0) = 1;
    for (std::size_t c = 0; c < n; ++c) m(r, c + 1) = q_analogue(d(r, c));
  }
  m(n, 0) = MultiPoly(1) - MultiPoly::var(Var::q);
  for (std::size_t c = 1; c <= n; ++c) m(n, c) = 1;
  return m;
}

RingMatrix path_t_matrix(std::size_t n) {
  RingMatrix m(n);
  const auto t = MultiPoly::var(Var::t);
  for (std::size_t j = 1; j <= n; ++j) {
    for (std::size_t k = 1; k <= n; ++k) {
      const auto e = std::llabs(static_cast<long long>(j) - static_cast<long long>(k) + 1);
      m(j - 1, k - 1) = q_power(e) - t;
    }
  }
  return m;
}

std::string format_matrix(const RingMatrix& m) {
  std::ostringstream out;
  for (std::size_t r = 0; r < m.size(); ++r) {
    for (std::size_t c = 0; c < m.size(); ++c) {
      if (c != 0) out << " & ";
      out << m(r, c);
    }
    out << '\n';
  }
  return out.str();
}

std::string format_q_layout(const IntMatrix& d) {
  std::ostringstream out;
  for (std::size_t r = 0; r < d.size(); ++r) {
    for (std::size_t c = 0; c < d.size(); ++c) {
      if (c != 0) out << " & ";
      const auto v = d(r, c);
      if (v == 0 || v == 1) {
        out << v;
      } else {
        out << '[' << v << "]_q";
      }
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace treedet

#pragma once

// Closed forms for the tree determinant identities and a verifier that
// compares them with an engine-computed determinant.
//
// Size conventions: for identities on the full distance matrix, n is the
// number of vertices. For the shifted identities the tree has N = n + 1
// vertices, v_1 and v_N are the designated leaves and n is the matrix size.

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "treedet/det.hpp"
#include "treedet/matrix.hpp"
#include "treedet/ring.hpp"
#include "treedet/tree.hpp"

namespace treedet {

enum class IdentityId {
  gp,                 // det[d] = (1-n)(-2)^(n-2)
  gp_q,               // det[[d]_q] = (1-n)(-1-q)^(n-2)
  gp_x,               // det[x + d], weighted
  br,                 // det[[d]_q], weighted
  br_exp,             // det[q^d - 1], weighted
  exp,                // det[q^d] = prod (1 - q^(2w))
  exp_t,              // det[q^d - t]
  new_qt,             // shifted det[q^d - t]
  new_wq,             // shifted det[x + [d]_q]
  new_nq,             // shifted det[x + [d]_q], unit weights
  new_x,              // shifted det[x + d] = 2^(n-2) prod w
  path_t,             // det[q^|j-k+1| - t]
  bordered,           // bordered determinant = prod [2w]_q
  reduction,          // shifted det[[d]_q] = [w(e_1)]_q [w(e_n)]_q D_{T - {v_1, v_N}}
  shift_singular,     // shifted det[q^d] = 0
  relabel_invariant,  // shifted det[[d]_q] unchanged by permuting v_2..v_n
};

std::string_view identity_name(IdentityId id) noexcept;
std::optional<IdentityId> parse_identity(std::string_view name) noexcept;
std::span<const IdentityId> all_identities() noexcept;

// --- Right-hand sides ----------------------------------------------------------
// All throw Error{bad_size} below their minimum size.

MultiPoly rhs_gp(std::size_t n);
MultiPoly rhs_gp_q(std::size_t n);
MultiPoly rhs_gp_x(const WeightedTree& tree);
MultiPoly rhs_br(const WeightedTree& tree);
MultiPoly rhs_br_exp(const WeightedTree& tree);
MultiPoly rhs_exp(const WeightedTree& tree);
MultiPoly rhs_exp_t(const WeightedTree& tree);
// leaf1, leaf2: distinct leaves; Error{not_a_leaf} / Error{same_leaf}.
MultiPoly rhs_new_qt(const WeightedTree& tree, Vertex leaf1, Vertex leaf2);
MultiPoly rhs_new_wq(const WeightedTree& tree, Vertex leaf1, Vertex leaf2);
MultiPoly rhs_new_nq(std::size_t n);
MultiPoly rhs_new_x(const WeightedTree& tree);
MultiPoly rhs_path_t(std::size_t n);
MultiPoly rhs_bordered(const WeightedTree& tree);

// --- Verification ----------------------------------------------------------------

struct EvalPoint {
  mpq_class q;
  mpq_class t;
  mpq_class x;
};

// q in {2, 3, 1/2, -2}, t in {0, 1, 5}, x in {0, 1, 7}, all combinations.
std::vector<EvalPoint> default_points();

enum class Mode { symbolic, evaluated };

struct VerifyOptions {
  Engine engine = Engine::bareiss;
  Mode mode = Mode::symbolic;
  std::vector<EvalPoint> points = default_points();
  // Off only to reproduce counterexamples such as Example 1.1.
  bool enforce_hypotheses = true;
  // Leaves to use as v_1 and v_N; the tree is relabeled accordingly.
  std::optional<std::pair<Vertex, Vertex>> leaves;
  // Specializes x in the x-shift identities.
  std::optional<MultiPoly> x_value;
  // relabel_invariant: new labels for v_2..v_{N-1}, in order. Empty draws a
  // random permutation from `seed`.
  std::vector<Vertex> interior_permutation;
  std::uint64_t seed = 0;
  std::size_t naive_cap = kNaiveCap;
};

struct PointCheck {
  EvalPoint point;
  mpq_class lhs;
  mpq_class rhs;
  bool equal = false;
};

struct IdentityReport {
  IdentityId identity = IdentityId::gp;
  WeightedTree tree;
  std::optional<std::pair<Vertex, Vertex>> leaves;
  Engine engine = Engine::bareiss;
  Mode mode = Mode::symbolic;
  MultiPoly lhs;  // symbolic mode only
  MultiPoly rhs;  // symbolic mode only
  std::vector<PointCheck> points;  // evaluated mode only
  bool equal = false;
  std::chrono::nanoseconds elapsed{0};
  std::string note;
};

// Throws Error{hypothesis_violated} when the tree does not satisfy the
// identity's hypotheses and enforcement is on.
IdentityReport verify(IdentityId id, const WeightedTree& tree, const VerifyOptions& options = {});

// Checks the specializations linking the identities on one tree. Checks
// that need designated leaves are skipped unless v_1 and v_N are leaves.
struct LatticeCheck {
  std::string name;
  bool holds = false;
};
std::vector<LatticeCheck> specialization_lattice(const WeightedTree& tree, Engine engine = Engine::bareiss);

// Two polynomials assembled by the closing algebra of the bordered
// recursion: f(a, b) = [a+b]_q - [b-a]_q and
// g(a, b) = (1 - q^(b-a)) f(a, b) - (1 + q^(b-a)) [a+b]_q.
MultiPoly lemma_f(std::int64_t a, std::int64_t b);
MultiPoly lemma_g(std::int64_t a, std::int64_t b);

}  // namespace treedet

#include "treedet/identities.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <random>

#include "treedet/error.hpp"

namespace treedet {

namespace {

constexpr std::array kAll{
    IdentityId::gp,       IdentityId::gp_q,   IdentityId::gp_x,     IdentityId::br,
    IdentityId::br_exp,   IdentityId::exp,    IdentityId::exp_t,    IdentityId::new_qt,
    IdentityId::new_wq,   IdentityId::new_nq, IdentityId::new_x,    IdentityId::path_t,
    IdentityId::bordered, IdentityId::reduction, IdentityId::shift_singular, IdentityId::relabel_invariant,
};

const MultiPoly& q_var() {
  static const MultiPoly q = MultiPoly::var(Var::q);
  return q;
}

const MultiPoly& t_var() {
  static const MultiPoly t = MultiPoly::var(Var::t);
  return t;
}

const MultiPoly& x_var() {
  static const MultiPoly x = MultiPoly::var(Var::x);
  return x;
}

void require_size(std::size_t n, std::size_t minimum, std::string_view what) {
  if (n < minimum) {
    throw Error(Errc::bad_size, std::string(what) + " needs n >= " + std::to_string(minimum) + ", got " +
                                    std::to_string(n));
  }
}

MultiPoly signed_power_of_two(bool negative, std::size_t k) {
  mpz_class v = 1;
  mpz_mul_2exp(v.get_mpz_t(), v.get_mpz_t(), k);
  return MultiPoly(negative ? mpz_class(-v) : v);
}

// (1 - q^(2w)) for every edge; product over all edges except `skip`.
MultiPoly exp_product(const WeightedTree& tree, std::optional<std::size_t> skip = std::nullopt) {
  MultiPoly p(1);
  const auto& edges = tree.edges();
  for (std::size_t i = 0; i < edges.size(); ++i)
    if (i != skip) p *= MultiPoly(1) - q_power(2 * edges[i].w);
  return p;
}

// Sum over edges of (q^w - 1)/(q^w + 1) times prod (1 - q^(2w')), with the
// denominator cancelled against (1 - q^w)(1 + q^w).
MultiPoly cleared_tanh_sum(const WeightedTree& tree) {
  MultiPoly sum;
  const auto& edges = tree.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const MultiPoly a = q_power(edges[i].w) - MultiPoly(1);
    sum -= a * a * exp_product(tree, i);
  }
  return sum;
}

struct Pendants {
  Edge first;
  Edge last;
  std::vector<Edge> interior;
};

Pendants split_pendants(const WeightedTree& tree, Vertex leaf1, Vertex leaf2) {
  if (leaf1 == leaf2) throw Error(Errc::same_leaf, "both designated leaves are v_" + std::to_string(leaf1));
  require_size(tree.vertex_count(), 3, "the shifted identities");
  Pendants p{pendant_edge(tree, leaf1), pendant_edge(tree, leaf2), {}};
  for (const auto& e : tree.edges())
    if (e != p.first && e != p.last) p.interior.push_back(e);
  return p;
}

}  // namespace

std::string_view identity_name(IdentityId id) noexcept {
  switch (id) {
    case IdentityId::gp: return "gp";
    case IdentityId::gp_q: return "gp_q";
    case IdentityId::gp_x: return "gp_x";
    case IdentityId::br: return "br";
    case IdentityId::br_exp: return "br_exp";
    case IdentityId::exp: return "exp";
    case IdentityId::exp_t: return "exp_t";
    case IdentityId::new_qt: return "new_qt";
    case IdentityId::new_wq: return "new_wq";
    case IdentityId::new_nq: return "new_nq";
    case IdentityId::new_x: return "new_x";
    case IdentityId::path_t: return "path_t";
    case IdentityId::bordered: return "bordered";
    case IdentityId::reduction: return "reduction";
    case IdentityId::shift_singular: return "shift_singular";
    case IdentityId::relabel_invariant: return "relabel_invariant";
  }
  return "?";
}

std::optional<IdentityId> parse_identity(std::string_view name) noexcept {
  for (IdentityId id : kAll)
    if (identity_name(id) == name) return id;
  return std::nullopt;
}

std::span<const IdentityId> all_identities() noexcept { return kAll; }

// --- Right-hand sides --------------------------------------------------------

MultiPoly rhs_gp(std::size_t n) {
  require_size(n, 2, "rhs_gp");
  // (1 - n)(-2)^(n-2)
  return MultiPoly(1 - static_cast<long>(n)) * signed_power_of_two(n % 2 == 1, n - 2);
}

MultiPoly rhs_gp_q(std::size_t n) {
  require_size(n, 2, "rhs_gp_q");
  return MultiPoly(1 - static_cast<long>(n)) * pow(MultiPoly(-1) - q_var(), static_cast<unsigned>(n - 2));
}

MultiPoly rhs_gp_x(const WeightedTree& tree) {
  const auto n = tree.vertex_count();
  require_size(n, 2, "rhs_gp_x");
  MultiPoly weight_sum;
  mpz_class weight_product = 1;
  for (const auto& e : tree.edges()) {
    weight_sum += MultiPoly(e.w);
    weight_product *= e.w;
  }
  return signed_power_of_two(n % 2 == 0, n - 2) * (MultiPoly(2) * x_var() + weight_sum) * MultiPoly(weight_product);
}

MultiPoly rhs_br(const WeightedTree& tree) {
  const auto n = tree.vertex_count();
  require_size(n, 2, "rhs_br");
  // [2w]_q = [w]_q (1 + q^w), so each summand [w]_q / (1 + q^w) times the
  // full product is [w]_q^2 times the product over the other edges.
  const auto& edges = tree.edges();
  MultiPoly sum;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    MultiPoly term = pow(q_analogue(edges[i].w), 2);
    for (std::size_t j = 0; j < edges.size(); ++j)
      if (j != i) term *= q_analogue(2 * edges[j].w);
    sum += term;
  }
  return n % 2 == 0 ? -sum : sum;
}

MultiPoly rhs_br_exp(const WeightedTree& tree) {
  require_size(tree.vertex_count(), 2, "rhs_br_exp");
  return cleared_tanh_sum(tree);
}

MultiPoly rhs_exp(const WeightedTree& tree) { return exp_product(tree); }

MultiPoly rhs_exp_t(const WeightedTree& tree) {
  require_size(tree.vertex_count(), 2, "rhs_exp_t");
  return (MultiPoly(1) - t_var()) * exp_product(tree) + t_var() * cleared_tanh_sum(tree);
}

MultiPoly rhs_new_qt(const WeightedTree& tree, Vertex leaf1, Vertex leaf2) {
  const Pendants p = split_pendants(tree, leaf1, leaf2);
  MultiPoly r = t_var() * (q_power(p.first.w) - MultiPoly(1)) * (q_power(p.last.w) - MultiPoly(1));
  for (const auto& e : p.interior) r *= q_power(2 * e.w) - MultiPoly(1);
  return r;
}

MultiPoly rhs_new_wq(const WeightedTree& tree, Vertex leaf1, Vertex leaf2) {
  const Pendants p = split_pendants(tree, leaf1, leaf2);
  MultiPoly r = ((MultiPoly(1) - q_var()) * x_var() + MultiPoly(1)) * q_analogue(p.first.w) * q_analogue(p.last.w);
  for (const auto& e : p.interior) r *= q_analogue(2 * e.w);
  return r;
}

MultiPoly rhs_new_nq(std::size_t n) {
  require_size(n, 2, "rhs_new_nq");
  return ((MultiPoly(1) - q_var()) * x_var() + MultiPoly(1)) * pow(MultiPoly(1) + q_var(), static_cast<unsigned>(n - 2));
}

MultiPoly rhs_new_x(const WeightedTree& tree) {
  require_size(tree.vertex_count(), 3, "rhs_new_x");
  const auto n = tree.vertex_count() - 1;
  mpz_class product = 1;
  for (const auto& e : tree.edges()) product *= e.w;
  return signed_power_of_two(false, n - 2) * MultiPoly(product);
}

MultiPoly rhs_path_t(std::size_t n) {
  require_size(n, 2, "rhs_path_t");
  return t_var() * pow(q_var() - MultiPoly(1), static_cast<unsigned>(n)) *
         pow(q_var() + MultiPoly(1), static_cast<unsigned>(n - 2));
}

MultiPoly rhs_bordered(const WeightedTree& tree) {
  MultiPoly r(1);
  for (const auto& e : tree.edges()) r *= q_analogue(2 * e.w);
  return r;
}

MultiPoly lemma_f(std::int64_t a, std::int64_t b) { return q_analogue(a + b) - q_analogue(b - a); }

MultiPoly lemma_g(std::int64_t a, std::int64_t b) {
  const MultiPoly s = q_power(b - a);
  return (MultiPoly(1) - s) * lemma_f(a, b) - (MultiPoly(1) + s) * q_analogue(a + b);
}

// --- Verification ---------------------------------------------------------------

std::vector<EvalPoint> default_points() {
  std::vector<EvalPoint> out;
  for (const mpq_class& q : {mpq_class(2), mpq_class(3), mpq_class(1, 2), mpq_class(-2)})
    for (long t : {0L, 1L, 5L})
      for (long x : {0L, 1L, 7L}) out.push_back({q, mpq_class(t), mpq_class(x)});
  return out;
}

namespace {

// One side of an identity: factor * det(matrix), or just factor.
struct Side {
  std::optional<RingMatrix> matrix;
  MultiPoly factor{1};
};

struct Instance {
  Side lhs;
  Side rhs;
  std::string note;
};

[[noreturn]] void violated(IdentityId id, const std::string& what) {
  throw Error(Errc::hypothesis_violated, std::string(identity_name(id)) + ": " + what);
}

bool is_unit_path(const WeightedTree& tree) {
  const auto n = tree.vertex_count();
  for (const auto& e : tree.edges())
    if (std::abs(e.u - e.v) != 1 || e.w != 1) return false;
  return n >= 1;
}

MultiPoly x_or(const VerifyOptions& o) { return o.x_value ? *o.x_value : x_var(); }

Instance build_instance(IdentityId id, const WeightedTree& tree, const VerifyOptions& o) {
  const auto N = tree.vertex_count();
  const bool enforce = o.enforce_hypotheses;
  const auto last = static_cast<Vertex>(N);

  auto need_size = [&](std::size_t minimum) {
    if (N < minimum) violated(id, "needs at least " + std::to_string(minimum) + " vertices, got " + std::to_string(N));
  };
  auto need_unit = [&] {
    if (enforce && !tree.has_unit_weights()) violated(id, "all edge weights must be 1");
  };
  auto need_leaf = [&](Vertex v) {
    if (enforce && !tree.is_leaf(v)) violated(id, "v_" + std::to_string(v) + " must be a leaf");
  };
  auto need_both_leaves = [&] {
    need_size(3);
    need_leaf(1);
    need_leaf(last);
  };
  auto with_x = [&](const MultiPoly& p) { return o.x_value ? substitute(p, Var::x, *o.x_value) : p; };

  switch (id) {
    case IdentityId::gp:
      need_size(2);
      need_unit();
      return {{distance_matrix(tree)}, {std::nullopt, rhs_gp(N)}, {}};
    case IdentityId::gp_q:
      need_size(2);
      need_unit();
      return {{q_distance_matrix(tree)}, {std::nullopt, rhs_gp_q(N)}, {}};
    case IdentityId::gp_x:
      need_size(2);
      return {{x_shift_matrix(tree, false, Layout::full, Hypothesis::unchecked, x_or(o))},
              {std::nullopt, with_x(rhs_gp_x(tree))}, {}};
    case IdentityId::br:
      need_size(2);
      return {{q_distance_matrix(tree)}, {std::nullopt, rhs_br(tree)}, {}};
    case IdentityId::br_exp:
      need_size(2);
      return {{exp_offset_matrix(tree, Layout::full, MultiPoly(1))}, {std::nullopt, rhs_br_exp(tree)}, {}};
    case IdentityId::exp:
      return {{exp_matrix(tree, Layout::full, false)}, {std::nullopt, rhs_exp(tree)}, {}};
    case IdentityId::exp_t:
      need_size(2);
      return {{exp_matrix(tree, Layout::full, true)}, {std::nullopt, rhs_exp_t(tree)}, {}};
    case IdentityId::new_qt:
      need_both_leaves();
      return {{exp_matrix(tree, Layout::shifted, true)}, {std::nullopt, rhs_new_qt(tree, 1, last)}, {}};
    case IdentityId::new_wq:
      need_both_leaves();
      return {{x_shift_matrix(tree, true, Layout::shifted, Hypothesis::unchecked, x_or(o))},
              {std::nullopt, with_x(rhs_new_wq(tree, 1, last))}, {}};
    case IdentityId::new_nq:
      need_both_leaves();
      need_unit();
      return {{x_shift_matrix(tree, true, Layout::shifted, Hypothesis::unchecked, x_or(o))},
              {std::nullopt, with_x(rhs_new_nq(N - 1))}, {}};
    case IdentityId::new_x:
      need_both_leaves();
      return {{x_shift_matrix(tree, false, Layout::shifted, Hypothesis::unchecked, x_or(o))},
              {std::nullopt, rhs_new_x(tree)}, {}};
    case IdentityId::path_t:
      need_size(3);
      if (enforce && !is_unit_path(tree)) violated(id, "tree must be the unit-weight path 1-2-...-N");
      return {{path_t_matrix(N - 1)}, {std::nullopt, rhs_path_t(N - 1)}, {}};
    case IdentityId::bordered:
      return {{bordered_matrix(tree)}, {std::nullopt, rhs_bordered(tree)}, {}};
    case IdentityId::reduction: {
      need_both_leaves();
      const Edge e1 = pendant_edge(tree, 1);
      const Edge en = pendant_edge(tree, last);
      const std::array<Vertex, 2> ends{1, last};
      const auto reduced = delete_vertices(tree, ends);
      return {{q_distance_matrix(tree, Layout::shifted)},
              {bordered_matrix(reduced.tree), q_analogue(e1.w) * q_analogue(en.w)}, {}};
    }
    case IdentityId::shift_singular:
      need_size(3);
      need_leaf(last);
      return {{exp_matrix(tree, Layout::shifted, false)}, {std::nullopt, MultiPoly()}, {}};
    case IdentityId::relabel_invariant: {
      need_size(2);
      std::vector<Vertex> interior = o.interior_permutation;
      if (interior.empty()) {
        interior.resize(N - 2);
        std::iota(interior.begin(), interior.end(), Vertex{2});
        std::mt19937_64 rng(o.seed);
        std::shuffle(interior.begin(), interior.end(), rng);
      }
      if (interior.size() != N - 2) throw Error(Errc::bad_config, "interior permutation must list v_2..v_{N-1}");
      std::vector<Vertex> label(N);
      label[0] = 1;
      label[N - 1] = last;
      std::copy(interior.begin(), interior.end(), label.begin() + 1);
      const WeightedTree permuted = relabel(tree, label);
      std::string note = "interior labels ->";
      for (Vertex v : interior) note += ' ' + std::to_string(v);
      return {{q_distance_matrix(tree, Layout::shifted)}, {q_distance_matrix(permuted, Layout::shifted)}, note};
    }
  }
  throw Error(Errc::bad_config, "unknown identity");
}

MultiPoly evaluate_symbolic(const Side& side, const VerifyOptions& o) {
  if (!side.matrix) return side.factor;
  return side.factor * determinant(*side.matrix, o.engine, o.naive_cap).value;
}

mpq_class evaluate_at(const Side& side, const EvalPoint& p) {
  mpq_class v = eval(side.factor, p.q, p.t, p.x);
  if (side.matrix && v != 0) v *= det_at(*side.matrix, p.q, p.t, p.x);
  return v;
}

}  // namespace

IdentityReport verify(IdentityId id, const WeightedTree& input, const VerifyOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const WeightedTree tree = options.leaves ? with_endpoints(input, options.leaves->first, options.leaves->second) : input;
  const Instance inst = build_instance(id, tree, options);

  IdentityReport report{id, input, options.leaves, options.engine, options.mode, {}, {}, {}, false, {}, inst.note};
  if (options.mode == Mode::symbolic) {
    report.lhs = evaluate_symbolic(inst.lhs, options);
    report.rhs = evaluate_symbolic(inst.rhs, options);
    report.equal = report.lhs == report.rhs;
  } else {
    if (options.points.empty()) throw Error(Errc::bad_config, "evaluated mode needs at least one point");
    report.equal = true;
    for (const auto& p : options.points) {
      PointCheck check{p, evaluate_at(inst.lhs, p), evaluate_at(inst.rhs, p), false};
      check.equal = check.lhs == check.rhs;
      report.equal = report.equal && check.equal;
      report.points.push_back(std::move(check));
    }
  }
  report.elapsed = std::chrono::steady_clock::now() - start;
  return report;
}

std::vector<LatticeCheck> specialization_lattice(const WeightedTree& tree, Engine engine) {
  std::vector<LatticeCheck> out;
  const auto N = tree.vertex_count();
  if (N < 2) return out;
  auto det = [engine](const RingMatrix& m) { return determinant(m, engine).value; };

  const MultiPoly exp_t_lhs = det(exp_matrix(tree, Layout::full, true));
  const MultiPoly exp_t_rhs = rhs_exp_t(tree);
  out.push_back({"exp_t at t=0 is exp",
                 substitute(exp_t_lhs, Var::t, 0) == det(exp_matrix(tree, Layout::full, false)) &&
                     substitute(exp_t_rhs, Var::t, 0) == rhs_exp(tree)});
  out.push_back({"exp_t at t=1 is br_exp",
                 substitute(exp_t_lhs, Var::t, 1) == det(exp_offset_matrix(tree, Layout::full, MultiPoly(1))) &&
                     substitute(exp_t_rhs, Var::t, 1) == rhs_br_exp(tree)});

  std::vector<Edge> unit_edges = tree.edges();
  for (auto& e : unit_edges) e.w = 1;
  const WeightedTree unit = WeightedTree::validate(N, unit_edges);
  out.push_back({"br at unit weights is gp_q",
                 rhs_br(unit) == rhs_gp_q(N) && det(q_distance_matrix(unit)) == rhs_gp_q(N)});

  const auto last = static_cast<Vertex>(N);
  if (N >= 3 && tree.is_leaf(1) && tree.is_leaf(last)) {
    const auto n = static_cast<unsigned>(N - 1);
    const MultiPoly t_sub = (MultiPoly(1) - MultiPoly::var(Var::q)) * MultiPoly::var(Var::x) + MultiPoly(1);
    const MultiPoly scale = pow(MultiPoly::var(Var::q) - MultiPoly(1), n);
    const MultiPoly qt_lhs = det(exp_matrix(tree, Layout::shifted, true));
    const MultiPoly wq_lhs = det(x_shift_matrix(tree, true, Layout::shifted));
    out.push_back({"new_qt at t=(1-q)x+1 is (q-1)^n new_wq",
                   substitute(qt_lhs, Var::t, t_sub) == scale * wq_lhs &&
                       substitute(rhs_new_qt(tree, 1, last), Var::t, t_sub) == scale * rhs_new_wq(tree, 1, last)});
    out.push_back({"new_wq at unit weights is new_nq",
                   rhs_new_wq(unit, 1, last) == rhs_new_nq(N - 1) &&
                       det(x_shift_matrix(unit, true, Layout::shifted)) == rhs_new_nq(N - 1)});
  }
  return out;
}

}  // namespace treedet

#include <gtest/gtest.h>

#include <random>

#include "treedet/det.hpp"
#include "treedet/error.hpp"

using namespace treedet;

namespace {

const MultiPoly q = MultiPoly::var(Var::q);
const MultiPoly t = MultiPoly::var(Var::t);
const MultiPoly x = MultiPoly::var(Var::x);

MultiPoly random_entry(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> count(0, 3), qe(-2, 2), te(0, 1), c(-4, 4);
  std::vector<MultiPoly::Term> terms;
  for (int i = count(rng); i > 0; --i) terms.push_back({{qe(rng), te(rng), te(rng)}, c(rng)});
  return MultiPoly::from_terms(std::move(terms));
}

RingMatrix random_matrix(std::mt19937_64& rng, std::size_t n) {
  RingMatrix m(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) m(r, c) = random_entry(rng);
  return m;
}

// Laplace expansion along the first row.
MultiPoly laplace(const RingMatrix& m) {
  const auto n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m(0, 0);
  MultiPoly acc;
  for (std::size_t c = 0; c < n; ++c) {
    RingMatrix minor(n - 1);
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t k = 0, kk = 0; k < n; ++k)
        if (k != c) minor(r - 1, kk++) = m(r, k);
    const auto term = m(0, c) * laplace(minor);
    if (c % 2 == 0) acc += term; else acc -= term;
  }
  return acc;
}

}  // namespace

TEST(Det, SmallCases) {
  RingMatrix m(2);
  m(0, 0) = q;
  m(0, 1) = 1;
  m(1, 0) = t;
  m(1, 1) = x;
  for (Engine e : {Engine::naive, Engine::bareiss, Engine::berkowitz}) {
    EXPECT_EQ(determinant(m, e).value, q * x - t) << engine_name(e);
    EXPECT_EQ(determinant(RingMatrix(0), e).value, MultiPoly(1));
  }
}

TEST(Det, ZeroPivotNeedsSwap) {
  RingMatrix m(3);
  m(0, 1) = 1;
  m(1, 0) = 1;
  m(2, 2) = q;
  const auto r = det_bareiss(m);
  EXPECT_EQ(r.value, -q);
  EXPECT_GE(r.stats.row_swaps, 1u);
  EXPECT_EQ(det_berkowitz(m).value, -q);
}

TEST(Det, SingularMatrix) {
  RingMatrix m(3);
  for (std::size_t c = 0; c < 3; ++c) {
    m(0, c) = q_analogue(static_cast<long>(c) + 1);
    m(1, c) = t * m(0, c);
    m(2, c) = x + static_cast<long>(c);
  }
  for (Engine e : {Engine::naive, Engine::bareiss, Engine::berkowitz}) EXPECT_TRUE(determinant(m, e).value.is_zero());
}

TEST(Det, NaiveCap) {
  std::mt19937_64 rng(1);
  try {
    det_naive(random_matrix(rng, 9));
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::cap_exceeded);
  }
  EXPECT_NO_THROW(det_naive(random_matrix(rng, 3), 3));
}

TEST(DetProperty, EnginesMatchLaplace) {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 150; ++i) {
    const auto m = random_matrix(rng, 1 + i % 5);
    const auto expected = laplace(m);
    EXPECT_EQ(det_naive(m).value, expected);
    EXPECT_EQ(det_bareiss(m).value, expected);
    EXPECT_EQ(det_berkowitz(m).value, expected);
  }
}

TEST(DetProperty, TransposeInvariance) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 60; ++i) {
    const auto m = random_matrix(rng, 2 + i % 4);
    EXPECT_EQ(det_bareiss(m).value, det_bareiss(m.transposed()).value);
  }
}

TEST(DetProperty, MultilinearInFirstRow) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 60; ++i) {
    const auto n = 2 + static_cast<std::size_t>(i % 4);
    auto a = random_matrix(rng, n), b = a, sum = a;
    const auto lambda = random_entry(rng);
    for (std::size_t c = 0; c < n; ++c) {
      b(0, c) = random_entry(rng);
      sum(0, c) = a(0, c) + lambda * b(0, c);
    }
    EXPECT_EQ(det_berkowitz(sum).value, det_berkowitz(a).value + lambda * det_berkowitz(b).value);
  }
}

TEST(DetProperty, RationalEvaluationCommutes) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 60; ++i) {
    const auto m = random_matrix(rng, 1 + i % 5);
    const auto d = det_bareiss(m).value;
    for (const mpq_class& qv : {mpq_class(2), mpq_class(-1, 3)}) {
      EXPECT_EQ(det_at(m, qv, 3, mpq_class(1, 2)), eval(d, qv, 3, mpq_class(1, 2)));
    }
  }
}

TEST(Det, RationalDeterminant) {
  EXPECT_EQ(det_rational({1, 2, 3, 4}, 2), -2);
  EXPECT_EQ(det_rational({0, 1, 1, 0}, 2), -1);
  EXPECT_EQ(det_rational({mpq_class(1, 2), 0, 0, 4}, 2), 2);
  EXPECT_EQ(det_rational({1, 2, 2, 4}, 2), 0);
}

TEST(Det, EngineNames) {
  for (Engine e : {Engine::naive, Engine::bareiss, Engine::berkowitz}) EXPECT_EQ(parse_engine(engine_name(e)), e);
  EXPECT_FALSE(parse_engine("gauss"));
  EXPECT_EQ(parse_family("bordered"), MatrixFamily::bordered);
}

TEST(Det, BenchReportAgrees) {
  BenchConfig config;
  config.engines = {Engine::naive, Engine::bareiss, Engine::berkowitz};
  config.sizes = {3, 5, 9};
  const auto report = bench(config);
  EXPECT_TRUE(report.engines_agree);
  ASSERT_EQ(report.rows.size(), 9u);
  std::size_t capped = 0;
  for (const auto& row : report.rows)
    if (!row.completed) {
      ++capped;
      EXPECT_EQ(row.status, "CapExceeded");
    }
  EXPECT_EQ(capped, 1u);  // naive at a 10 x 10 bordered matrix
  const auto j = bench_to_json(report);
  EXPECT_EQ(j["rows"].size(), 9u);
  EXPECT_FALSE(format_bench_table(report).empty());
}

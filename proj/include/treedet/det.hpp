#pragma once

// Exact determinants over Z[q, q^-1, t, x].
//
// Three independent engines: Leibniz expansion (ground truth, capped),
// fraction-free Bareiss elimination, and the division-free Berkowitz
// algorithm. Every engine is single-threaded and pure.

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>
#include <nlohmann/json.hpp>

#include "treedet/matrix.hpp"

namespace treedet {

enum class Engine { naive, bareiss, berkowitz };

std::string_view engine_name(Engine e) noexcept;
std::optional<Engine> parse_engine(std::string_view name) noexcept;

inline constexpr std::size_t kNaiveCap = 8;

struct DetStats {
  std::size_t row_swaps = 0;
  std::size_t ring_mults = 0;
  std::size_t exact_divs = 0;
  std::size_t max_terms = 0;  // largest intermediate polynomial seen
};

struct DetResult {
  MultiPoly value;
  Engine engine = Engine::bareiss;
  std::chrono::nanoseconds elapsed{0};
  DetStats stats;
};

// Throws Error{cap_exceeded} for matrices larger than `cap`.
DetResult det_naive(const RingMatrix& m, std::size_t cap = kNaiveCap);

// First nonzero pivot in the column, one sign flip per row swap. Throws
// Error{internal_division_failure} if an elimination step is not exact,
// which would indicate a bug.
DetResult det_bareiss(const RingMatrix& m);

DetResult det_berkowitz(const RingMatrix& m);

DetResult determinant(const RingMatrix& m, Engine engine, std::size_t naive_cap = kNaiveCap);

// Determinant of a dense row-major n x n rational matrix by Gaussian
// elimination. Used for evaluated-mode checks.
mpq_class det_rational(std::vector<mpq_class> entries, std::size_t n);

// Entrywise evaluation followed by det_rational.
mpq_class det_at(const RingMatrix& m, const mpq_class& q, const mpq_class& t, const mpq_class& x);

// --- Benchmark ---------------------------------------------------------------

enum class MatrixFamily { q_distance, bordered };

std::string_view family_name(MatrixFamily f) noexcept;
std::optional<MatrixFamily> parse_family(std::string_view name) noexcept;

struct BenchConfig {
  std::vector<Engine> engines;
  MatrixFamily family = MatrixFamily::bordered;
  std::vector<std::size_t> sizes;  // tree vertex counts
  std::uint64_t seed = 1;
  // Zero is skipped when drawing weights unless the range is exactly {0}.
  std::int64_t weight_min = -3;
  std::int64_t weight_max = 3;
  std::size_t naive_cap = kNaiveCap;
  std::size_t repeats = 1;
};

struct BenchRow {
  Engine engine = Engine::bareiss;
  std::size_t n = 0;            // tree vertices
  std::size_t matrix_size = 0;
  bool completed = false;
  std::string status;           // "ok" or the error name
  double mean_ms = 0.0;
  DetStats stats;
  std::size_t result_terms = 0;
  std::string value;            // canonical text of the determinant
};

struct BenchReport {
  MatrixFamily family = MatrixFamily::bordered;
  std::vector<BenchRow> rows;
  // Per size, every completed engine produced the same polynomial.
  bool engines_agree = true;
};

// Times each engine on one seeded random tree per size. No correctness
// claim beyond the cross-engine agreement flag.
BenchReport bench(const BenchConfig& config);

std::string format_bench_table(const BenchReport& report);
nlohmann::json bench_to_json(const BenchReport& report);

}  // namespace treedet

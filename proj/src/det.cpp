#include "treedet/det.hpp"

#include <algorithm>
#include <iomanip>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>

#include "treedet/error.hpp"

namespace treedet {

std::string_view engine_name(Engine e) noexcept {
  switch (e) {
    case Engine::naive: return "naive";
    case Engine::bareiss: return "bareiss";
    case Engine::berkowitz: return "berkowitz";
  }
  return "?";
}

std::optional<Engine> parse_engine(std::string_view name) noexcept {
  for (Engine e : {Engine::naive, Engine::bareiss, Engine::berkowitz})
    if (engine_name(e) == name) return e;
  return std::nullopt;
}

namespace {

using Clock = std::chrono::steady_clock;

void track(DetStats& s, const MultiPoly& p) { s.max_terms = std::max(s.max_terms, p.size()); }

}  // namespace

DetResult det_naive(const RingMatrix& m, std::size_t cap) {
  const auto start = Clock::now();
  const auto n = m.size();
  if (n > cap) {
    throw Error(Errc::cap_exceeded, "Leibniz expansion of a " + std::to_string(n) + "x" + std::to_string(n) +
                                        " matrix exceeds cap " + std::to_string(cap));
  }
  DetResult out{MultiPoly(1), Engine::naive, {}, {}};
  if (n == 0) return out;

  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  MultiPoly sum;
  do {
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    MultiPoly product(inversions % 2 == 0 ? 1 : -1);
    for (std::size_t i = 0; i < n && !product.is_zero(); ++i) {
      product *= m(i, perm[i]);
      ++out.stats.ring_mults;
    }
    sum += product;
    track(out.stats, sum);
  } while (std::next_permutation(perm.begin(), perm.end()));

  out.value = std::move(sum);
  out.elapsed = Clock::now() - start;
  return out;
}

DetResult det_bareiss(const RingMatrix& input) {
  const auto start = Clock::now();
  const auto n = input.size();
  DetResult out{MultiPoly(1), Engine::bareiss, {}, {}};
  if (n == 0) return out;

  RingMatrix a = input;
  bool negate = false;
  MultiPoly previous(1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k).is_zero()) {
      std::size_t pivot = k + 1;
      while (pivot < n && a(pivot, k).is_zero()) ++pivot;
      if (pivot == n) {
        out.value = MultiPoly();
        out.elapsed = Clock::now() - start;
        return out;
      }
      for (std::size_t c = k; c < n; ++c) std::swap(a(k, c), a(pivot, c));
      negate = !negate;
      ++out.stats.row_swaps;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        MultiPoly numerator = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        out.stats.ring_mults += 2;
        if (k == 0) {
          a(i, j) = std::move(numerator);
        } else {
          try {
            a(i, j) = exact_div(numerator, previous);
          } catch (const Error& e) {
            throw Error(Errc::internal_division_failure,
                        "Bareiss step " + std::to_string(k) + " (" + std::to_string(i) + "," +
                            std::to_string(j) + "): " + e.what());
          }
          ++out.stats.exact_divs;
        }
        track(out.stats, a(i, j));
      }
      a(i, k) = MultiPoly();
    }
    previous = a(k, k);
  }
  out.value = negate ? -a(n - 1, n - 1) : a(n - 1, n - 1);
  out.elapsed = Clock::now() - start;
  return out;
}

DetResult det_berkowitz(const RingMatrix& a) {
  const auto start = Clock::now();
  const auto n = a.size();
  DetResult out{MultiPoly(1), Engine::berkowitz, {}, {}};
  if (n == 0) return out;

  // Coefficients of det(lambda I - A_r), highest power first, for the leading
  // principal r x r block; grown one row and column at a time.
  std::vector<MultiPoly> charpoly{MultiPoly(1), -a(0, 0)};
  for (std::size_t r = 1; r < n; ++r) {
    // Toeplitz column: 1, -a_rr, -R S, -R A_r S, ..., -R A_r^{r-1} S.
    std::vector<MultiPoly> toeplitz(r + 2);
    toeplitz[0] = 1;
    toeplitz[1] = -a(r, r);
    std::vector<MultiPoly> v(r);
    for (std::size_t i = 0; i < r; ++i) v[i] = a(i, r);
    for (std::size_t k = 2; k <= r + 1; ++k) {
      MultiPoly dot;
      for (std::size_t i = 0; i < r; ++i) dot += a(r, i) * v[i];
      out.stats.ring_mults += r;
      toeplitz[k] = -dot;
      track(out.stats, dot);
      if (k == r + 1) break;
      std::vector<MultiPoly> next(r);
      for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) next[i] += a(i, j) * v[j];
        track(out.stats, next[i]);
      }
      out.stats.ring_mults += r * r;
      v = std::move(next);
    }
    std::vector<MultiPoly> grown(r + 2);
    for (std::size_t i = 0; i < r + 2; ++i) {
      for (std::size_t j = 0; j <= std::min(i, r); ++j) {
        grown[i] += toeplitz[i - j] * charpoly[j];
        ++out.stats.ring_mults;
      }
      track(out.stats, grown[i]);
    }
    charpoly = std::move(grown);
  }
  out.value = n % 2 == 0 ? charpoly[n] : -charpoly[n];
  out.elapsed = Clock::now() - start;
  return out;
}

DetResult determinant(const RingMatrix& m, Engine engine, std::size_t naive_cap) {
  switch (engine) {
    case Engine::naive: return det_naive(m, naive_cap);
    case Engine::bareiss: return det_bareiss(m);
    case Engine::berkowitz: return det_berkowitz(m);
  }
  throw Error(Errc::bad_config, "unknown engine");
}

mpq_class det_rational(std::vector<mpq_class> a, std::size_t n) {
  if (a.size() != n * n) throw Error(Errc::bad_size, "det_rational: entry count does not match n");
  mpq_class det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    while (pivot < n && a[pivot * n + k] == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != k) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a[k * n + c], a[pivot * n + c]);
      det = -det;
    }
    const mpq_class p = a[k * n + k];
    det *= p;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a[i * n + k] == 0) continue;
      const mpq_class factor = a[i * n + k] / p;
      for (std::size_t c = k; c < n; ++c) a[i * n + c] -= factor * a[k * n + c];
    }
  }
  return det;
}

mpq_class det_at(const RingMatrix& m, const mpq_class& q, const mpq_class& t, const mpq_class& x) {
  const auto n = m.size();
  std::vector<mpq_class> entries;
  entries.reserve(n * n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) entries.push_back(eval(m(r, c), q, t, x));
  return det_rational(std::move(entries), n);
}

// ---------------------------------------------------------------------------

std::string_view family_name(MatrixFamily f) noexcept {
  switch (f) {
    case MatrixFamily::q_distance: return "q_distance";
    case MatrixFamily::bordered: return "bordered";
  }
  return "?";
}

std::optional<MatrixFamily> parse_family(std::string_view name) noexcept {
  for (MatrixFamily f : {MatrixFamily::q_distance, MatrixFamily::bordered})
    if (family_name(f) == name) return f;
  return std::nullopt;
}

BenchReport bench(const BenchConfig& config) {
  BenchReport report;
  report.family = config.family;
  if (config.engines.empty()) return report;
  for (std::size_t n : config.sizes) {
    TreeGenSpec spec;
    spec.n = n;
    spec.weight_min = config.weight_min;
    spec.weight_max = config.weight_max;
    spec.seed = config.seed + n;
    // Zero weights make the bordered determinant vanish; skip them when the
    // range allows it so the timings reflect real coefficient growth.
    std::mt19937_64 wrng(spec.seed);
    std::uniform_int_distribution<std::int64_t> wdist(config.weight_min, config.weight_max);
    const bool avoid_zero = config.weight_min != 0 || config.weight_max != 0;
    const WeightedTree tree = *TreeGenerator(spec, [&](std::size_t, Vertex, Vertex) {
                                 for (;;) {
                                   const auto w = wdist(wrng);
                                   if (w != 0 || !avoid_zero) return w;
                                 }
                               }).next();
    const RingMatrix m =
        config.family == MatrixFamily::bordered ? bordered_matrix(tree) : q_distance_matrix(tree);

    std::optional<MultiPoly> reference;
    for (Engine engine : config.engines) {
      BenchRow row;
      row.engine = engine;
      row.n = n;
      row.matrix_size = m.size();
      try {
        std::chrono::nanoseconds total{0};
        DetResult last;
        for (std::size_t rep = 0; rep < std::max<std::size_t>(config.repeats, 1); ++rep) {
          last = determinant(m, engine, config.naive_cap);
          total += last.elapsed;
        }
        row.completed = true;
        row.status = "ok";
        row.mean_ms = std::chrono::duration<double, std::milli>(total).count() /
                      static_cast<double>(std::max<std::size_t>(config.repeats, 1));
        row.stats = last.stats;
        row.result_terms = last.value.size();
        row.value = last.value.to_string();
        if (!reference) {
          reference = last.value;
        } else if (*reference != last.value) {
          report.engines_agree = false;
        }
      } catch (const Error& e) {
        row.status = std::string(errc_name(e.code()));
      }
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

std::string format_bench_table(const BenchReport& report) {
  std::ostringstream out;
  out << "family: " << family_name(report.family) << '\n';
  out << std::left << std::setw(10) << "engine" << std::right << std::setw(4) << "n" << std::setw(6) << "size"
      << std::setw(14) << "mean_ms" << std::setw(12) << "max_terms" << std::setw(12) << "det_terms" << "  status\n";
  for (const auto& row : report.rows) {
    out << std::left << std::setw(10) << engine_name(row.engine) << std::right << std::setw(4) << row.n
        << std::setw(6) << row.matrix_size << std::setw(14) << std::fixed << std::setprecision(3) << row.mean_ms
        << std::setw(12) << row.stats.max_terms << std::setw(12) << row.result_terms << "  " << row.status << '\n';
  }
  out << "engines agree: " << (report.engines_agree ? "yes" : "NO") << '\n';
  return out.str();
}

nlohmann::json bench_to_json(const BenchReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : report.rows) {
    rows.push_back({{"engine", engine_name(row.engine)},
                    {"n", row.n},
                    {"matrix_size", row.matrix_size},
                    {"status", row.status},
                    {"mean_ms", row.mean_ms},
                    {"row_swaps", row.stats.row_swaps},
                    {"ring_mults", row.stats.ring_mults},
                    {"exact_divs", row.stats.exact_divs},
                    {"max_terms", row.stats.max_terms},
                    {"det_terms", row.result_terms},
                    {"value", row.completed ? nlohmann::json(row.value) : nlohmann::json(nullptr)}});
  }
  return {{"family", family_name(report.family)}, {"engines_agree", report.engines_agree}, {"rows", std::move(rows)}};
}

}  // namespace treedet

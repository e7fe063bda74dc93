#include "treedet/sweep.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace treedet {

namespace {

BatchEntry run_one(IdentityId id, const WeightedTree& tree, const VerifyOptions& options) {
  try {
    return {verify(id, tree, options), std::nullopt};
  } catch (const Error& e) {
    return {std::nullopt, e};
  }
}

}  // namespace

std::vector<BatchEntry> verify_batch_serial(IdentityId id, std::span<const WeightedTree> trees,
                                            const VerifyOptions& options) {
  std::vector<BatchEntry> out;
  out.reserve(trees.size());
  for (const auto& tree : trees) out.push_back(run_one(id, tree, options));
  return out;
}

std::vector<BatchEntry> verify_batch(IdentityId id, std::span<const WeightedTree> trees,
                                     const VerifyOptions& options, int threads) {
#ifdef _OPENMP
  if (threads == 1) return verify_batch_serial(id, trees, options);
  std::vector<BatchEntry> out(trees.size());
  const auto count = static_cast<std::ptrdiff_t>(trees.size());
  const int team = threads > 0 ? threads : omp_get_max_threads();
  // Each slot is written by exactly one iteration; run_one never throws.
#pragma omp parallel for schedule(dynamic) num_threads(team)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    out[static_cast<std::size_t>(i)] = run_one(id, trees[static_cast<std::size_t>(i)], options);
  }
  return out;
#else
  (void)threads;
  return verify_batch_serial(id, trees, options);
#endif
}

BatchSummary summarize(std::span<const BatchEntry> entries) {
  BatchSummary s;
  for (const auto& e : entries) {
    if (e.error) {
      ++s.errors;
    } else if (e.report->equal) {
      ++s.equal;
    } else {
      ++s.unequal;
    }
  }
  return s;
}

}  // namespace treedet

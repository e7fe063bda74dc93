#pragma once

// Batch verification over many trees.
//
// verify_batch_serial is the reference; verify_batch fans the same work out
// over OpenMP threads. Both return entries in input order and must agree on
// everything except timings.

#include <optional>
#include <span>
#include <vector>

#include "treedet/error.hpp"
#include "treedet/identities.hpp"

namespace treedet {

struct BatchEntry {
  std::optional<IdentityReport> report;
  std::optional<Error> error;  // set instead of report when verify threw
};

std::vector<BatchEntry> verify_batch_serial(IdentityId id, std::span<const WeightedTree> trees,
                                            const VerifyOptions& options);

// threads == 0 uses the OpenMP default.
std::vector<BatchEntry> verify_batch(IdentityId id, std::span<const WeightedTree> trees,
                                     const VerifyOptions& options, int threads = 0);

struct BatchSummary {
  std::size_t equal = 0;
  std::size_t unequal = 0;
  std::size_t errors = 0;
};

BatchSummary summarize(std::span<const BatchEntry> entries);

}  // namespace treedet

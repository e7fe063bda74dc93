#pragma once

// IdentityReport rendering.
//
// JSON: {identity, n, edges, leaves?, engine, mode, lhs, rhs, equal,
// elapsed_ms}. Symbolic mode renders lhs/rhs as canonical polynomial text;
// evaluated mode renders them as arrays aligned with a "points" array.

#include <string>

#include <nlohmann/json.hpp>

#include "treedet/identities.hpp"

namespace treedet {

std::string format_point(const EvalPoint& p);

nlohmann::json report_to_json(const IdentityReport& report, bool include_timing = true);

// One human-readable line.
std::string format_report_line(const IdentityReport& report);

}  // namespace treedet

#pragma once

// Tree file and JSON forms.
//
// Tree file:
//   # comment
//   n 4
//   1 2 1
//   1 3 -2
//
// JSON: {"n": 4, "edges": [[1,2,1],[1,3,-2]]}

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "treedet/tree.hpp"

namespace treedet {

// Throws Error{parse_error} with a line number, or the validation errors of
// WeightedTree::validate.
WeightedTree parse_tree_file(std::string_view text);
std::string format_tree_file(const WeightedTree& tree);

nlohmann::json tree_to_json(const WeightedTree& tree);
WeightedTree tree_from_json(const nlohmann::json& j);

}  // namespace treedet

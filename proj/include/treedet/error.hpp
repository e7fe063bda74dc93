#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace treedet {

enum class Errc {
  not_divisible,
  division_by_zero,
  zero_base,
  parse_error,
  not_a_tree,
  bad_vertex_label,
  not_a_leaf,
  same_leaf,
  cap_exceeded,
  disconnects_tree,
  shift_needs_two_vertices,
  bad_size,
  internal_division_failure,
  hypothesis_violated,
  bad_config,
};

std::string_view errc_name(Errc code) noexcept;

// Every failure surfaced by the library carries one of the codes above so the
// CLI can map it to an exit status without string matching.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace treedet

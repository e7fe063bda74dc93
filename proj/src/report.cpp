#include "treedet/report.hpp"

#include <iomanip>
#include <sstream>

#include "treedet/tree_io.hpp"

namespace treedet {

std::string format_point(const EvalPoint& p) {
  return "q=" + p.q.get_str() + ",t=" + p.t.get_str() + ",x=" + p.x.get_str();
}

nlohmann::json report_to_json(const IdentityReport& r, bool include_timing) {
  const auto tree = tree_to_json(r.tree);
  nlohmann::json j = {
      {"identity", identity_name(r.identity)},
      {"n", tree["n"]},
      {"edges", tree["edges"]},
  };
  if (r.leaves) j["leaves"] = {r.leaves->first, r.leaves->second};
  j["engine"] = engine_name(r.engine);
  j["mode"] = r.mode == Mode::symbolic ? "symbolic" : "evaluated";
  if (r.mode == Mode::symbolic) {
    j["lhs"] = r.lhs.to_string();
    j["rhs"] = r.rhs.to_string();
  } else {
    nlohmann::json points = nlohmann::json::array(), lhs = nlohmann::json::array(), rhs = nlohmann::json::array();
    for (const auto& c : r.points) {
      points.push_back(format_point(c.point));
      lhs.push_back(c.lhs.get_str());
      rhs.push_back(c.rhs.get_str());
    }
    j["points"] = std::move(points);
    j["lhs"] = std::move(lhs);
    j["rhs"] = std::move(rhs);
  }
  j["equal"] = r.equal;
  if (!r.note.empty()) j["note"] = r.note;
  if (include_timing) j["elapsed_ms"] = std::chrono::duration<double, std::milli>(r.elapsed).count();
  return j;
}

std::string format_report_line(const IdentityReport& r) {
  std::ostringstream out;
  out << (r.equal ? "[equal]   " : "[UNEQUAL] ") << identity_name(r.identity) << " n=" << r.tree.vertex_count();
  if (r.leaves) out << " leaves=" << r.leaves->first << ',' << r.leaves->second;
  if (r.mode == Mode::symbolic) {
    out << " lhs=" << r.lhs << " rhs=" << r.rhs;
  } else {
    std::size_t bad = 0;
    for (const auto& c : r.points) bad += c.equal ? 0 : 1;
    out << " points=" << r.points.size() << " mismatches=" << bad;
  }
  out << " (" << engine_name(r.engine) << ", " << std::fixed << std::setprecision(3)
      << std::chrono::duration<double, std::milli>(r.elapsed).count() << " ms)";
  if (!r.note.empty()) out << " [" << r.note << ']';
  return out.str();
}

}  // namespace treedet

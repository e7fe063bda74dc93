#include "treedet/tree_io.hpp"

#include <sstream>

#include "treedet/error.hpp"

namespace treedet {

namespace {

[[noreturn]] void parse_fail(std::size_t line, const std::string& msg) {
  throw Error(Errc::parse_error, "line " + std::to_string(line) + ": " + msg);
}

}  // namespace

WeightedTree parse_tree_file(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  std::optional<std::size_t> n;
  std::vector<Edge> edges;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto first = raw.find_first_not_of(" \t\r");
    if (first == std::string::npos || raw[first] == '#') continue;
    std::istringstream fields(raw);
    if (!n) {
      std::string key;
      long long count = 0;
      if (!(fields >> key) || key != "n") parse_fail(line_no, "expected header \"n <count>\"");
      if (!(fields >> count) || count < 1) parse_fail(line_no, "vertex count must be a positive integer");
      std::string extra;
      if (fields >> extra) parse_fail(line_no, "trailing text \"" + extra + "\"");
      n = static_cast<std::size_t>(count);
      continue;
    }
    long long u = 0, v = 0, w = 0;
    if (!(fields >> u >> v >> w)) parse_fail(line_no, "expected \"u v w\"");
    std::string extra;
    if (fields >> extra) parse_fail(line_no, "trailing text \"" + extra + "\"");
    edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v), static_cast<Weight>(w)});
  }
  if (!n) parse_fail(line_no, "missing header \"n <count>\"");
  return WeightedTree::validate(*n, std::move(edges));
}

std::string format_tree_file(const WeightedTree& tree) {
  std::ostringstream out;
  out << "n " << tree.vertex_count() << '\n';
  for (const auto& e : tree.edges()) out << e.u << ' ' << e.v << ' ' << e.w << '\n';
  return out.str();
}

nlohmann::json tree_to_json(const WeightedTree& tree) {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : tree.edges()) edges.push_back({e.u, e.v, e.w});
  return {{"n", tree.vertex_count()}, {"edges", std::move(edges)}};
}

WeightedTree tree_from_json(const nlohmann::json& j) {
  try {
    const auto n = j.at("n").get<std::size_t>();
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 3) throw Error(Errc::parse_error, "edge must be [u, v, w]");
      edges.push_back({e[0].get<Vertex>(), e[1].get<Vertex>(), e[2].get<Weight>()});
    }
    return WeightedTree::validate(n, std::move(edges));
  } catch (const nlohmann::json::exception& ex) {
    throw Error(Errc::parse_error, ex.what());
  }
}

}  // namespace treedet

#include "treedet/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "treedet/det.hpp"
#include "treedet/error.hpp"
#include "treedet/identities.hpp"
#include "treedet/report.hpp"
#include "treedet/sweep.hpp"
#include "treedet/tree_io.hpp"

namespace treedet {

namespace {

struct Range {
  std::int64_t lo = 1;
  std::int64_t hi = 1;
};

Range parse_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      const auto v = std::stoll(text);
      return {v, v};
    }
    std::size_t used = 0;
    const auto lo = std::stoll(text.substr(0, dots), &used);
    if (used != dots) throw std::invalid_argument(text);
    const auto rest = text.substr(dots + 2);
    const auto hi = std::stoll(rest, &used);
    if (used != rest.size()) throw std::invalid_argument(text);
    if (lo > hi) throw Error(Errc::bad_config, "empty range " + text);
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw Error(Errc::bad_config, "expected A..B, got \"" + text + "\"");
  }
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

mpq_class parse_rational(const std::string& text) {
  try {
    mpq_class v(text);
    v.canonicalize();
    return v;
  } catch (const std::invalid_argument&) {
    throw Error(Errc::bad_config, "not a rational number: \"" + text + "\"");
  }
}

std::vector<EvalPoint> parse_points(const std::string& text) {
  std::vector<EvalPoint> out;
  for (const auto& item : split(text, ';')) {
    EvalPoint p{0, 0, 0};
    bool has_q = false;
    for (const auto& kv : split(item, ',')) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw Error(Errc::bad_config, "point component must be var=value: " + kv);
      const auto name = kv.substr(0, eq);
      const auto value = parse_rational(kv.substr(eq + 1));
      if (name == "q") {
        p.q = value;
        has_q = true;
      } else if (name == "t") {
        p.t = value;
      } else if (name == "x") {
        p.x = value;
      } else {
        throw Error(Errc::bad_config, "unknown variable " + name);
      }
    }
    if (!has_q) throw Error(Errc::bad_config, "point \"" + item + "\" has no q value");
    out.push_back(p);
  }
  if (out.empty()) throw Error(Errc::bad_config, "evaluated mode requires at least one point");
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::bad_config, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool needs_leaf_endpoints(IdentityId id) {
  switch (id) {
    case IdentityId::new_qt:
    case IdentityId::new_wq:
    case IdentityId::new_nq:
    case IdentityId::new_x:
    case IdentityId::reduction:
    case IdentityId::shift_singular:
      return true;
    default:
      return false;
  }
}

// --- Shared tree-source options ------------------------------------------------

struct SourceOptions {
  std::string tree_file;
  std::string example;
  bool random = false;
  bool exhaustive = false;
  std::size_t path = 0;
  std::size_t vertices = 0;
  std::size_t count = 1;
  std::string weights = "1..1";
  std::uint64_t seed = 0;
  std::size_t cap = 8;
};

void add_generation_flags(CLI::App* cmd, SourceOptions& s) {
  cmd->add_flag("--random", s.random, "Uniformly random labeled trees");
  cmd->add_flag("--exhaustive", s.exhaustive, "Every labeled tree on --vertices vertices");
  cmd->add_option("--vertices", s.vertices, "Vertex count for generated trees");
  cmd->add_option("--count", s.count, "Number of random trees")->capture_default_str();
  cmd->add_option("--weights", s.weights, "Edge weight range A..B")->capture_default_str();
  cmd->add_option("--seed", s.seed, "Random seed")->capture_default_str();
  cmd->add_option("--cap", s.cap, "Largest n allowed for exhaustive enumeration")->capture_default_str();
}

WeightedTree builtin_example(const std::string& which) {
  if (which == "1.1") return example_1_1();
  if (which == "1.2") return example_1_2();
  throw Error(Errc::bad_config, "unknown example \"" + which + "\" (expected 1.1 or 1.2)");
}

std::vector<WeightedTree> generated_trees(const SourceOptions& s) {
  if (s.vertices == 0) throw Error(Errc::bad_config, "--vertices is required with --random/--exhaustive");
  const Range w = parse_range(s.weights);
  TreeGenSpec spec;
  spec.n = s.vertices;
  spec.weight_min = w.lo;
  spec.weight_max = w.hi;
  spec.seed = s.seed;
  spec.mode = s.exhaustive ? GenMode::exhaustive : GenMode::random;
  spec.exhaustive_cap = s.cap;
  TreeGenerator gen(spec);
  const std::size_t count = s.exhaustive ? static_cast<std::size_t>(gen.exhaustive_count()) : s.count;
  std::vector<WeightedTree> out;
  out.reserve(count);
  while (out.size() < count) {
    auto t = gen.next();
    if (!t) break;
    out.push_back(std::move(*t));
  }
  return out;
}

std::vector<WeightedTree> load_trees(const SourceOptions& s, IdentityId id) {
  const int sources = (!s.tree_file.empty()) + (!s.example.empty()) + s.random + s.exhaustive + (s.path != 0);
  if (sources != 1) {
    throw Error(Errc::bad_config, "choose exactly one of --tree, --example, --random, --exhaustive, --path");
  }
  if (!s.tree_file.empty()) return {parse_tree_file(read_file(s.tree_file))};
  if (!s.example.empty()) return {builtin_example(s.example)};
  if (s.path != 0) return {path_tree(s.path)};

  auto trees = generated_trees(s);
  if (!needs_leaf_endpoints(id)) return trees;
  if (s.exhaustive) {
    // Keep the labeled trees whose first and last vertices are leaves.
    std::erase_if(trees, [](const WeightedTree& t) {
      const auto last = static_cast<Vertex>(t.vertex_count());
      return t.vertex_count() < 3 || !t.is_leaf(1) || !t.is_leaf(last);
    });
    return trees;
  }
  std::mt19937_64 rng(s.seed ^ 0x9e3779b97f4a7c15ULL);
  for (auto& t : trees) {
    if (t.vertex_count() >= 2) t = with_random_leaf_endpoints(t, rng);
  }
  return trees;
}

// --- verify ------------------------------------------------------------------------

struct VerifyArgs {
  SourceOptions source;
  std::string identity;
  std::string leaves;
  std::string mode = "symbolic";
  std::string points;
  std::string engine = "bareiss";
  std::string format = "table";
  std::string x;
  std::string permutation;
  bool no_hypothesis_check = false;
  bool no_timing = false;
  std::size_t naive_cap = kNaiveCap;
  int threads = 0;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  const auto id = parse_identity(a.identity);
  if (!id) throw Error(Errc::bad_config, "unknown identity \"" + a.identity + "\"");
  const auto engine = parse_engine(a.engine);
  if (!engine) throw Error(Errc::bad_config, "unknown engine \"" + a.engine + "\"");
  if (a.format != "table" && a.format != "json") throw Error(Errc::bad_config, "--format must be table or json");

  VerifyOptions options;
  options.engine = *engine;
  options.enforce_hypotheses = !a.no_hypothesis_check;
  options.naive_cap = a.naive_cap;
  options.seed = a.source.seed;
  if (a.mode == "evaluated") {
    options.mode = Mode::evaluated;
    if (!a.points.empty()) options.points = parse_points(a.points);
  } else if (a.mode != "symbolic") {
    throw Error(Errc::bad_config, "--mode must be symbolic or evaluated");
  }
  if (!a.x.empty()) {
    options.x_value = MultiPoly::parse(a.x);
  } else if (*id == IdentityId::new_nq) {
    options.x_value = MultiPoly(0);
  }
  if (!a.leaves.empty()) {
    const auto parts = split(a.leaves, ',');
    if (parts.size() != 2) throw Error(Errc::bad_config, "--leaves expects a,b");
    options.leaves = std::pair{static_cast<Vertex>(std::stoi(parts[0])), static_cast<Vertex>(std::stoi(parts[1]))};
  }
  for (const auto& p : split(a.permutation, ',')) options.interior_permutation.push_back(static_cast<Vertex>(std::stoi(p)));

  const auto trees = load_trees(a.source, *id);
  const auto entries = verify_batch(*id, trees, options, a.threads);

  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& e = entries[i];
    if (e.error) {
      if (a.format == "json") {
        out << nlohmann::json{{"index", i}, {"error", e.error->what()}}.dump() << '\n';
      } else {
        out << "[error]   #" << i << ' ' << e.error->what() << '\n';
      }
      continue;
    }
    if (a.format == "json") {
      out << report_to_json(*e.report, !a.no_timing).dump() << '\n';
    } else {
      out << format_report_line(*e.report) << '\n';
    }
    if (!e.report->equal) err << "offending tree #" << i << ":\n" << format_tree_file(e.report->tree);
  }
  const auto s = summarize(entries);
  if (a.format == "table") {
    out << entries.size() << " instance(s): " << s.equal << " equal, " << s.unequal << " unequal, " << s.errors
        << " error(s)\n";
  }
  if (s.errors != 0) return kExitConfig;
  return s.unequal == 0 ? kExitOk : kExitUnequal;
}

// --- example -------------------------------------------------------------------

int cmd_example(const std::string& which, const std::string& format, std::ostream& out) {
  const WeightedTree tree = builtin_example(which);
  const auto N = tree.vertex_count();
  const auto n = N - 1;
  const IntMatrix shifted = shifted_distance_matrix(tree);
  const MultiPoly lhs = det_bareiss(q_distance_matrix(tree, Layout::shifted)).value;
  const MultiPoly one_plus_q = MultiPoly(1) + MultiPoly::var(Var::q);
  const MultiPoly stated = pow(one_plus_q, static_cast<unsigned>(n - 2));
  const bool v1_leaf = tree.is_leaf(1);
  const bool vN_leaf = tree.is_leaf(static_cast<Vertex>(N));

  // Example 1.1 breaks the leaf hypothesis and evaluates to (1+q)^2; Example
  // 1.2 satisfies it and matches (1+q)^(n-2).
  bool reproduced = false;
  std::string verdict;
  if (which == "1.1") {
    reproduced = lhs == pow(one_plus_q, 2) && lhs != stated;
    verdict = lhs != stated ? "lhs differs from (1+q)^" + std::to_string(n - 2) + ", v_1 is not a leaf"
                            : "lhs equals (1+q)^" + std::to_string(n - 2);
  } else {
    reproduced = lhs == stated;
    verdict = lhs == stated ? "lhs equals (1+q)^" + std::to_string(n - 2)
                            : "lhs differs from (1+q)^" + std::to_string(n - 2);
  }

  if (format == "json") {
    std::vector<std::string> rows;
    std::istringstream layout(format_q_layout(shifted));
    for (std::string line; std::getline(layout, line);) rows.push_back(line);
    const auto t = tree_to_json(tree);
    out << nlohmann::json{{"example", which},
                          {"n", t["n"]},
                          {"edges", t["edges"]},
                          {"leaves", leaves(tree)},
                          {"matrix", rows},
                          {"lhs", lhs.to_string()},
                          {"comparison", stated.to_string()},
                          {"equal", lhs == stated},
                          {"reproduced", reproduced}}
               .dump()
        << '\n';
    return reproduced ? kExitOk : kExitUnequal;
  }

  out << "Example " << which << ": tree on " << N << " vertices, edges";
  for (const auto& e : tree.edges()) out << " v" << e.u << "v" << e.v;
  out << '\n';
  out << "leaves:";
  for (Vertex v : leaves(tree)) out << ' ' << v;
  out << "  (v_1 leaf: " << (v1_leaf ? "yes" : "no") << ", v_" << N << " leaf: " << (vN_leaf ? "yes" : "no") << ")\n";
  out << "det[d_q(v_{j+1},v_k)]_{1<=j,k<=" << n << "} of\n";
  std::istringstream layout(format_q_layout(shifted));
  for (std::string line; std::getline(layout, line);) out << "  " << line << '\n';
  out << "lhs        = " << lhs << '\n';
  out << "(1+q)^" << (n - 2) << "    = " << stated << '\n';
  out << "result: " << verdict << (reproduced ? " (reproduced)" : " (NOT reproduced)") << '\n';
  return reproduced ? kExitOk : kExitUnequal;
}

// --- bench ---------------------------------------------------------------------

struct BenchArgs {
  std::string engines = "bareiss,berkowitz";
  std::string family = "bordered";
  std::string sizes = "4..10";
  std::string weights = "-3..3";
  std::uint64_t seed = 1;
  std::size_t repeats = 1;
  std::size_t naive_cap = kNaiveCap;
  std::string format = "table";
};

int cmd_bench(const BenchArgs& a, std::ostream& out) {
  BenchConfig config;
  for (const auto& name : split(a.engines, ',')) {
    const auto e = parse_engine(name);
    if (!e) throw Error(Errc::bad_config, "unknown engine \"" + name + "\"");
    config.engines.push_back(*e);
  }
  const auto family = parse_family(a.family);
  if (!family) throw Error(Errc::bad_config, "unknown family \"" + a.family + "\"");
  config.family = *family;
  const Range sizes = parse_range(a.sizes);
  if (sizes.lo < 1) throw Error(Errc::bad_config, "sizes must be positive");
  for (auto n = sizes.lo; n <= sizes.hi; ++n) config.sizes.push_back(static_cast<std::size_t>(n));
  const Range w = parse_range(a.weights);
  config.weight_min = w.lo;
  config.weight_max = w.hi;
  config.seed = a.seed;
  config.repeats = a.repeats;
  config.naive_cap = a.naive_cap;

  const BenchReport report = bench(config);
  if (a.format == "json") {
    out << bench_to_json(report).dump() << '\n';
  } else if (a.format == "table") {
    out << format_bench_table(report);
  } else {
    throw Error(Errc::bad_config, "--format must be table or json");
  }
  return report.engines_agree ? kExitOk : kExitUnequal;
}

// --- gen -------------------------------------------------------------------------

int cmd_gen(const SourceOptions& s, const std::string& out_dir, const std::string& format, std::ostream& out) {
  if (s.random == s.exhaustive) throw Error(Errc::bad_config, "gen needs exactly one of --random, --exhaustive");
  if (format != "json" && format != "tree") throw Error(Errc::bad_config, "--format must be json or tree");
  const auto trees = generated_trees(s);
  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    for (std::size_t i = 0; i < trees.size(); ++i) {
      std::ostringstream name;
      name << "tree_" << std::setw(5) << std::setfill('0') << i + 1 << (format == "json" ? ".json" : ".txt");
      std::ofstream file(std::filesystem::path(out_dir) / name.str());
      if (format == "json") {
        file << tree_to_json(trees[i]).dump() << '\n';
      } else {
        file << "# seed " << s.seed << " index " << i + 1 << '\n' << format_tree_file(trees[i]);
      }
      if (!file) throw Error(Errc::bad_config, "cannot write into " + out_dir);
    }
    out << "wrote " << trees.size() << " tree(s) to " << out_dir << '\n';
    return kExitOk;
  }
  for (std::size_t i = 0; i < trees.size(); ++i) {
    if (format == "json") {
      out << tree_to_json(trees[i]).dump() << '\n';
    } else {
      if (i != 0) out << '\n';
      out << "# tree " << i + 1 << '\n' << format_tree_file(trees[i]);
    }
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact determinant identities for weighted tree distance matrices", "treedet"};
  app.require_subcommand(1);

  VerifyArgs va;
  auto* verify_cmd = app.add_subcommand("verify", "Check an identity on one or many trees");
  verify_cmd->add_option("--identity", va.identity, "Identity id (gp, gp_q, ..., relabel_invariant)")->required();
  verify_cmd->add_option("--tree", va.source.tree_file, "Tree file");
  verify_cmd->add_option("--example", va.source.example, "Builtin tree: 1.1 or 1.2");
  verify_cmd->add_option("--path", va.source.path, "Unit-weight path on this many vertices");
  add_generation_flags(verify_cmd, va.source);
  verify_cmd->add_option("--leaves", va.leaves, "Designated leaves a,b (relabeled to v_1 and v_N)");
  verify_cmd->add_option("--mode", va.mode, "symbolic or evaluated")->capture_default_str();
  verify_cmd->add_option("--points", va.points, "Evaluation points, e.g. \"q=2,t=0,x=1;q=1/2\"");
  verify_cmd->add_option("--engine", va.engine, "bareiss, berkowitz or naive")->capture_default_str();
  verify_cmd->add_option("--format", va.format, "table or json")->capture_default_str();
  verify_cmd->add_option("--x", va.x, "Value substituted for x (a polynomial; new_nq defaults to 0)");
  verify_cmd->add_option("--permutation", va.permutation, "relabel_invariant: new labels of v_2..v_{N-1}");
  verify_cmd->add_flag("--no-hypothesis-check", va.no_hypothesis_check, "Compute even when hypotheses fail");
  verify_cmd->add_flag("--no-timing", va.no_timing, "Omit elapsed_ms from JSON output");
  verify_cmd->add_option("--naive-cap", va.naive_cap, "Largest matrix for the naive engine")->capture_default_str();
  verify_cmd->add_option("--threads", va.threads, "Worker threads; 1 runs the serial path")->capture_default_str();

  std::string example_id;
  std::string example_format = "table";
  auto* example_cmd = app.add_subcommand("example", "Reproduce a worked example");
  example_cmd->add_option("which", example_id, "1.1 or 1.2")->required();
  example_cmd->add_option("--format", example_format, "table or json")->capture_default_str();

  BenchArgs ba;
  auto* bench_cmd = app.add_subcommand("bench", "Time the determinant engines");
  bench_cmd->add_option("--engines", ba.engines, "Comma-separated engines")->capture_default_str();
  bench_cmd->add_option("--family", ba.family, "bordered or q_distance")->capture_default_str();
  bench_cmd->add_option("--sizes", ba.sizes, "Tree vertex counts A..B")->capture_default_str();
  bench_cmd->add_option("--weights", ba.weights, "Edge weight range A..B")->capture_default_str();
  bench_cmd->add_option("--seed", ba.seed, "Random seed")->capture_default_str();
  bench_cmd->add_option("--repeats", ba.repeats, "Timed repetitions per cell")->capture_default_str();
  bench_cmd->add_option("--naive-cap", ba.naive_cap, "Largest matrix for the naive engine")->capture_default_str();
  bench_cmd->add_option("--format", ba.format, "table or json")->capture_default_str();

  SourceOptions gs;
  std::string gen_out;
  std::string gen_format = "json";
  auto* gen_cmd = app.add_subcommand("gen", "Emit random or exhaustive trees");
  add_generation_flags(gen_cmd, gs);
  gen_cmd->add_option("--out", gen_out, "Directory for one file per tree");
  gen_cmd->add_option("--format", gen_format, "json or tree")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*verify_cmd) return cmd_verify(va, out, err);
    if (*example_cmd) {
      if (example_format != "table" && example_format != "json") {
        throw Error(Errc::bad_config, "--format must be table or json");
      }
      return cmd_example(example_id, example_format, out);
    }
    if (*bench_cmd) return cmd_bench(ba, out);
    if (*gen_cmd) return cmd_gen(gs, gen_out, gen_format, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitConfig;
}

}  // namespace treedet

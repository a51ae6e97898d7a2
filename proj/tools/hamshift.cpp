// hamshift: build, verify and explore the language-connected minimal
// subshift and Sturmian 2-change connectivity.
//
// Exit codes: 0 success/pass, 1 verification failure, 2 infeasible request,
// 3 I/O, format or usage error. JSON goes to stdout, summaries to stderr.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "hamshift/hamshift.hpp"

namespace {

using hamshift::BinaryWord;
using hamshift::Level;
using json = nlohmann::ordered_json;

enum Exit : int { ok = 0, failed = 1, infeasible = 2, io_error = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct LevelSource {
  std::vector<std::string> files;
  std::optional<std::size_t> depth;

  void add_to(CLI::App& cmd) {
    cmd.add_option("levels", files, "Level JSON files");
    cmd.add_option("--depth", depth, "Build levels 0..depth in memory instead of reading files");
  }

  [[nodiscard]] std::vector<Level> load() const {
    if (!files.empty() && depth) throw UsageError("give level files or --depth, not both");
    if (files.empty() && !depth) throw UsageError("no levels: give level files or --depth");
    std::vector<Level> tower;
    if (depth) {
      tower = hamshift::build_tower(*depth);
    } else {
      for (const auto& f : files) tower.push_back(hamshift::read_level_file(f));
    }
    std::sort(tower.begin(), tower.end(), [](const Level& a, const Level& b) { return a.index < b.index; });
    for (std::size_t t = 1; t < tower.size(); ++t) {
      if (tower[t].index == tower[t - 1].index) throw UsageError("level " + std::to_string(tower[t].index) + " given twice");
    }
    return tower;
  }
};

void print(const json& j) { std::cout << j.dump(2) << '\n'; }

std::vector<std::uint64_t> parse_coefficients(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw UsageError("bad continued fraction coefficient '" + item + "'");
    }
  }
  return out;
}

hamshift::FactorSet node_set(const std::vector<Level>& tower, std::size_t n, const std::string& words_file,
                             std::optional<bool>* stabilized) {
  if (!words_file.empty()) {
    std::ifstream in(words_file);
    if (!in) throw std::ios_base::failure("cannot open " + words_file);
    hamshift::FactorSet set(n);
    try {
      for (auto& w : hamshift::read_word_list(in)) set.insert(std::move(w));
    } catch (const std::invalid_argument& e) {
      throw hamshift::LevelFormatError(std::string("word list: ") + e.what());
    }
    return set;
  }
  auto lang = hamshift::factor_language(tower, n);
  if (stabilized) *stabilized = lang.stabilized;
  return std::move(lang.factors);
}

int cmd_build(std::size_t depth, const std::string& out_dir, std::size_t max_depth, const std::string& unsafe) {
  hamshift::TowerOptions options;
  options.max_depth = max_depth;
  if (unsafe == "once") {
    options.mode = hamshift::GenericityMode::once;
    std::cerr << "warning: --unsafe-genericity once breaks the minimality hypotheses; levels are marked non-faithful\n";
  } else if (!unsafe.empty()) {
    throw UsageError("--unsafe-genericity accepts only 'once'");
  }
  const auto tower = hamshift::build_tower(depth, options);
  std::filesystem::create_directories(out_dir);
  json files = json::array();
  for (const auto& level : tower) {
    const auto path = (std::filesystem::path(out_dir) / ("level-" + std::to_string(level.index) + ".json")).string();
    hamshift::write_level_file(path, level);
    files.push_back({{"path", path}, {"i", level.index}, {"n", level.size()}, {"ell", level.word_length}});
    std::cerr << "wrote " << path << " (n=" << level.size() << ", ell=" << level.word_length << ")\n";
  }
  print({{"depth", depth}, {"faithful", tower.back().faithful}, {"levels", files}});
  return ok;
}

int cmd_verify(const LevelSource& source, bool slow, std::optional<std::size_t> sample, bool timings) {
  const auto tower = source.load();
  hamshift::VerifyOptions options;
  options.containment_sample = slow ? std::nullopt : std::optional<std::size_t>(sample.value_or(200));
  json reports = json::array();
  bool pass = true;
  for (std::size_t t = 0; t < tower.size(); ++t) {
    const Level& level = tower[t];
    const Level* prev = t > 0 && tower[t - 1].index + 1 == level.index ? &tower[t - 1] : nullptr;
    hamshift::VerificationReport r;
    r.level = level.index;
    if (prev) {
      r.append(hamshift::verify_level(level, *prev, options));
    } else {
      r.append(hamshift::verify_base_level(level));
    }
    r.append(hamshift::verify_records(level, prev));
    for (std::size_t s = 0; s < t; ++s) {
      if (tower[s].index + 1 <= level.index) r.append(hamshift::verify_property_A(tower, level.index, tower[s].index));
    }
    for (const auto& c : r.checks) {
      std::cerr << "level " << level.index << " " << (c.pass ? "PASS " : "FAIL ") << c.name
                << (c.witness.empty() ? "" : " [" + c.witness + "]") << '\n';
    }
    pass = pass && r.passed();
    reports.push_back(hamshift::to_json(r, timings));
  }
  print({{"pass", pass}, {"containment_sample", options.containment_sample ? json(*options.containment_sample) : json(nullptr)},
         {"reports", reports}});
  return pass ? ok : failed;
}

int cmd_connect(const LevelSource& source, const std::string& words_file, std::size_t n, std::size_t k,
                const std::string& dot_file) {
  std::vector<Level> tower;
  if (words_file.empty()) tower = source.load();
  std::optional<bool> stabilized;
  const auto nodes = node_set(tower, n, words_file, &stabilized);
  const auto g = hamshift::build_change_graph(nodes, k);
  const auto comps = hamshift::connected_components(g);
  json sizes = json::array();
  for (const auto& c : comps) sizes.push_back(c.size());
  json out{{"n", n}, {"k", k}, {"nodeCount", g.nodes.size()}, {"edgeCount", g.edges.size()},
           {"componentCount", comps.size()}, {"componentSizes", sizes}};
  if (words_file.empty()) out["stabilized"] = stabilized ? json(*stabilized) : json(nullptr);
  if (!dot_file.empty()) {
    std::ofstream dot(dot_file);
    if (!dot) throw std::ios_base::failure("cannot open " + dot_file);
    hamshift::write_dot(dot, g);
  }
  std::cerr << g.nodes.size() << " nodes, " << comps.size() << " component(s)\n";
  print(out);
  return comps.size() == 1 ? ok : failed;
}

json path_json(const std::string& mode, const hamshift::HammingPath& path, std::size_t k) {
  json words = json::array();
  for (const auto& w : path.words) words.push_back(w.str());
  return {{"mode", mode}, {"steps", path.edge_count()}, {"valid", hamshift::validate_path(path, k)}, {"words", words}};
}

int cmd_path(const LevelSource& source, std::optional<std::size_t> start, std::size_t n, std::size_t k,
             const std::string& from, const std::string& to) {
  const auto tower = source.load();
  if (start) {
    if (!from.empty() || !to.empty()) throw UsageError("--start excludes --from/--to");
    const Level& level = tower.back();
    auto path = hamshift::schedule_projection_path(level, *start, n);
    json out = path_json("schedule_projection", path, 1);
    out["level"] = level.index;
    out["start"] = *start;
    out["n"] = n;
    print(out);
    return out["valid"].get<bool>() ? ok : failed;
  }
  if (from.empty() || to.empty()) throw UsageError("path needs --start, or both --from and --to");
  const auto u = BinaryWord::parse(from);
  const auto v = BinaryWord::parse(to);
  if (u.size() != n || v.size() != n) throw UsageError("--from/--to must have length --n");
  const auto g = hamshift::build_change_graph(hamshift::factor_language(tower, n).factors, k);
  auto path = hamshift::bfs_path(g, u, v);
  if (!path) {
    print({{"mode", "bfs"}, {"n", n}, {"k", k}, {"found", false}});
    return failed;
  }
  json out = path_json("bfs", *path, k);
  out["n"] = n;
  out["k"] = k;
  out["found"] = true;
  print(out);
  return ok;
}

int cmd_sturmian(const std::string& cf_text, bool repeat_last, bool cycle, std::size_t length, std::size_t n,
                 const std::string& check, bool classify) {
  if (repeat_last && cycle) throw UsageError("--repeat-last and --cycle are exclusive");
  auto coeffs = parse_coefficients(cf_text);
  const auto cf = cycle ? hamshift::ContinuedFraction::periodic(coeffs, std::max(length, coeffs.size()))
                  : repeat_last ? hamshift::ContinuedFraction::repeat_last(coeffs, std::max(length, coeffs.size()))
                                : hamshift::ContinuedFraction(coeffs);
  const auto f = hamshift::sturmian_factors(cf, n);
  json out{{"n", n}, {"check", check}, {"factorCount", f.size()}};
  bool pass = true;
  if (check == "complexity") {
    pass = f.size() == n + 1;
  } else if (check == "balance") {
    pass = hamshift::is_balanced(f);
    out["balanced"] = pass;
  } else {
    if (n < 2) throw std::invalid_argument("n must be at least 2");
    const auto g = hamshift::build_change_graph(f, 2);
    const auto comps = hamshift::connected_components(g).size();
    out["components"] = comps;
    pass = comps == 1;
    if (classify) {
      const auto stats = hamshift::classify_edges(g);
      json hist = json::object();
      for (auto c : hamshift::all_edge_classes) hist[std::string(hamshift::to_string(c))] = stats.histogram[static_cast<std::size_t>(c)];
      out["edgeClassHistogram"] = hist;
      out["restrictedComponents"] = stats.restricted_components;
      const auto g1 = hamshift::build_change_graph(f, 1);
      out["oneChangeComponents"] = hamshift::connected_components(g1).size();
    }
  }
  out["pass"] = pass;
  print(out);
  return pass ? ok : failed;
}

int cmd_export(const LevelSource& source, const std::string& words_file, std::size_t n, std::size_t k, bool dot,
               bool as_json, const std::string& out_file) {
  if (dot == as_json) throw UsageError("export needs exactly one of --dot or --json");
  std::vector<Level> tower;
  if (words_file.empty()) tower = source.load();
  const auto g = hamshift::build_change_graph(node_set(tower, n, words_file, nullptr), k);
  std::ofstream file;
  if (!out_file.empty()) {
    file.open(out_file);
    if (!file) throw std::ios_base::failure("cannot open " + out_file);
  }
  std::ostream& out = out_file.empty() ? std::cout : file;
  if (dot) {
    hamshift::write_dot(out, g);
  } else {
    out << hamshift::to_json(g).dump() << '\n';
  }
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hamshift: language-connected minimal subshift and Sturmian connectivity toolkit"};
  app.require_subcommand(1);

  std::size_t depth = 0, max_depth = 2, n = 0, k = 1, length = 64;
  std::string out_dir = ".", unsafe, words_file, dot_file, from, to, cf_text = "1", check = "2change", out_file;
  bool slow = false, timings = false, repeat_last = false, cycle = false, classify = false, dot = false, as_json = false;
  std::optional<std::size_t> sample, start;

  auto* build = app.add_subcommand("build", "Build levels 0..depth and write level-<i>.json files");
  build->add_option("--depth", depth, "Deepest level")->required();
  build->add_option("--out", out_dir, "Output directory");
  build->add_option("--max-depth", max_depth, "Refuse depths above this");
  build->add_option("--unsafe-genericity", unsafe, "'once': single pair occurrences (non-faithful levels)");

  LevelSource verify_src, connect_src, path_src, export_src;
  auto* verify = app.add_subcommand("verify", "Check the inductive properties of level files");
  verify_src.add_to(*verify);
  verify->add_flag("--slow", slow, "Run containment over every word");
  verify->add_option("--sample", sample, "Words sampled for containment without --slow (default 200)");
  verify->add_flag("--timings", timings, "Include timings_ms in the report");

  auto* connect = app.add_subcommand("connect", "Components of the k-change graph on L_n");
  connect_src.add_to(*connect);
  connect->add_option("--words", words_file, "Word list file to use as the node set");
  connect->add_option("--n", n, "Word length")->required();
  connect->add_option("--k", k, "Change width");
  connect->add_option("--dot", dot_file, "Also write the graph as DOT to this file");

  auto* path = app.add_subcommand("path", "Schedule projection path or BFS path");
  path_src.add_to(*path);
  path->add_option("--start", start, "Window start for a schedule projection of the deepest level");
  path->add_option("--n", n, "Window / word length")->required();
  path->add_option("--k", k, "Change width for BFS");
  path->add_option("--from", from, "BFS source word");
  path->add_option("--to", to, "BFS target word");

  auto* sturmian = app.add_subcommand("sturmian", "Sturmian factor checks");
  sturmian->add_option("--cf", cf_text, "Continued fraction coefficients a_1,a_2,...");
  sturmian->add_flag("--repeat-last", repeat_last, "Extend by repeating the last coefficient");
  sturmian->add_flag("--cycle", cycle, "Extend by repeating the whole list");
  sturmian->add_option("--length", length, "Coefficient count after extension");
  sturmian->add_option("--n", n, "Factor length")->required();
  sturmian->add_option("--check", check, "2change | complexity | balance")
      ->check(CLI::IsMember({"2change", "complexity", "balance"}));
  sturmian->add_flag("--classify", classify, "Edge class histogram and restricted connectivity");

  auto* exp = app.add_subcommand("export", "Write the k-change graph on L_n as DOT or JSON");
  export_src.add_to(*exp);
  exp->add_option("--words", words_file, "Word list file to use as the node set");
  exp->add_option("--n", n, "Word length")->required();
  exp->add_option("--k", k, "Change width");
  exp->add_flag("--dot", dot, "DOT output");
  exp->add_flag("--json", as_json, "JSON output");
  exp->add_option("--out", out_file, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return io_error;
  }

  try {
    if (*build) return cmd_build(depth, out_dir, max_depth, unsafe);
    if (*verify) return cmd_verify(verify_src, slow, sample, timings);
    if (*connect) return cmd_connect(connect_src, words_file, n, k, dot_file);
    if (*path) return cmd_path(path_src, start, n, k, from, to);
    if (*sturmian) return cmd_sturmian(cf_text, repeat_last, cycle, length, n, check, classify);
    if (*exp) return cmd_export(export_src, words_file, n, k, dot, as_json, out_file);
  } catch (const hamshift::InfeasibleLevel& e) {
    std::cerr << "error: " << e.what() << '\n';
    print({{"error", "infeasible"}, {"depth", e.depth()}, {"projectedEll", e.projected_length()}});
    return infeasible;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return io_error;
  } catch (const hamshift::LevelFormatError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return io_error;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return io_error;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return io_error;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return infeasible;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return infeasible;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return infeasible;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return io_error;
  }
  return io_error;
}

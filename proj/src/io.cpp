#include "districting/io.hpp"

#include "districting/rng.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <ostream>
#include <set>
#include <stdexcept>

namespace districting {

namespace fs = std::filesystem;

namespace {

[[noreturn]] void file_error(const std::string& origin, std::int64_t line, const std::string& msg) {
  throw std::runtime_error(origin + ":" + std::to_string(line) + ": " + msg);
}

std::int64_t parse_int_field(const std::string& text, const std::string& origin, std::int64_t line,
                             const char* what) {
  std::int64_t value = 0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    file_error(origin, line, std::string(what) + " must be an integer, got \"" + text + "\"");
  }
  return value;
}

void check_header(const CsvRecord& rec, std::initializer_list<const char*> expected,
                  const std::string& origin) {
  bool ok = rec.fields.size() == expected.size();
  if (ok) {
    std::size_t i = 0;
    for (const char* f : expected) ok = ok && rec.fields[i++] == f;
  }
  if (!ok) {
    std::string want;
    for (const char* f : expected) {
      if (!want.empty()) want += ',';
      want += f;
    }
    file_error(origin, rec.line, "expected header " + want);
  }
}

void check_field_count(const CsvRecord& rec, std::size_t want, const std::string& origin) {
  if (rec.fields.size() != want) {
    file_error(origin, rec.line,
               "expected " + std::to_string(want) + " fields, got " +
                   std::to_string(rec.fields.size()));
  }
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::vector<CsvRecord> parse_csv(const std::string& text, const std::string& origin) {
  std::vector<CsvRecord> records;
  std::size_t i = 0;
  const std::size_t size = text.size();
  if (size >= 3 && text.compare(0, 3, "\xEF\xBB\xBF") == 0) i = 3;  // UTF-8 BOM

  std::int64_t line = 1;
  std::int64_t quote_line = 0;
  CsvRecord rec;
  rec.line = line;
  std::string field;
  bool in_record = false;
  bool in_quoted = false;
  bool after_quoted = false;  // closing quote seen; only , or newline may follow

  auto end_field = [&] {
    rec.fields.push_back(std::move(field));
    field.clear();
    after_quoted = false;
  };
  auto end_record = [&] {
    end_field();
    records.push_back(std::move(rec));
    rec = CsvRecord{};
    rec.line = line;
    in_record = false;
  };

  while (i < size) {
    const char c = text[i];
    if (in_quoted) {
      if (c == '"') {
        if (i + 1 < size && text[i + 1] == '"') {
          field.push_back('"');
          i += 2;
        } else {
          in_quoted = false;
          after_quoted = true;
          ++i;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
        ++i;
      }
      continue;
    }
    if (c == '\r' || c == '\n') {
      ++i;
      if (c == '\r' && i < size && text[i] == '\n') ++i;
      ++line;
      if (in_record) {
        end_record();
      } else {
        rec.line = line;  // blank line, skip
      }
      continue;
    }
    if (c == ',') {
      in_record = true;
      end_field();
      ++i;
      continue;
    }
    if (after_quoted) file_error(origin, line, "unexpected character after closing quote");
    if (c == '"') {
      if (!field.empty()) file_error(origin, line, "quote inside unquoted field");
      in_quoted = true;
      in_record = true;
      quote_line = line;
      ++i;
      continue;
    }
    field.push_back(c);
    in_record = true;
    ++i;
  }
  if (in_quoted) file_error(origin, quote_line, "unterminated quoted field");
  if (in_record) end_record();
  return records;
}

std::vector<CsvRecord> read_csv(const fs::path& path) {
  std::ifstream stream(path, std::ios::binary);
  if (!stream) throw std::runtime_error("cannot open " + path.string());
  std::string text((std::istreambuf_iterator<char>(stream)), std::istreambuf_iterator<char>());
  return parse_csv(text, path.string());
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (const char c : field) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out += '"';
  return out;
}

void write_csv(const fs::path& path, const std::vector<std::vector<std::string>>& rows) {
  std::ofstream stream(path, std::ios::binary);
  if (!stream) throw std::runtime_error("cannot open " + path.string() + " for writing");
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) stream << ',';
      stream << csv_escape(row[i]);
    }
    stream << '\n';
  }
  if (!stream) throw std::runtime_error("failed writing " + path.string());
}

LoadedInstance load_instance(const InstanceFiles& files, std::int32_t k, const Rational& delta) {
  const std::string nodes_name = files.nodes_path.string();
  const auto node_records = read_csv(files.nodes_path);
  if (node_records.empty()) {
    throw std::runtime_error(nodes_name + ": empty file, expected header id,population");
  }
  check_header(node_records[0], {"id", "population"}, nodes_name);

  std::vector<std::pair<NodeId, std::int64_t>> nodes;
  std::vector<std::string> ids;
  std::unordered_map<std::string, NodeId> index_of;
  for (std::size_t r = 1; r < node_records.size(); ++r) {
    const CsvRecord& rec = node_records[r];
    check_field_count(rec, 2, nodes_name);
    const std::string& id = rec.fields[0];
    if (id.empty()) file_error(nodes_name, rec.line, "empty node id");
    const NodeId u = static_cast<NodeId>(ids.size());
    if (!index_of.emplace(id, u).second) {
      file_error(nodes_name, rec.line, "duplicate node id \"" + id + "\"");
    }
    const std::int64_t pop = parse_int_field(rec.fields[1], nodes_name, rec.line, "population");
    if (pop < 0) {
      file_error(nodes_name, rec.line, "population must be nonnegative, got " + rec.fields[1]);
    }
    nodes.emplace_back(u, pop);
    ids.push_back(id);
  }
  if (nodes.empty()) throw std::runtime_error(nodes_name + ": no node rows");

  std::set<std::pair<NodeId, NodeId>> seen;
  std::vector<std::pair<NodeId, NodeId>> edges;
  const auto read_edge_file = [&](const fs::path& path, bool is_patch) {
    const std::string name = path.string();
    const auto records = read_csv(path);
    if (records.empty()) {
      throw std::runtime_error(name + ": empty file, expected header source,target");
    }
    check_header(records[0], {"source", "target"}, name);
    for (std::size_t r = 1; r < records.size(); ++r) {
      const CsvRecord& rec = records[r];
      check_field_count(rec, 2, name);
      const auto lookup = [&](const std::string& id) {
        const auto it = index_of.find(id);
        if (it == index_of.end()) file_error(name, rec.line, "unknown node id \"" + id + "\"");
        return it->second;
      };
      const NodeId u = lookup(rec.fields[0]);
      const NodeId v = lookup(rec.fields[1]);
      if (u == v) file_error(name, rec.line, "self loop at \"" + rec.fields[0] + "\"");
      const auto canon = std::minmax(u, v);
      if (!seen.insert({canon.first, canon.second}).second) {
        const std::string pair =
            "(\"" + ids[canon.first] + "\", \"" + ids[canon.second] + "\")";
        file_error(name, rec.line,
                   is_patch ? "patch duplicates an existing edge " + pair
                            : "duplicate edge " + pair);
      }
      edges.emplace_back(canon.first, canon.second);
    }
  };
  read_edge_file(files.edges_path, false);
  if (files.patches_path) read_edge_file(*files.patches_path, true);

  AdjacencyGraph g = build_graph(nodes, edges);
  const auto components = connected_components(g);
  if (components.size() > 1) {
    std::string msg = "graph is disconnected: " + std::to_string(components.size()) +
                      " components with sizes ";
    for (std::size_t i = 0; i < components.size(); ++i) {
      if (i) msg += ", ";
      msg += std::to_string(components[i].size());
    }
    throw std::runtime_error(msg);
  }

  LoadedInstance loaded{make_instance(std::move(g), k, delta), std::move(ids),
                        std::move(index_of)};
  return loaded;
}

void write_assignment_csv(const fs::path& path, const LoadedInstance& loaded, const Plan& plan) {
  validate_plan(loaded.instance, plan);
  std::vector<std::vector<std::string>> rows;
  rows.reserve(plan.assignment.size() + 1);
  rows.push_back({"id", "district"});
  for (std::size_t u = 0; u < plan.assignment.size(); ++u) {
    rows.push_back({loaded.ids[u], std::to_string(plan.assignment[u])});
  }
  write_csv(path, rows);
}

Plan read_assignment_csv(const fs::path& path, const LoadedInstance& loaded, std::int32_t k) {
  const std::string name = path.string();
  const auto records = read_csv(path);
  if (records.empty()) {
    throw std::runtime_error(name + ": empty file, expected header id,district");
  }
  check_header(records[0], {"id", "district"}, name);

  const NodeId n = loaded.instance.graph().node_count();
  Plan plan;
  plan.assignment.assign(n, -1);
  for (std::size_t r = 1; r < records.size(); ++r) {
    const CsvRecord& rec = records[r];
    check_field_count(rec, 2, name);
    const auto it = loaded.index_of.find(rec.fields[0]);
    if (it == loaded.index_of.end()) {
      file_error(name, rec.line, "unknown node id \"" + rec.fields[0] + "\"");
    }
    if (plan.assignment[it->second] != -1) {
      file_error(name, rec.line, "duplicate assignment for \"" + rec.fields[0] + "\"");
    }
    const std::int64_t d = parse_int_field(rec.fields[1], name, rec.line, "district");
    if (d < 0 || d >= k) {
      file_error(name, rec.line,
                 "district " + std::to_string(d) + " out of range [0, " + std::to_string(k) + ")");
    }
    plan.assignment[it->second] = static_cast<std::int32_t>(d);
  }
  std::int64_t missing = 0;
  NodeId first_missing = -1;
  for (NodeId u = 0; u < n; ++u) {
    if (plan.assignment[u] == -1) {
      ++missing;
      if (first_missing < 0) first_missing = u;
    }
  }
  if (missing > 0) {
    throw std::runtime_error(name + ": assignment is missing " + std::to_string(missing) +
                             " nodes (first missing: \"" + loaded.ids[first_missing] + "\")");
  }
  return plan;
}

void write_trace_csv(const fs::path& path, const TrialTrace& trace) {
  std::vector<std::vector<std::string>> rows;
  rows.reserve(trace.records.size() + 1);
  rows.push_back({"trial", "score", "best_score", "rmsd", "reset"});
  for (const TrialRecord& rec : trace.records) {
    rows.push_back({std::to_string(rec.trial), rec.score.to_string(),
                    rec.best_score.to_string(), format_double(rec.rmsd),
                    rec.reset ? "1" : "0"});
  }
  write_csv(path, rows);
}

namespace {

void append_instance_section(std::string& r, const LoadedInstance& loaded) {
  const AdjacencyGraph& g = loaded.instance.graph();
  r += "instance.nodes=" + std::to_string(g.node_count()) + "\n";
  r += "instance.edges=" + std::to_string(g.edge_count()) + "\n";
  r += "instance.total_population=" + std::to_string(g.total_population()) + "\n";
}

void append_score_section(std::string& r, const ProblemInstance& inst,
                          const PlanEvaluation& eval) {
  r += "result.best_score=" + eval.score.to_string() + "\n";
  r += std::string("result.feasible=") + (eval.feasible ? "true" : "false") + "\n";
  r += "result.big_m=" + std::to_string(inst.big_m()) + "\n";
  if (eval.feasible) {
    r += "result.gerrymander_score=" + eval.score.to_string() + "\n";
  } else {
    r += "result.infeasibility_excess=" + (eval.score - Rational(inst.big_m())).to_string() +
         "\n";
  }
}

void append_district_sections(std::string& r, const LoadedInstance& loaded, const Plan& plan) {
  const ProblemInstance& inst = loaded.instance;
  const auto groups = district_node_sets(inst, plan);
  for (std::int32_t d = 0; d < inst.districts(); ++d) {
    const std::string prefix = "district." + std::to_string(d) + ".";
    std::int64_t pop = 0;
    for (const NodeId u : groups[d]) pop += inst.graph().population(u);
    r += prefix + "population=" + std::to_string(pop) + "\n";
    r += prefix + "nodes=" + std::to_string(groups[d].size()) + "\n";
    if (!groups[d].empty()) {
      const DistrictScore ds = district_score(inst, groups[d]);
      r += prefix + "center=" + loaded.ids[ds.center] + "\n";
      r += prefix + "score=" + std::to_string(ds.score) + "\n";
    }
  }
}

void write_text_file(const fs::path& path, const std::string& text) {
  std::ofstream stream(path, std::ios::binary);
  if (!stream) throw std::runtime_error("cannot open " + path.string() + " for writing");
  stream << text;
  if (!stream) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace

int solve_command(const SolveOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    const auto start = std::chrono::steady_clock::now();
    const Rational delta = Rational::from_decimal(opts.deviation);
    const LoadedInstance loaded = load_instance(opts.files, opts.districts, delta);

    ArrConfig cfg;
    cfg.max_trials = opts.max_trials;
    cfg.perturbation_mode = opts.mode;
    cfg.rng_seed = opts.rng_seed;
    cfg.restarts = opts.restarts;
    const ArrResult result = run_arr(loaded.instance, cfg);
    const PlanEvaluation eval{result.best_score, result.feasible};

    std::string report;
    append_instance_section(report, loaded);
    report += "config.districts=" + std::to_string(opts.districts) + "\n";
    report += "config.deviation=" + opts.deviation + "\n";
    report += std::string("config.mode=") + (opts.mode == PerturbMode::kDown ? "down" : "up") +
              "\n";
    report += "config.max_trials=" + std::to_string(opts.max_trials) + "\n";
    report += "config.restarts=" + std::to_string(opts.restarts) + "\n";
    report += "config.rng_seed=" + std::to_string(opts.rng_seed) + "\n";
    append_score_section(report, loaded.instance, eval);
    report += "result.first_feasible_trial=";
    report += result.trace.first_feasible_trial
                  ? std::to_string(*result.trace.first_feasible_trial)
                  : std::string("none");
    report += "\n";
    report += "result.total_trials=" + std::to_string(result.total_trials) + "\n";
    append_district_sections(report, loaded, result.best_plan);

    fs::create_directories(opts.out_dir);
    write_assignment_csv(opts.out_dir / "assignment.csv", loaded, result.best_plan);
    write_text_file(opts.out_dir / "report.txt", report);
    if (opts.trace_path) write_trace_csv(*opts.trace_path, result.trace);

    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    out << report << "timing.wall_seconds=" << format_double(elapsed.count()) << "\n";
    return result.feasible ? 0 : 2;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return 1;
  }
}

int score_command(const ScoreOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    const Rational delta = Rational::from_decimal(opts.deviation);
    const LoadedInstance loaded = load_instance(opts.files, opts.districts, delta);
    const Plan plan = read_assignment_csv(opts.assignment_path, loaded, opts.districts);
    const PlanEvaluation eval = evaluate_plan(loaded.instance, plan);

    std::string report;
    append_instance_section(report, loaded);
    report += "config.districts=" + std::to_string(opts.districts) + "\n";
    report += "config.deviation=" + opts.deviation + "\n";
    append_score_section(report, loaded.instance, eval);
    append_district_sections(report, loaded, plan);

    fs::create_directories(opts.out_dir);
    write_text_file(opts.out_dir / "report.txt", report);
    out << report;
    return 0;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return 1;
  }
}

GeneratedInstance gen_grid(std::int32_t rows, std::int32_t cols, std::int64_t pop_min,
                           std::int64_t pop_max, std::uint64_t seed) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("gen_grid: rows and cols must be >= 1");
  if (pop_min < 0 || pop_max < pop_min) {
    throw std::invalid_argument("gen_grid: need 0 <= pop-min <= pop-max");
  }
  std::mt19937_64 rng(seed);
  const auto draw_pop = [&] {
    if (pop_min == pop_max) return pop_min;
    const double span = static_cast<double>(pop_max - pop_min + 1);
    const std::int64_t pop = pop_min + static_cast<std::int64_t>(u01(rng) * span);
    return std::min(pop, pop_max);
  };
  const auto name = [cols](std::int32_t r, std::int32_t c) {
    return "n" + std::to_string(static_cast<std::int64_t>(r) * cols + c);
  };

  GeneratedInstance out;
  for (std::int32_t r = 0; r < rows; ++r) {
    for (std::int32_t c = 0; c < cols; ++c) out.nodes.emplace_back(name(r, c), draw_pop());
  }
  for (std::int32_t r = 0; r < rows; ++r) {
    for (std::int32_t c = 0; c < cols; ++c) {
      if (c + 1 < cols) out.edges.emplace_back(name(r, c), name(r, c + 1));
      if (r + 1 < rows) out.edges.emplace_back(name(r, c), name(r + 1, c));
    }
  }
  return out;
}

GeneratedInstance gen_random_planar(std::int32_t n, std::int32_t neighbors, std::int64_t pop_min,
                                    std::int64_t pop_max, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("gen_random_planar: need at least 2 nodes");
  if (neighbors < 1 || neighbors >= n) {
    throw std::invalid_argument("gen_random_planar: neighbors must lie in [1, nodes)");
  }
  if (pop_min < 0 || pop_max < pop_min) {
    throw std::invalid_argument("gen_random_planar: need 0 <= pop-min <= pop-max");
  }
  std::mt19937_64 rng(seed);
  std::vector<double> x(n), y(n);
  for (std::int32_t i = 0; i < n; ++i) {
    x[i] = u01(rng);
    y[i] = u01(rng);
  }
  std::vector<std::int64_t> pops(n, pop_min);
  if (pop_min != pop_max) {
    const double span = static_cast<double>(pop_max - pop_min + 1);
    for (std::int32_t i = 0; i < n; ++i) {
      pops[i] = std::min(pop_min + static_cast<std::int64_t>(u01(rng) * span), pop_max);
    }
  }
  const auto dist2 = [&](std::int32_t i, std::int32_t j) {
    const double dx = x[i] - x[j];
    const double dy = y[i] - y[j];
    return dx * dx + dy * dy;
  };

  std::set<std::pair<std::int32_t, std::int32_t>> edge_set;
  std::vector<std::pair<double, std::int32_t>> candidates;
  candidates.reserve(n - 1);
  for (std::int32_t i = 0; i < n; ++i) {
    candidates.clear();
    for (std::int32_t j = 0; j < n; ++j) {
      if (j != i) candidates.emplace_back(dist2(i, j), j);
    }
    std::partial_sort(candidates.begin(), candidates.begin() + neighbors, candidates.end());
    for (std::int32_t t = 0; t < neighbors; ++t) {
      const std::int32_t j = candidates[t].second;
      edge_set.insert({std::min(i, j), std::max(i, j)});
    }
  }

  // Bridge leftover islands with the closest cross-component pair.
  std::vector<std::int32_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  const auto find = [&](std::int32_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  std::int32_t components = n;
  const auto unite = [&](std::int32_t a, std::int32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    parent[std::max(a, b)] = std::min(a, b);
    --components;
  };
  for (const auto& [a, b] : edge_set) unite(a, b);
  while (components > 1) {
    double best = 0.0;
    std::int32_t bi = -1, bj = -1;
    for (std::int32_t i = 0; i < n; ++i) {
      for (std::int32_t j = i + 1; j < n; ++j) {
        if (find(i) == find(j)) continue;
        const double d = dist2(i, j);
        if (bi < 0 || d < best) {
          best = d;
          bi = i;
          bj = j;
        }
      }
    }
    edge_set.insert({bi, bj});
    unite(bi, bj);
  }

  GeneratedInstance out;
  const auto name = [](std::int32_t i) { return "n" + std::to_string(i); };
  for (std::int32_t i = 0; i < n; ++i) out.nodes.emplace_back(name(i), pops[i]);
  for (const auto& [a, b] : edge_set) out.edges.emplace_back(name(a), name(b));
  return out;
}

void write_instance_files(const fs::path& out_dir, const GeneratedInstance& inst) {
  fs::create_directories(out_dir);
  std::vector<std::vector<std::string>> node_rows;
  node_rows.reserve(inst.nodes.size() + 1);
  node_rows.push_back({"id", "population"});
  for (const auto& [id, pop] : inst.nodes) node_rows.push_back({id, std::to_string(pop)});
  write_csv(out_dir / "nodes.csv", node_rows);

  std::vector<std::vector<std::string>> edge_rows;
  edge_rows.reserve(inst.edges.size() + 1);
  edge_rows.push_back({"source", "target"});
  for (const auto& [a, b] : inst.edges) edge_rows.push_back({a, b});
  write_csv(out_dir / "edges.csv", edge_rows);
}

int gen_grid_command(const GridGenOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    const GeneratedInstance inst =
        gen_grid(opts.rows, opts.cols, opts.pop_min, opts.pop_max, opts.seed);
    write_instance_files(opts.out_dir, inst);
    out << "generated " << inst.nodes.size() << " nodes, " << inst.edges.size() << " edges in "
        << opts.out_dir.string() << "\n";
    return 0;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return 1;
  }
}

int gen_planar_command(const PlanarGenOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    const GeneratedInstance inst =
        gen_random_planar(opts.nodes, opts.neighbors, opts.pop_min, opts.pop_max, opts.seed);
    write_instance_files(opts.out_dir, inst);
    out << "generated " << inst.nodes.size() << " nodes, " << inst.edges.size() << " edges in "
        << opts.out_dir.string() << "\n";
    return 0;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return 1;
  }
}

}  // namespace districting

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "districting/arr.hpp"
#include "districting/model.hpp"

namespace districting {

// One CSV record plus the 1-based line number where it starts, kept
// for error messages. Quoted fields may contain commas, doubled
// quotes and newlines; blank lines are skipped.
struct CsvRecord {
  std::vector<std::string> fields;
  std::int64_t line = 0;
};

std::vector<CsvRecord> parse_csv(const std::string& text, const std::string& origin);
std::vector<CsvRecord> read_csv(const std::filesystem::path& path);

// Minimal quoting: a field is quoted only when it contains a comma,
// quote or line break. Rows end with a bare LF.
std::string csv_escape(const std::string& field);
void write_csv(const std::filesystem::path& path,
               const std::vector<std::vector<std::string>>& rows);

struct InstanceFiles {
  std::filesystem::path nodes_path;                   // header: id,population
  std::filesystem::path edges_path;                   // header: source,target
  std::optional<std::filesystem::path> patches_path;  // extra edges, same header
};

// A built instance plus the external string ids it was loaded from.
// ids[u] is the external name of dense node u.
struct LoadedInstance {
  ProblemInstance instance;
  std::vector<std::string> ids;
  std::unordered_map<std::string, NodeId> index_of;
};

// Parses the files, applies patch edges (each must be absent from the
// edge file), and builds the instance. Throws std::runtime_error with
// file:line context on malformed rows, unknown ids, self loops and
// duplicate edges; a disconnected union graph is reported with the
// component sizes.
LoadedInstance load_instance(const InstanceFiles& files, std::int32_t k, const Rational& delta);

// assignment CSV: header id,district, one row per node in dense node
// order, external ids.
void write_assignment_csv(const std::filesystem::path& path, const LoadedInstance& loaded,
                          const Plan& plan);

// Reads a plan back; every node must appear exactly once with a label
// in 0..k-1.
Plan read_assignment_csv(const std::filesystem::path& path, const LoadedInstance& loaded,
                         std::int32_t k);

void write_trace_csv(const std::filesystem::path& path, const TrialTrace& trace);

struct SolveOptions {
  InstanceFiles files;
  std::int32_t districts = 0;
  std::string deviation = "0.05";  // parsed exactly; echoed verbatim in the report
  std::int64_t max_trials = 1000;
  std::int32_t restarts = 1;
  std::uint64_t rng_seed = 0;
  PerturbMode mode = PerturbMode::kDown;
  std::filesystem::path out_dir;
  std::optional<std::filesystem::path> trace_path;
};

// Runs the solver and writes assignment.csv and report.txt into
// out_dir; the report is also echoed to out with a trailing wall-time
// line (stdout only, so identical runs produce identical files).
// Exit status: 0 feasible best plan, 2 infeasible best plan, 1 input
// error (message on err).
int solve_command(const SolveOptions& opts, std::ostream& out, std::ostream& err);

struct ScoreOptions {
  InstanceFiles files;
  std::filesystem::path assignment_path;
  std::int32_t districts = 0;
  std::string deviation = "0.05";
  std::filesystem::path out_dir;
};

// Evaluates an externally produced assignment and writes report.txt.
// Exit status: 0 on a successful evaluation (feasible or not, the
// report says which), 1 on input error.
int score_command(const ScoreOptions& opts, std::ostream& out, std::ostream& err);

struct GeneratedInstance {
  std::vector<std::pair<std::string, std::int64_t>> nodes;  // id, population
  std::vector<std::pair<std::string, std::string>> edges;   // source, target
};

// rows x cols grid, ids n0..n{rows*cols-1} row-major. Populations are
// pop_min when pop_min == pop_max (no rng draw), otherwise uniform
// integers in [pop_min, pop_max].
GeneratedInstance gen_grid(std::int32_t rows, std::int32_t cols, std::int64_t pop_min,
                           std::int64_t pop_max, std::uint64_t seed);

// Planar-ish graph: nodes at uniform random points in the unit square,
// symmetrized k-nearest-neighbor edges, components then bridged by the
// closest cross-component pairs. Deterministic given the seed.
GeneratedInstance gen_random_planar(std::int32_t n, std::int32_t neighbors, std::int64_t pop_min,
                                    std::int64_t pop_max, std::uint64_t seed);

// nodes.csv and edges.csv under out_dir.
void write_instance_files(const std::filesystem::path& out_dir, const GeneratedInstance& inst);

struct GridGenOptions {
  std::int32_t rows = 0;
  std::int32_t cols = 0;
  std::int64_t pop_min = 1;
  std::int64_t pop_max = 1;
  std::uint64_t seed = 0;
  std::filesystem::path out_dir;
};

struct PlanarGenOptions {
  std::int32_t nodes = 0;
  std::int32_t neighbors = 5;
  std::int64_t pop_min = 1;
  std::int64_t pop_max = 1;
  std::uint64_t seed = 0;
  std::filesystem::path out_dir;
};

int gen_grid_command(const GridGenOptions& opts, std::ostream& out, std::ostream& err);
int gen_planar_command(const PlanarGenOptions& opts, std::ostream& out, std::ostream& err);

}  // namespace districting

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mtvrp/analysis.hpp"
#include "mtvrp/mfcga.hpp"
#include "mtvrp/mfea.hpp"

namespace mtvrp {

namespace fs = std::filesystem;

class HarnessError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A bad request from the user (unknown test case, malformed grid...), as opposed to a failure
/// while running.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------
// Test-case registry
// ---------------------------------------------------------------------------

struct TestCase {
    std::string id;
    std::vector<std::string> instances;
};

/// The 12 benchmark instances in column order.
const std::vector<std::string>& benchmark_instances();

/// The 11 multitasking scenarios, TC_4_1 ... TC_12.
const std::vector<TestCase>& test_cases();

/// Throws UsageError for an unknown id.
const TestCase& find_test_case(const std::string& id);

/// Known optima, one `instance,optimum` row per line after a header.
std::map<std::string, double> load_optima(const fs::path& path);

// ---------------------------------------------------------------------------
// Experiments
// ---------------------------------------------------------------------------

enum class Algorithm { mfea, mfcga };

std::string to_string(Algorithm a);

enum class Execution { serial, parallel };

struct ExperimentConfig {
    std::string testcase = "TC_12";
    std::vector<Algorithm> algorithms{Algorithm::mfcga, Algorithm::mfea};
    int runs = 20;
    std::uint64_t base_seed = 1;
    fs::path instance_dir;
    MfeaConfig mfea;
    MfcgaConfig mfcga;
    bool record_time = false;  // wall_ms stays 0 unless set, keeping output byte-stable
};

/// One row of results.csv.
struct RunRecord {
    std::string testcase;
    std::string algo;
    int run = 0;
    std::uint64_t seed = 0;
    std::string instance;
    std::int64_t best_cost = 0;
    std::int64_t evals = 0;
    std::int64_t wall_ms = 0;
};

struct RunOutput {
    Algorithm algorithm = Algorithm::mfcga;
    int run = 0;
    std::uint64_t seed = 0;
    SolverResult result;
    std::optional<TransferLedger> ledger;  // MFCGA only
    std::int64_t wall_ms = 0;
};

struct ExperimentOutput {
    std::string testcase;
    std::vector<std::string> instances;
    std::vector<RunOutput> runs;  // ordered by algorithm, then run index

    std::vector<RunRecord> records() const;
};

TaskSet load_task_set(const std::vector<std::string>& names, const fs::path& instance_dir);

/// Runs every (algorithm, run) pair; run r uses seed base_seed + r for every algorithm.
/// The parallel path spreads runs over OpenMP threads and returns the same output as the serial one.
ExperimentOutput run_experiment(const ExperimentConfig& config, const TaskSet& tasks,
                                Execution execution = Execution::parallel);

/// Writes results.csv, ledger_run<r>.csv per MFCGA run and the best solution per
/// (algorithm, instance) under solutions/<algo>/<instance>.sol.
void write_experiment(const ExperimentOutput& out, const TaskSet& tasks, const fs::path& dir);

// ---------------------------------------------------------------------------
// CSV artifacts
// ---------------------------------------------------------------------------

inline constexpr const char* kResultsHeader = "testcase,algo,run,seed,instance,best_cost,evals,wall_ms";
inline constexpr const char* kLedgerHeader = "run,target_task,source_task,count,kind";

void write_results_csv(std::ostream& os, const std::vector<RunRecord>& records);
std::vector<RunRecord> read_results_csv(std::istream& is);

void write_ledger_csv(std::ostream& os, int run, const TransferLedger& ledger);
/// Returns the ledger; `run` receives the run column.
TransferLedger read_ledger_csv(std::istream& is, int k, int* run = nullptr);

/// CVRPLIB solution format: "Route #i: c1 c2 ..." lines then "Cost <n>".
void write_solution(std::ostream& os, const RoutePlan& plan, std::int64_t cost);
RoutePlan read_solution(std::istream& is, const CvrpInstance& instance);

/// Square matrix with row and column labels: header "task,<name>...", then "<name>,<values>...".
struct LabeledMatrix {
    std::vector<std::string> labels;
    std::vector<std::vector<double>> values;
};

void write_matrix_csv(std::ostream& os, const LabeledMatrix& m, int precision = 3);
/// Throws HarnessError when the matrix is not square or the labels disagree.
LabeledMatrix read_matrix_csv(std::istream& is);

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

struct InstanceSummary {
    std::string instance;
    std::string algo;
    SampleStats stats;
    std::optional<double> optimum;
    std::optional<double> deviation_pct;  // 100 * (mean - opt) / opt
};

struct InstanceComparison {
    std::string instance;
    Sign sign;  // first algorithm (MFCGA) against the second (MFEA)
    SignificanceVerdict verdict;
};

struct Report {
    std::string testcase;
    std::vector<std::string> instances;
    std::vector<std::string> algorithms;
    std::vector<InstanceSummary> summaries;      // per algorithm, per instance
    std::vector<InstanceComparison> comparisons;  // empty unless both algorithms are present
};

/// Throws HarnessError when the two algorithms have different run counts.
Report build_report(const std::vector<RunRecord>& records, const std::map<std::string, double>* optima = nullptr);

void write_report(const Report& report, const fs::path& dir);
void print_report(const Report& report, std::ostream& os);

/// Reads every ledger_run*.csv under `dir`, in run order.
std::vector<TransferLedger> load_ledgers(const fs::path& dir, int k);

LabeledMatrix transfer_matrix(const TransferSummary& summary, const std::vector<std::string>& names);

/// Client-overlap percentages, rows and columns in `names` order; the diagonal is 100.
LabeledMatrix client_overlap_table(const std::vector<CvrpInstance>& instances);

/// Arc-overlap percentages of the given solutions (one per instance).
LabeledMatrix solution_overlap_table(const std::vector<CvrpInstance>& instances, const std::vector<RoutePlan>& plans);

}  // namespace mtvrp

// mtvrp: run and analyse multitask CVRP experiments.
//
//   mtvrp solve --testcase TC_12 --algo both --runs 20 --seed 7 --instances data/instances --out out/
//   mtvrp report --results out/ --optima data/optima.csv
//   mtvrp similarity --instances data/instances --testcase TC_12 --out out/ [--solutions out/solutions/mfcga]
//   mtvrp heatmap --matrix out/transfer_matrix.csv --out out/transfer.svg
//
// Exit codes: 0 success, 1 usage error, 2 runtime error.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <regex>

#include "CLI11.hpp"
#include "mtvrp/harness.hpp"
#include "mtvrp/heatmap.hpp"

namespace fs = std::filesystem;
using namespace mtvrp;

namespace {

constexpr int kUsageError = 1;
constexpr int kRuntimeError = 2;

fs::path resolve_instance_dir(const std::string& flag) {
    if (!flag.empty()) return flag;
    if (const char* env = std::getenv("MTVRP_INSTANCES"); env && *env) return env;
    return "data/instances";
}

std::pair<int, int> parse_grid(const std::string& text) {
    static const std::regex pattern(R"((\d+)[xX](\d+))");
    std::smatch m;
    if (!std::regex_match(text, m, pattern)) throw UsageError("--grid expects RxC, got '" + text + "'");
    return {std::stoi(m[1]), std::stoi(m[2])};
}

// rows x cols for a population with no explicit grid: the most square tiling with both sides >= 3
std::pair<int, int> default_grid(int population) {
    for (int rows = static_cast<int>(std::sqrt(static_cast<double>(population))); rows >= 3; --rows)
        if (population % rows == 0 && population / rows >= 3) return {rows, population / rows};
    throw UsageError("population " + std::to_string(population) + " has no grid tiling with sides >= 3; pass --grid");
}

struct SolveArgs {
    std::string testcase;
    std::string algo = "both";
    int runs = 20;
    std::uint64_t seed = 1;
    std::string instances;
    std::string out;
    int pop = 0;
    std::int64_t budget = 0;
    std::string grid;
    double rmp = -1.0;
    bool timing = false;
    bool serial = false;
};

int cmd_solve(const SolveArgs& a) {
    const auto& tc = find_test_case(a.testcase);
    ExperimentConfig cfg;
    cfg.testcase = tc.id;
    if (a.algo == "both") cfg.algorithms = {Algorithm::mfcga, Algorithm::mfea};
    else if (a.algo == "mfcga") cfg.algorithms = {Algorithm::mfcga};
    else if (a.algo == "mfea") cfg.algorithms = {Algorithm::mfea};
    else throw UsageError("--algo must be mfea, mfcga or both");
    cfg.runs = a.runs;
    cfg.base_seed = a.seed;
    cfg.instance_dir = resolve_instance_dir(a.instances);
    cfg.record_time = a.timing;
    if (a.pop > 0) {
        cfg.mfea.population_size = a.pop;
        cfg.mfcga.population_size = a.pop;
        if (a.grid.empty()) std::tie(cfg.mfcga.grid_rows, cfg.mfcga.grid_cols) = default_grid(a.pop);
    }
    if (!a.grid.empty()) std::tie(cfg.mfcga.grid_rows, cfg.mfcga.grid_cols) = parse_grid(a.grid);
    if (a.budget > 0) {
        cfg.mfea.evaluation_budget = a.budget;
        cfg.mfcga.evaluation_budget = a.budget;
    }
    if (a.rmp >= 0.0) cfg.mfea.rmp = a.rmp;

    const auto tasks = load_task_set(tc.instances, cfg.instance_dir);
    try {
        for (auto algo : cfg.algorithms) {
            if (algo == Algorithm::mfea) validate(cfg.mfea, tasks.k());
            else validate(cfg.mfcga, tasks.k());
        }
    } catch (const ConfigError& e) {
        throw UsageError(e.what());
    }
    const auto out = run_experiment(cfg, tasks, a.serial ? Execution::serial : Execution::parallel);
    write_experiment(out, tasks, a.out);
    std::cout << "wrote " << out.runs.size() << " runs of " << tc.id << " to " << a.out << '\n';
    return 0;
}

int cmd_report(const std::string& results_dir, const std::string& optima_path, std::string out_dir) {
    if (out_dir.empty()) out_dir = results_dir;
    std::ifstream in(fs::path(results_dir) / "results.csv");
    if (!in) throw HarnessError("cannot read " + (fs::path(results_dir) / "results.csv").string());
    const auto records = read_results_csv(in);

    std::map<std::string, double> optima;
    if (!optima_path.empty()) optima = load_optima(optima_path);
    const auto report = build_report(records, optima_path.empty() ? nullptr : &optima);
    write_report(report, out_dir);
    print_report(report, std::cout);

    const auto ledgers = load_ledgers(results_dir, static_cast<int>(report.instances.size()));
    if (!ledgers.empty()) {
        const auto summary = aggregate_transfer(ledgers);
        std::ofstream m(fs::path(out_dir) / "transfer_matrix.csv");
        write_matrix_csv(m, transfer_matrix(summary, report.instances));
        std::ofstream mu(fs::path(out_dir) / "transfer_mutation.csv");
        mu << "task,mean_mutation_improvements\n";
        for (std::size_t t = 0; t < report.instances.size(); ++t)
            mu << report.instances[t] << ',' << summary.mutation_mean[t] << '\n';
        std::cout << "\ntransfer matrix over " << ledgers.size() << " MFCGA runs written to "
                  << (fs::path(out_dir) / "transfer_matrix.csv").string() << '\n';
    }
    return 0;
}

int cmd_similarity(const std::string& instances_flag, const std::string& testcase, const std::string& out_dir,
                   const std::string& solutions_dir) {
    const auto dir = resolve_instance_dir(instances_flag);
    const auto& names = testcase.empty() ? benchmark_instances() : find_test_case(testcase).instances;
    std::vector<CvrpInstance> instances;
    for (const auto& n : names) {
        const auto path = dir / (n + ".vrp");
        if (!fs::exists(path)) throw HarnessError("missing instance file " + path.string());
        instances.push_back(load_instance(path));
    }
    fs::create_directories(out_dir);
    {
        std::ofstream os(fs::path(out_dir) / "client_overlap.csv");
        write_matrix_csv(os, client_overlap_table(instances), 1);
    }
    if (!solutions_dir.empty()) {
        std::vector<RoutePlan> plans;
        for (const auto& inst : instances) {
            const auto path = fs::path(solutions_dir) / (inst.name + ".sol");
            std::ifstream is(path);
            if (!is) throw HarnessError("missing solution file " + path.string());
            plans.push_back(read_solution(is, inst));
        }
        std::ofstream os(fs::path(out_dir) / "arc_overlap.csv");
        write_matrix_csv(os, solution_overlap_table(instances, plans), 0);
    }
    std::cout << "similarity tables written to " << out_dir << '\n';
    return 0;
}

int cmd_heatmap(const std::string& matrix_path, const std::string& out_path) {
    std::ifstream in(matrix_path);
    if (!in) throw HarnessError("cannot read " + matrix_path);
    const auto matrix = read_matrix_csv(in);
    std::ofstream os(out_path, std::ios::binary);
    if (!os) throw HarnessError("cannot write " + out_path);
    os << render_transfer_svg(matrix);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Evolutionary multitasking (MFEA / MFCGA) for the capacitated VRP"};
    app.require_subcommand(1);

    SolveArgs solve;
    auto* s = app.add_subcommand("solve", "run MFEA and/or MFCGA on a test case");
    s->add_option("--testcase", solve.testcase, "test case id, e.g. TC_12")->required();
    s->add_option("--algo", solve.algo, "mfea, mfcga or both");
    s->add_option("--runs", solve.runs, "independent runs per algorithm")->check(CLI::PositiveNumber);
    s->add_option("--seed", solve.seed, "base seed; run r uses seed + r");
    s->add_option("--instances", solve.instances, "directory of .vrp files (default $MTVRP_INSTANCES or data/instances)");
    s->add_option("--out", solve.out, "output directory")->required();
    s->add_option("--pop", solve.pop, "population size")->check(CLI::PositiveNumber);
    s->add_option("--budget", solve.budget, "objective evaluations per run")->check(CLI::PositiveNumber);
    s->add_option("--grid", solve.grid, "MFCGA grid, RxC");
    s->add_option("--rmp", solve.rmp, "MFEA random mating probability")->check(CLI::Range(0.0, 1.0));
    s->add_flag("--timing", solve.timing, "record wall-clock time per run (results are then not byte-stable)");
    s->add_flag("--serial", solve.serial, "run on one thread");

    std::string results_dir, optima, report_out;
    auto* r = app.add_subcommand("report", "summary, sign and significance tables from solve output");
    r->add_option("--results", results_dir, "directory written by solve")->required();
    r->add_option("--optima", optima, "CSV of known optima for deviation columns");
    r->add_option("--out", report_out, "output directory (default: the results directory)");

    std::string sim_instances, sim_testcase, sim_out, sim_solutions;
    auto* sim = app.add_subcommand("similarity", "client-overlap and best-solution arc-overlap tables");
    sim->add_option("--instances", sim_instances, "directory of .vrp files");
    sim->add_option("--testcase", sim_testcase, "restrict to one test case's instances");
    sim->add_option("--out", sim_out, "output directory")->required();
    sim->add_option("--solutions", sim_solutions, "directory of <instance>.sol files for arc overlap");

    std::string matrix_path, svg_out;
    auto* h = app.add_subcommand("heatmap", "SVG circle matrix of transfer intensities");
    h->add_option("--matrix", matrix_path, "transfer_matrix.csv from report")->required();
    h->add_option("--out", svg_out, "SVG file to write")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kUsageError;
    }

    try {
        if (*s) return cmd_solve(solve);
        if (*r) return cmd_report(results_dir, optima, report_out);
        if (*sim) return cmd_similarity(sim_instances, sim_testcase, sim_out, sim_solutions);
        if (*h) return cmd_heatmap(matrix_path, svg_out);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kRuntimeError;
    }
    return kUsageError;
}

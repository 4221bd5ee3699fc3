#include "mtvrp/harness.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <set>
#include <sstream>

namespace mtvrp {

// ---------------------------------------------------------------------------
// Registry
// ---------------------------------------------------------------------------

const std::vector<std::string>& benchmark_instances() {
    static const std::vector<std::string> names{
        "P-n16-k8", "P-n19-k2", "P-n20-k2",  "P-n21-k2",  "P-n22-k2",  "P-n23-k8",
        "P-n50-k7", "P-n50-k8", "P-n55-k7", "P-n55-k15", "P-n60-k10", "P-n60-k15",
    };
    return names;
}

const std::vector<TestCase>& test_cases() {
    static const std::vector<TestCase> cases{
        {"TC_4_1", {"P-n16-k8", "P-n19-k2", "P-n20-k2", "P-n21-k2"}},
        {"TC_4_2", {"P-n20-k2", "P-n21-k2", "P-n22-k2", "P-n23-k8"}},
        {"TC_4_3", {"P-n50-k7", "P-n50-k8", "P-n55-k7", "P-n55-k15"}},
        {"TC_4_4", {"P-n55-k7", "P-n55-k15", "P-n60-k10", "P-n60-k15"}},
        {"TC_6_1", {"P-n16-k8", "P-n19-k2", "P-n20-k2", "P-n50-k7", "P-n50-k8", "P-n55-k7"}},
        {"TC_6_2", {"P-n21-k2", "P-n22-k2", "P-n23-k8", "P-n55-k15", "P-n60-k10", "P-n60-k15"}},
        {"TC_6_3", {"P-n16-k8", "P-n19-k2", "P-n20-k2", "P-n55-k15", "P-n60-k10", "P-n60-k15"}},
        {"TC_6_4", {"P-n21-k2", "P-n22-k2", "P-n23-k8", "P-n50-k7", "P-n50-k8", "P-n55-k7"}},
        {"TC_6_5", {"P-n16-k8", "P-n19-k2", "P-n20-k2", "P-n21-k2", "P-n22-k2", "P-n23-k8"}},
        {"TC_6_6", {"P-n50-k7", "P-n50-k8", "P-n55-k7", "P-n55-k15", "P-n60-k10", "P-n60-k15"}},
        {"TC_12", benchmark_instances()},
    };
    return cases;
}

const TestCase& find_test_case(const std::string& id) {
    for (const auto& tc : test_cases())
        if (tc.id == id) return tc;
    throw UsageError("unknown test case '" + id + "'");
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) {
        if (!field.empty() && field.back() == '\r') field.pop_back();
        out.push_back(field);
    }
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

std::int64_t to_i64(const std::string& s, const char* what) {
    try {
        std::size_t pos = 0;
        const auto v = std::stoll(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw HarnessError(std::string("bad ") + what + " value '" + s + "'");
    }
}

double to_double(const std::string& s, const char* what) {
    try {
        std::size_t pos = 0;
        const auto v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw HarnessError(std::string("bad ") + what + " value '" + s + "'");
    }
}

std::ofstream open_out(const fs::path& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw HarnessError("cannot write " + path.string());
    return os;
}

std::ifstream open_in(const fs::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw HarnessError("cannot read " + path.string());
    return is;
}

}  // namespace

std::map<std::string, double> load_optima(const fs::path& path) {
    auto is = open_in(path);
    std::map<std::string, double> out;
    std::string line;
    bool header = true;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (header) {
            header = false;
            continue;
        }
        const auto f = split_csv(line);
        if (f.size() != 2) throw HarnessError("optima file: expected 'instance,optimum', got '" + line + "'");
        out[f[0]] = to_double(f[1], "optimum");
    }
    return out;
}

// ---------------------------------------------------------------------------
// Experiments
// ---------------------------------------------------------------------------

std::string to_string(Algorithm a) { return a == Algorithm::mfea ? "mfea" : "mfcga"; }

TaskSet load_task_set(const std::vector<std::string>& names, const fs::path& instance_dir) {
    std::vector<Task> tasks;
    for (const auto& name : names) {
        const auto path = instance_dir / (name + ".vrp");
        if (!fs::exists(path)) throw HarnessError("missing instance file " + path.string());
        tasks.emplace_back(load_instance(path));
    }
    return TaskSet(std::move(tasks));
}

namespace {

RunOutput run_one(const ExperimentConfig& config, const TaskSet& tasks, Algorithm algo, int run) {
    RunOutput out{algo, run, config.base_seed + static_cast<std::uint64_t>(run), {}, std::nullopt, 0};
    RngStream rng(out.seed);
    const auto start = std::chrono::steady_clock::now();
    if (algo == Algorithm::mfea) {
        out.result = run_mfea(tasks, config.mfea, rng);
    } else {
        auto r = run_mfcga(tasks, config.mfcga, rng);
        out.result = std::move(r.solver);
        out.ledger = std::move(r.ledger);
    }
    if (config.record_time)
        out.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start)
                          .count();
    return out;
}

}  // namespace

ExperimentOutput run_experiment(const ExperimentConfig& config, const TaskSet& tasks, Execution execution) {
    if (config.runs < 1) throw UsageError("runs must be at least 1");
    for (auto algo : config.algorithms) {
        if (algo == Algorithm::mfea) validate(config.mfea, tasks.k());
        else validate(config.mfcga, tasks.k());
    }

    ExperimentOutput out;
    out.testcase = config.testcase;
    for (const auto& t : tasks.tasks()) out.instances.push_back(t.instance.name);

    const auto n_algos = static_cast<int>(config.algorithms.size());
    const int jobs = n_algos * config.runs;
    out.runs.resize(jobs);
    if (execution == Execution::serial) {
        for (int j = 0; j < jobs; ++j) out.runs[j] = run_one(config, tasks, config.algorithms[j / config.runs], j % config.runs);
    } else {
        // each run owns its RNG and solver state; tasks are shared read-only
#pragma omp parallel for schedule(dynamic, 1)
        for (int j = 0; j < jobs; ++j) out.runs[j] = run_one(config, tasks, config.algorithms[j / config.runs], j % config.runs);
    }
    return out;
}

std::vector<RunRecord> ExperimentOutput::records() const {
    std::vector<RunRecord> rows;
    for (const auto& r : runs)
        for (std::size_t t = 0; t < instances.size(); ++t)
            rows.push_back({testcase, to_string(r.algorithm), r.run, r.seed, instances[t], r.result.best_cost_per_task[t],
                            r.result.evaluations_used, r.wall_ms});
    return rows;
}

void write_experiment(const ExperimentOutput& out, const TaskSet& tasks, const fs::path& dir) {
    fs::create_directories(dir);
    {
        auto os = open_out(dir / "results.csv");
        write_results_csv(os, out.records());
    }
    // best solution over runs per (algorithm, instance); first run wins ties
    std::map<Algorithm, std::vector<const RunOutput*>> best;
    for (const auto& r : out.runs) {
        if (r.ledger) {
            auto os = open_out(dir / ("ledger_run" + std::to_string(r.run) + ".csv"));
            write_ledger_csv(os, r.run, *r.ledger);
        }
        auto& slot = best[r.algorithm];
        slot.resize(tasks.k(), nullptr);
        for (int t = 0; t < tasks.k(); ++t)
            if (!slot[t] || r.result.best_cost_per_task[t] < slot[t]->result.best_cost_per_task[t]) slot[t] = &r;
    }
    for (const auto& [algo, per_task] : best) {
        const auto sol_dir = dir / "solutions" / to_string(algo);
        fs::create_directories(sol_dir);
        for (int t = 0; t < tasks.k(); ++t) {
            const auto& task = tasks[t];
            const auto plan = split_decode(project(per_task[t]->result.best_genome_per_task[t], task.size()), task.instance);
            auto os = open_out(sol_dir / (task.instance.name + ".sol"));
            write_solution(os, plan, evaluate(plan, task.distances));
        }
    }
}

// ---------------------------------------------------------------------------
// CSV artifacts
// ---------------------------------------------------------------------------

void write_results_csv(std::ostream& os, const std::vector<RunRecord>& records) {
    os << kResultsHeader << '\n';
    for (const auto& r : records)
        os << r.testcase << ',' << r.algo << ',' << r.run << ',' << r.seed << ',' << r.instance << ',' << r.best_cost
           << ',' << r.evals << ',' << r.wall_ms << '\n';
}

std::vector<RunRecord> read_results_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || split_csv(line) != split_csv(kResultsHeader))
        throw HarnessError("results file: unexpected header");
    std::vector<RunRecord> rows;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto f = split_csv(line);
        if (f.size() != 8) throw HarnessError("results file: expected 8 columns in '" + line + "'");
        rows.push_back({f[0], f[1], static_cast<int>(to_i64(f[2], "run")), static_cast<std::uint64_t>(to_i64(f[3], "seed")),
                        f[4], to_i64(f[5], "best_cost"), to_i64(f[6], "evals"), to_i64(f[7], "wall_ms")});
    }
    return rows;
}

void write_ledger_csv(std::ostream& os, int run, const TransferLedger& ledger) {
    os << kLedgerHeader << '\n';
    for (int t = 0; t < ledger.k(); ++t)
        for (int s = 0; s < ledger.k(); ++s)
            os << run << ',' << t << ',' << s << ',' << ledger.crossover_events[t][s] << ",crossover\n";
    for (int t = 0; t < ledger.k(); ++t) os << run << ',' << t << ',' << t << ',' << ledger.mutation_improvements[t] << ",mutation\n";
}

TransferLedger read_ledger_csv(std::istream& is, int k, int* run) {
    std::string line;
    if (!std::getline(is, line) || split_csv(line) != split_csv(kLedgerHeader))
        throw HarnessError("ledger file: unexpected header");
    TransferLedger ledger(k);
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto f = split_csv(line);
        if (f.size() != 5) throw HarnessError("ledger file: expected 5 columns in '" + line + "'");
        const auto t = to_i64(f[1], "target_task");
        const auto s = to_i64(f[2], "source_task");
        if (t < 0 || t >= k || s < 0 || s >= k) throw HarnessError("ledger file: task index out of range in '" + line + "'");
        const auto count = to_i64(f[3], "count");
        if (run) *run = static_cast<int>(to_i64(f[0], "run"));
        if (f[4] == "crossover") ledger.crossover_events[t][s] = count;
        else if (f[4] == "mutation") ledger.mutation_improvements[t] = count;
        else throw HarnessError("ledger file: unknown kind '" + f[4] + "'");
    }
    return ledger;
}

void write_solution(std::ostream& os, const RoutePlan& plan, std::int64_t cost) {
    for (std::size_t r = 0; r < plan.routes.size(); ++r) {
        os << "Route #" << r + 1 << ':';
        for (int c : plan.routes[r]) os << ' ' << c;
        os << '\n';
    }
    os << "Cost " << cost << '\n';
}

RoutePlan read_solution(std::istream& is, const CvrpInstance& instance) {
    RoutePlan plan;
    std::string line;
    while (std::getline(is, line)) {
        if (line.rfind("Route", 0) != 0) continue;
        const auto colon = line.find(':');
        if (colon == std::string::npos) throw HarnessError("solution file: malformed route line '" + line + "'");
        std::istringstream ss(line.substr(colon + 1));
        std::vector<int> route;
        std::int64_t load = 0;
        for (int c; ss >> c;) {
            if (c < 1 || c > instance.n_clients)
                throw HarnessError("solution file: client " + std::to_string(c) + " out of range for " + instance.name);
            route.push_back(c);
            load += instance.demands[c];
        }
        if (!route.empty()) {
            plan.routes.push_back(std::move(route));
            plan.loads.push_back(load);
        }
    }
    return plan;
}

void write_matrix_csv(std::ostream& os, const LabeledMatrix& m, int precision) {
    os << "task";
    for (const auto& l : m.labels) os << ',' << l;
    os << '\n' << std::fixed << std::setprecision(precision);
    for (std::size_t i = 0; i < m.labels.size(); ++i) {
        os << m.labels[i];
        for (double v : m.values[i]) os << ',' << v;
        os << '\n';
    }
    os << std::defaultfloat;
}

LabeledMatrix read_matrix_csv(std::istream& is) {
    LabeledMatrix m;
    std::string line;
    if (!std::getline(is, line)) throw HarnessError("matrix file is empty");
    auto header = split_csv(line);
    if (header.size() < 2) throw HarnessError("matrix file: header has no columns");
    m.labels.assign(header.begin() + 1, header.end());
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto f = split_csv(line);
        if (f.size() != m.labels.size() + 1)
            throw HarnessError("matrix is not square: row '" + f[0] + "' has " + std::to_string(f.size() - 1) +
                               " values, expected " + std::to_string(m.labels.size()));
        if (m.values.size() >= m.labels.size()) throw HarnessError("matrix is not square: too many rows");
        if (f[0] != m.labels[m.values.size()])
            throw HarnessError("matrix row label '" + f[0] + "' does not match the column labels");
        std::vector<double> row;
        for (std::size_t j = 1; j < f.size(); ++j) row.push_back(f[j].empty() ? 0.0 : to_double(f[j], "matrix"));
        m.values.push_back(std::move(row));
    }
    if (m.values.size() != m.labels.size())
        throw HarnessError("matrix is not square: " + std::to_string(m.values.size()) + " rows for " +
                           std::to_string(m.labels.size()) + " columns");
    return m;
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

Report build_report(const std::vector<RunRecord>& records, const std::map<std::string, double>* optima) {
    if (records.empty()) throw HarnessError("no result rows");
    Report rep;
    rep.testcase = records.front().testcase;

    std::map<std::string, std::map<std::string, std::vector<std::pair<int, double>>>> costs;  // algo -> instance -> (run, cost)
    for (const auto& r : records) {
        if (r.testcase != rep.testcase) throw HarnessError("results mix test cases " + rep.testcase + " and " + r.testcase);
        if (std::find(rep.instances.begin(), rep.instances.end(), r.instance) == rep.instances.end())
            rep.instances.push_back(r.instance);
        costs[r.algo][r.instance].push_back({r.run, static_cast<double>(r.best_cost)});
    }
    for (const char* a : {"mfcga", "mfea"})
        if (costs.count(a)) rep.algorithms.push_back(a);
    for (const auto& [a, _] : costs)
        if (a != "mfcga" && a != "mfea") throw HarnessError("unknown algorithm '" + a + "' in results");

    auto sample = [&](const std::string& algo, const std::string& inst) {
        auto runs = costs[algo][inst];
        std::sort(runs.begin(), runs.end());
        std::vector<double> v;
        for (const auto& [_, c] : runs) v.push_back(c);
        return v;
    };

    for (const auto& algo : rep.algorithms)
        for (const auto& inst : rep.instances) {
            const auto v = sample(algo, inst);
            if (v.empty()) throw HarnessError(algo + " has no runs for " + inst);
            InstanceSummary s{inst, algo, summarize(v), std::nullopt, std::nullopt};
            if (optima) {
                if (auto it = optima->find(inst); it != optima->end()) {
                    s.optimum = it->second;
                    s.deviation_pct = 100.0 * (s.stats.mean - it->second) / it->second;
                }
            }
            rep.summaries.push_back(s);
        }

    if (rep.algorithms.size() == 2) {
        for (const auto& inst : rep.instances) {
            const auto a = sample("mfcga", inst);
            const auto b = sample("mfea", inst);
            if (a.size() != b.size())
                throw HarnessError("run counts differ for " + inst + ": mfcga " + std::to_string(a.size()) + ", mfea " +
                                   std::to_string(b.size()));
            const auto sa = summarize(a);
            const auto sb = summarize(b);
            InstanceComparison c{inst, compare_means(sa.mean, sb.mean), {}};
            if (a.size() >= 3) c.verdict = wilcoxon_rank_sum(a, b);
            rep.comparisons.push_back(c);
        }
    }
    return rep;
}

namespace {

const char* sign_mark(Sign s) {
    switch (s) {
        case Sign::better: return "+";
        case Sign::similar: return "=";
        case Sign::worse: return "-";
    }
    return "?";
}

std::string better_name(Better b) {
    switch (b) {
        case Better::first: return "mfcga";
        case Better::second: return "mfea";
        case Better::neither: return "none";
    }
    return "none";
}

}  // namespace

void write_report(const Report& report, const fs::path& dir) {
    fs::create_directories(dir);
    {
        auto os = open_out(dir / "summary.csv");
        os << "testcase,algo,instance,mean,best,std,optimum,deviation_pct\n" << std::fixed << std::setprecision(2);
        for (const auto& s : report.summaries) {
            os << report.testcase << ',' << s.algo << ',' << s.instance << ',' << s.stats.mean << ',' << s.stats.best << ','
               << s.stats.stddev << ',';
            if (s.optimum) os << *s.optimum;
            os << ',';
            if (s.deviation_pct) os << *s.deviation_pct;
            os << '\n';
        }
    }
    if (report.comparisons.empty()) return;
    {
        auto os = open_out(dir / "signs.csv");
        os << "testcase,instance,sign\n";
        for (const auto& c : report.comparisons) os << report.testcase << ',' << c.instance << ',' << to_string(c.sign) << '\n';
    }
    {
        auto os = open_out(dir / "wilcoxon.csv");
        os << "testcase,instance,rank_sum,p_value,significant,better,method\n";
        for (const auto& c : report.comparisons)
            os << report.testcase << ',' << c.instance << ',' << std::fixed << std::setprecision(1) << c.verdict.statistic
               << ',' << std::setprecision(6) << c.verdict.p_value << ',' << (c.verdict.significant ? 1 : 0) << ','
               << better_name(c.verdict.direction) << ',' << (c.verdict.exact ? "exact" : "normal") << '\n';
    }
}

void print_report(const Report& report, std::ostream& os) {
    os << "Test case " << report.testcase << "\n\n";
    os << std::left << std::setw(11) << "instance" << std::setw(7) << "algo" << std::right << std::setw(10) << "mean"
       << std::setw(8) << "best" << std::setw(8) << "std" << std::setw(8) << "opt" << std::setw(8) << "dev%" << '\n';
    os << std::fixed;
    for (const auto& s : report.summaries) {
        os << std::left << std::setw(11) << s.instance << std::setw(7) << s.algo << std::right << std::setprecision(1)
           << std::setw(10) << s.stats.mean << std::setprecision(0) << std::setw(8) << s.stats.best << std::setprecision(2)
           << std::setw(8) << s.stats.stddev;
        if (s.optimum) os << std::setprecision(0) << std::setw(8) << *s.optimum;
        else os << std::setw(8) << "-";
        if (s.deviation_pct) os << std::setprecision(1) << std::setw(8) << *s.deviation_pct;
        else os << std::setw(8) << "-";
        os << '\n';
    }
    if (!report.comparisons.empty()) {
        os << "\nMFCGA vs MFEA (+ better, = similar, - worse; * significant at 0.05)\n";
        for (const auto& c : report.comparisons)
            os << std::left << std::setw(11) << c.instance << std::right << ' ' << sign_mark(c.sign)
               << (c.verdict.significant && c.verdict.direction == Better::first ? " *" : "  ") << "  p=" << std::setprecision(4)
               << c.verdict.p_value << '\n';
    }
    os << std::defaultfloat;
}

std::vector<TransferLedger> load_ledgers(const fs::path& dir, int k) {
    std::vector<std::pair<int, TransferLedger>> found;
    if (!fs::exists(dir)) return {};
    for (const auto& entry : fs::directory_iterator(dir)) {
        const auto name = entry.path().filename().string();
        if (name.rfind("ledger_run", 0) != 0 || entry.path().extension() != ".csv") continue;
        auto is = open_in(entry.path());
        int run = 0;
        auto ledger = read_ledger_csv(is, k, &run);
        found.emplace_back(run, std::move(ledger));
    }
    std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<TransferLedger> out;
    for (auto& [_, l] : found) out.push_back(std::move(l));
    return out;
}

LabeledMatrix transfer_matrix(const TransferSummary& summary, const std::vector<std::string>& names) {
    if (static_cast<int>(names.size()) != summary.k()) throw HarnessError("transfer matrix: name count differs from K");
    return {names, summary.crossover_mean};
}

LabeledMatrix client_overlap_table(const std::vector<CvrpInstance>& instances) {
    LabeledMatrix m;
    for (const auto& i : instances) m.labels.push_back(i.name);
    for (const auto& row : instances) {
        std::vector<double> values;
        for (const auto& col : instances) values.push_back(client_overlap(row, col));
        m.values.push_back(std::move(values));
    }
    return m;
}

LabeledMatrix solution_overlap_table(const std::vector<CvrpInstance>& instances, const std::vector<RoutePlan>& plans) {
    if (instances.size() != plans.size()) throw HarnessError("one solution per instance is required");
    LabeledMatrix m;
    for (const auto& i : instances) m.labels.push_back(i.name);
    for (std::size_t r = 0; r < instances.size(); ++r) {
        std::vector<double> values;
        for (std::size_t c = 0; c < instances.size(); ++c)
            values.push_back(solution_overlap(plans[r], instances[r], plans[c], instances[c]));
        m.values.push_back(std::move(values));
    }
    return m;
}

}  // namespace mtvrp

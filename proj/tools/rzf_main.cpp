// rzf - randomized zero forcing toolkit: singleton EPT ranking, seeded
// simulation, and self-verification, over edge lists, input-output matrices,
// and generated families.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rzf/estimate.hpp"
#include "rzf/exact.hpp"
#include "rzf/families.hpp"
#include "rzf/io.hpp"
#include "rzf/process.hpp"
#include "rzf/verify.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitInfinite = 4;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InfiniteRefusal : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GraphSource {
    std::string edges_path;
    std::string matrix_path;
    std::string family_spec;
    std::string config_path;

    rzf::WeightedDigraph load() const {
        int given = !edges_path.empty() + !matrix_path.empty() + !family_spec.empty() +
                    !config_path.empty();
        if (given != 1)
            throw UsageError("give exactly one of --edges, --matrix, --family, --config");
        if (!edges_path.empty()) return rzf::ingest_edge_csv(edges_path);
        if (!matrix_path.empty()) return rzf::ingest_io_matrix(matrix_path);
        std::string text = family_spec;
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw rzf::DataError("cannot open file: " + config_path);
            std::ostringstream buf;
            buf << in.rdbuf();
            text = buf.str();
        }
        try {
            return rzf::generate(rzf::parse_family_kv(text)).graph;
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }
};

int dp_limit_from_env(int fallback) {
    const char* env = std::getenv("RZF_DP_LIMIT");
    if (!env) return fallback;
    try {
        return std::stoi(env);
    } catch (const std::exception&) {
        throw UsageError("RZF_DP_LIMIT is not a number");
    }
}

void emit(const std::string& content, const std::string& out_path) {
    if (out_path.empty())
        std::cout << content;
    else
        rzf::write_file(out_path, content);
}

std::string render_table(const rzf::RankReport& report) {
    std::ostringstream out;
    out << "rank  ept           inverse_ept  label\n";
    for (const rzf::RankRow& row : report.rows) {
        char ept[32];
        if (row.ept.is_finite())
            std::snprintf(ept, sizeof ept, "%-12.6f", row.ept.value);
        else
            std::snprintf(ept, sizeof ept, "%-12s", "inf");
        char inv[32];
        std::snprintf(inv, sizeof inv, "%-11.6f", row.inverse_ept);
        out << row.rank << (row.rank < 10 ? "     " : "    ") << ept << "  " << inv << "  "
            << row.label << "\n";
    }
    out << "(" << report.method << ", seed " << report.seed;
    if (report.method == "monte_carlo") out << ", " << report.runs << " runs/vertex";
    out << ")\n";
    return out.str();
}

int run_rank(const GraphSource& source, const std::string& method_name, std::uint64_t runs,
             std::uint64_t seed, int limit, const std::string& format,
             const std::string& out_path) {
    const rzf::WeightedDigraph g = source.load();
    rzf::RankMethod method = rzf::RankMethod::automatic;
    if (method_name == "exact") method = rzf::RankMethod::exact;
    else if (method_name == "mc") method = rzf::RankMethod::monte_carlo;
    else if (method_name != "auto") throw UsageError("unknown --method (auto|exact|mc)");
    if (runs < 2) throw UsageError("--runs must be at least 2");
    rzf::RankReport report;
    try {
        report = rzf::rank_vertices(g, method, runs, seed, limit);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    if (format == "json") emit(rzf::report_to_json(report), out_path);
    else if (format == "csv") emit(rzf::report_to_csv(report), out_path);
    else if (format == "table") emit(render_table(report), out_path);
    else throw UsageError("unknown --format (json|csv|table)");
    return 0;
}

int run_simulate(const GraphSource& source, const std::vector<std::string>& start_labels,
                 std::uint64_t runs, std::uint64_t seed, bool allow_infinite,
                 std::uint64_t cap, const std::string& emit_mode, const std::string& format,
                 const std::string& out_path) {
    const rzf::WeightedDigraph g = source.load();
    if (start_labels.empty()) throw UsageError("--start requires at least one vertex");
    rzf::BlueSet start(g.order());
    for (const std::string& name : start_labels) start.set(rzf::resolve_vertex(g, name));
    const bool finite = rzf::is_finite_ept(g, start);
    if (!finite && !allow_infinite)
        throw InfiniteRefusal(
            "expected propagation time is infinite from this start set (some vertex is "
            "unreachable along positive-weight edges); pass --allow-infinite with --cap to "
            "simulate anyway");
    if (runs < 1) throw UsageError("--runs must be at least 1");

    std::vector<rzf::Trajectory> trajectories;
    trajectories.reserve(runs);
    for (std::uint64_t r = 0; r < runs; ++r) {
        const std::uint64_t sub = rzf::derive_stream(seed, r);
        if (finite) {
            trajectories.push_back(rzf::run_to_absorption(g, start, sub, cap));
        } else {
            // unreachable vertices: run the capped dynamics on the reachable part
            rzf::Trajectory traj;
            traj.seed = sub;
            traj.absorbed = false;
            traj.rounds = cap;
            rzf::SplitMix64 rng(rzf::mix64(sub));
            rzf::BlueSet blue = start;
            traj.states.emplace_back(0, blue);
            const rzf::BlueSet closure = rzf::reachable_set(g, start);
            std::uint64_t round = 0;
            while (round < cap && !(blue == closure)) {
                rzf::RoundJump jump = rzf::stagnation_jump(g, blue, rng);
                if (cap - round < jump.skipped) break;
                round += jump.skipped;
                blue = jump.next;
                traj.states.emplace_back(round, blue);
            }
            trajectories.push_back(std::move(traj));
        }
    }

    nlohmann::json j;
    j["seed"] = seed;
    j["runs"] = runs;
    j["start"] = start_labels;
    std::string csv;
    if (emit_mode == "summary") {
        double mean = 0.0, m2 = 0.0;
        std::uint64_t absorbed = 0;
        for (std::size_t i = 0; i < trajectories.size(); ++i) {
            const double x = static_cast<double>(trajectories[i].rounds);
            const double delta = x - mean;
            mean += delta / static_cast<double>(i + 1);
            m2 += delta * (x - mean);
            absorbed += trajectories[i].absorbed ? 1 : 0;
        }
        const double sd = trajectories.size() > 1
                              ? std::sqrt(m2 / static_cast<double>(trajectories.size() - 1))
                              : 0.0;
        const double se = sd / std::sqrt(static_cast<double>(trajectories.size()));
        j["mean_rounds"] = mean;
        j["stderr"] = se;
        j["ci95"] = {mean - 1.96 * se, mean + 1.96 * se};
        j["absorbed_runs"] = absorbed;
        csv = "mean_rounds,stderr,absorbed_runs,runs\n" + std::to_string(mean) + "," +
              std::to_string(se) + "," + std::to_string(absorbed) + "," + std::to_string(runs) +
              "\n";
    } else if (emit_mode == "trajectory") {
        // per-round blue-count series, one row per recorded round
        j["trajectories"] = nlohmann::json::array();
        csv = "run,round,blue_count\n";
        for (std::size_t i = 0; i < trajectories.size(); ++i) {
            nlohmann::json t;
            t["run"] = i;
            t["rounds"] = trajectories[i].rounds;
            t["absorbed"] = trajectories[i].absorbed;
            nlohmann::json series = nlohmann::json::array();
            for (const auto& [round, state] : trajectories[i].states) {
                series.push_back({{"round", round}, {"blue", state.count()}});
                csv += std::to_string(i) + "," + std::to_string(round) + "," +
                       std::to_string(state.count()) + "\n";
            }
            t["series"] = series;
            j["trajectories"].push_back(t);
        }
    } else {
        throw UsageError("unknown --emit (summary|trajectory)");
    }
    if (format == "json") emit(j.dump(2) + "\n", out_path);
    else if (format == "csv") emit(csv, out_path);
    else throw UsageError("unknown --format for simulate (json|csv)");
    return 0;
}

int run_verify(const std::string& scope, std::uint64_t seed, const std::string& out_path) {
    std::vector<rzf::CheckResult> results;
    if (scope == "families") results = rzf::verify_families(seed);
    else if (scope == "bounds") results = rzf::verify_bounds(seed);
    else if (scope == "couplings") results = rzf::verify_couplings(seed);
    else if (scope == "all") results = rzf::verify_all(seed);
    else throw UsageError("unknown --scope (families|bounds|couplings|all)");

    bool all_passed = true;
    nlohmann::json j;
    j["scope"] = scope;
    j["seed"] = seed;
    j["checks"] = nlohmann::json::array();
    for (const rzf::CheckResult& r : results) {
        all_passed = all_passed && r.passed;
        j["checks"].push_back({{"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
        std::cerr << (r.passed ? "[pass] " : "[FAIL] ") << r.name << "  (" << r.detail << ")\n";
    }
    j["passed"] = all_passed;
    emit(j.dump(2) + "\n", out_path);
    return all_passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"randomized zero forcing toolkit"};
    app.require_subcommand(1);

    GraphSource source;
    std::string method = "auto";
    std::uint64_t runs = 100000;
    std::uint64_t seed = 1;
    int limit = rzf::kDefaultDpLimit;
    std::string format;
    std::string out_path;
    std::vector<std::string> start_labels;
    bool allow_infinite = false;
    std::uint64_t cap = rzf::kDefaultRoundCap;
    std::string emit_mode = "summary";
    std::string scope = "all";

    auto add_source = [&](CLI::App* cmd) {
        cmd->add_option("--edges", source.edges_path, "edge-list CSV (source,target,weight)");
        cmd->add_option("--matrix", source.matrix_path, "square labeled input-output matrix CSV");
        cmd->add_option("--family", source.family_spec, "inline family spec, e.g. 'kind=bicycle n=7'");
        cmd->add_option("--config", source.config_path, "file with key=value family spec lines");
    };

    CLI::App* rank = app.add_subcommand("rank", "singleton EPT ranking with inverse-EPT centrality");
    add_source(rank);
    rank->add_option("--method", method, "auto|exact|mc (auto picks exact when it fits)");
    rank->add_option("--runs", runs, "Monte Carlo runs per vertex");
    rank->add_option("--seed", seed, "random seed");
    rank->add_option("--limit", limit, "exact state-space vertex limit");
    rank->add_option("--format", format, "json|csv|table")->default_val("table");
    rank->add_option("--out", out_path, "write output to this file instead of stdout");

    CLI::App* simulate = app.add_subcommand("simulate", "seeded absorption runs");
    add_source(simulate);
    simulate->add_option("--start", start_labels, "initially blue vertices (labels or ids)")
        ->delimiter(',');
    simulate->add_option("--runs", runs, "number of independent runs")->default_val(1000);
    simulate->add_option("--seed", seed, "random seed");
    simulate->add_option("--cap", cap, "round cap per run");
    simulate->add_flag("--allow-infinite", allow_infinite,
                       "simulate capped runs even when absorption is impossible");
    simulate->add_option("--emit", emit_mode, "summary|trajectory");
    simulate->add_option("--format", format, "json|csv")->default_val("json");
    simulate->add_option("--out", out_path, "write output to this file instead of stdout");

    CLI::App* verify = app.add_subcommand("verify", "run the registered invariant suites");
    verify->add_option("--scope", scope, "families|bounds|couplings|all");
    verify->add_option("--seed", seed, "random seed");
    verify->add_option("--out", out_path, "write the JSON summary to this file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        limit = dp_limit_from_env(limit);
        if (rank->parsed()) return run_rank(source, method, runs, seed, limit, format, out_path);
        if (simulate->parsed())
            return run_simulate(source, start_labels, runs, seed, allow_infinite, cap, emit_mode,
                                format, out_path);
        return run_verify(scope, seed, out_path);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const InfiniteRefusal& e) {
        std::cerr << "refusing: " << e.what() << "\n";
        return kExitInfinite;
    } catch (const rzf::DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    return 0;
}

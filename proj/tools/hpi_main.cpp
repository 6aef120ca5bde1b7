#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "cped/bench.hpp"
#include "cped/hpi.hpp"
#include "cped/report.hpp"
#include "cped/space.hpp"

namespace {

using namespace cped;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitNumeric = 3;

unsigned default_jobs() {
    if (const char* env = std::getenv("HPI_JOBS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    return 1;
}

std::optional<Extension> parse_extension_flag(const std::string& extension) {
    if (extension.empty()) return std::nullopt;
    return parse_extension(extension);
}

nlohmann::json report_to_json(const HpiReport& rep) {
    nlohmann::json j;
    j["method"] = rep.method;
    j["quantiles"] = {{"gamma", rep.quantiles.gamma}, {"gamma_prime", rep.quantiles.gamma_prime}};
    j["raw"] = rep.raw;
    j["normalized"] = rep.normalized;
    j["degenerate_flag"] = rep.degenerate_flag;
    return j;
}

struct CommonAnalyzeArgs {
    std::string space_path;
    std::string trials_path;
    double gamma = 1.0;
    std::string method = "cped";
    std::string extension;
    int grid_size = 128;
};

void add_common(CLI::App* cmd, CommonAnalyzeArgs& args) {
    cmd->add_option("--space", args.space_path, "Search-space JSON file")->required();
    cmd->add_option("--trials", args.trials_path, "Trials JSON Lines file")->required();
    cmd->add_option("--gamma", args.gamma, "Outer quantile level (0, 1]");
    cmd->add_option("--method", args.method, "cped | ped | standard | naive-within");
    cmd->add_option("--extension", args.extension,
                    "filtering | imputation | expansion (method ped only)");
    cmd->add_option("--grid-size", args.grid_size, "KDE grid size (default 128)");
}

int run(int argc, char** argv) {
    CLI::App app{"Hyperparameter importance for conditional search spaces"};
    app.require_subcommand(1);

    // analyze
    CommonAnalyzeArgs analyze_args;
    double gamma_prime = 0.1;
    std::string analyze_output;
    CLI::App* analyze_cmd =
        app.add_subcommand("analyze", "Per-parameter HPI at one quantile pair (JSON to stdout)");
    add_common(analyze_cmd, analyze_args);
    analyze_cmd->add_option("--gamma-prime", gamma_prime, "Inner quantile level (0, gamma)")
        ->required();
    analyze_cmd->add_option("--output", analyze_output, "Write the JSON report here instead");

    // sweep
    CommonAnalyzeArgs sweep_args;
    double sweep_step = 0.01;
    std::string sweep_output;
    unsigned sweep_jobs = default_jobs();
    CLI::App* sweep_cmd =
        app.add_subcommand("sweep", "HPI-vs-gamma' curves over a fixed trials file (CSV)");
    add_common(sweep_cmd, sweep_args);
    sweep_cmd->add_option("--step", sweep_step, "gamma' grid step (default 0.01)");
    sweep_cmd->add_option("--output", sweep_output, "Output CSV path")->required();
    sweep_cmd->add_option("--jobs", sweep_jobs, "Worker thread cap (default $HPI_JOBS or 1)");

    // bench
    std::string bench_objective = "activation-disjoint";
    std::size_t bench_n = 1000;
    double bench_gamma = 1.0;
    double bench_step = 0.01;
    std::size_t bench_seeds = 10;
    std::uint64_t bench_seed_base = 42;
    std::string bench_method = "cped";
    std::string bench_extension;
    int bench_grid = 128;
    std::string bench_csv;
    std::string bench_svg;
    unsigned bench_jobs = default_jobs();
    CLI::App* bench_cmd =
        app.add_subcommand("bench", "Synthetic benchmark sweep aggregated over seeds");
    bench_cmd
        ->add_option("--objective", bench_objective,
                     "activation-disjoint | activation-overlap | regime-domains")
        ->required();
    bench_cmd->add_option("--n", bench_n, "Trials per seed (default 1000)");
    bench_cmd->add_option("--gamma", bench_gamma, "Outer quantile level (default 1.0)");
    bench_cmd->add_option("--step", bench_step, "gamma' grid step (default 0.01)");
    bench_cmd->add_option("--seeds", bench_seeds, "Number of seeds (default 10)");
    bench_cmd->add_option("--seed-base", bench_seed_base,
                          "Base seed; run k uses base XOR k (default 42)");
    bench_cmd->add_option("--method", bench_method, "cped | ped | standard | naive-within");
    bench_cmd->add_option("--extension", bench_extension,
                          "filtering | imputation | expansion (method ped only)");
    bench_cmd->add_option("--grid-size", bench_grid, "KDE grid size (default 128)");
    bench_cmd->add_option("--output-csv", bench_csv, "Output CSV path")->required();
    bench_cmd->add_option("--output-svg", bench_svg, "Also render an SVG chart");
    bench_cmd->add_option("--jobs", bench_jobs, "Worker thread cap (default $HPI_JOBS or 1)");

    // plot
    std::string plot_input;
    std::string plot_output;
    std::string plot_title;
    bool plot_raw = false;
    CLI::App* plot_cmd = app.add_subcommand("plot", "Render a sweep CSV as an SVG line chart");
    plot_cmd->add_option("--input", plot_input, "Input CSV (write_csv schema)")->required();
    plot_cmd->add_option("--output", plot_output, "Output SVG path")->required();
    plot_cmd->add_option("--title", plot_title, "Chart title");
    plot_cmd->add_flag("--raw", plot_raw, "Auto y-range for unnormalized values");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: usage: " << e.what() << "\n";
        return kExitUsage;
    }

    if (analyze_cmd->parsed()) {
        const QuantilePair q = QuantilePair::create(gamma_prime, analyze_args.gamma);
        SearchSpace space = parse_space_file(analyze_args.space_path);
        EvaluationSet evalset = load_trials(analyze_args.trials_path, std::move(space));
        AnalyzeOptions opts;
        opts.grid_size = analyze_args.grid_size;
        HpiReport rep = analyze(evalset, q, parse_method(analyze_args.method), opts,
                                parse_extension_flag(analyze_args.extension));
        const std::string text = report_to_json(rep).dump(2) + "\n";
        if (analyze_output.empty()) {
            std::cout << text;
        } else {
            std::ofstream out(analyze_output, std::ios::binary);
            if (!out) throw DataError("io", "cannot open '" + analyze_output + "' for writing");
            out << text;
        }
        return kExitOk;
    }

    if (sweep_cmd->parsed()) {
        SearchSpace space = parse_space_file(sweep_args.space_path);
        EvaluationSet evalset = load_trials(sweep_args.trials_path, std::move(space));
        SweepResult result = sweep_evalset(evalset, sweep_args.gamma, sweep_step,
                                           parse_method(sweep_args.method),
                                           parse_extension_flag(sweep_args.extension),
                                           sweep_args.grid_size, sweep_jobs);
        write_csv(result, sweep_output);
        return kExitOk;
    }

    if (bench_cmd->parsed()) {
        SweepConfig config;
        config.objective = parse_objective(bench_objective);
        config.n = bench_n;
        config.gamma = bench_gamma;
        config.gamma_prime_step = bench_step;
        config.seeds = derive_seeds(bench_seed_base, bench_seeds);
        config.grid_size = bench_grid;
        SweepResult result = run_sweep(config, parse_method(bench_method),
                                       parse_extension_flag(bench_extension), bench_jobs);
        write_csv(result, bench_csv);
        if (!bench_svg.empty()) {
            // Render from CSV-precision values and with plot's default spec,
            // so `bench --output-svg` and `bench; plot` produce identical
            // bytes.
            render_line_chart(round_to_emitted_precision(result), ChartSpec{}, bench_svg);
        }
        return kExitOk;
    }

    // plot
    SweepResult result = read_csv(plot_input);
    ChartSpec spec;
    spec.title = plot_title;
    spec.normalized = !plot_raw;
    render_line_chart(result, spec, plot_output);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.code() << ": " << e.what() << "\n";
        return kExitUsage;
    } catch (const DataError& e) {
        std::cerr << "error: " << e.code() << ": " << e.what() << "\n";
        return kExitData;
    } catch (const NumericError& e) {
        std::cerr << "error: " << e.code() << ": " << e.what() << "\n";
        return kExitNumeric;
    } catch (const std::exception& e) {
        std::cerr << "error: internal: " << e.what() << "\n";
        return kExitData;
    }
}

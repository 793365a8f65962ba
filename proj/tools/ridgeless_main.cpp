// Command-line front end: single-cell simulation, grid sweeps with
// CSV/JSON output, the numerical verification suites, and SVG plots.

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ridgeless/checks.hpp"
#include "ridgeless/config.hpp"
#include "ridgeless/io.hpp"
#include "ridgeless/summary.hpp"
#include "ridgeless/svg.hpp"
#include "ridgeless/sweep.hpp"
#include "ridgeless/version.hpp"

namespace {

void print_record(const ridgeless::SweepRecord& rec) {
    const auto& cols = ridgeless::record_columns();
    const auto fields = ridgeless::record_fields(rec);
    for (std::size_t i = 0; i < cols.size(); ++i)
        std::printf("%-20s = %s\n", cols[i].c_str(), fields[i].c_str());
}

void require_writable(const std::string& path) {
    std::ofstream probe(path, std::ios::binary | std::ios::app);
    if (!probe) throw std::runtime_error("output path not writable: " + path);
}

int cmd_simulate(int d, long long n, double c, std::uint64_t seed, const std::string& f0,
                 std::size_t m_test, double alpha) {
    ridgeless::SweepRecord rec = ridgeless::run_cell(
        d, static_cast<Eigen::Index>(n), c, c, seed, ridgeless::target_function_from_string(f0),
        m_test, alpha, 0);
    print_record(rec);
    return rec.status == "ok" ? 0 : 1;
}

int cmd_sweep(const std::string& grid_path, const std::string& csv_path,
              const std::string& json_path, int jobs) {
    const ridgeless::SweepGrid grid = ridgeless::load_grid_config(grid_path);
    if (csv_path.empty() && json_path.empty())
        throw ridgeless::usage_error("sweep: provide --csv and/or --json output paths");
    if (!csv_path.empty()) require_writable(csv_path);
    if (!json_path.empty()) require_writable(json_path);

    const std::vector<ridgeless::SweepRecord> records = ridgeless::run_sweep(grid, jobs);
    if (!csv_path.empty()) ridgeless::emit_csv(records, csv_path);
    if (!json_path.empty()) ridgeless::emit_json(records, json_path);

    std::size_t failures = 0;
    for (const auto& r : records)
        if (r.status != "ok") ++failures;
    std::printf("wrote %zu records (%zu failed cells)\n", records.size(), failures);
    if (failures > 0) {
        for (const auto& r : records)
            if (r.status != "ok")
                std::fprintf(stderr, "cell d=%d n=%lld c=%.6g seed=%llu: %s\n", r.d,
                             static_cast<long long>(r.n), r.c,
                             static_cast<unsigned long long>(r.seed), r.status.c_str());
        return 1;
    }
    return 0;
}

int cmd_verify() {
    const std::vector<ridgeless::CheckResult> results = ridgeless::checks::run_all();
    bool all_pass = true;
    std::printf("%-48s %-6s detail\n", "check", "result");
    for (const auto& r : results) {
        std::printf("%-48s %-6s %s\n", r.name.c_str(), r.pass ? "PASS" : "FAIL", r.detail.c_str());
        all_pass = all_pass && r.pass;
    }
    return all_pass ? 0 : 1;
}

int cmd_plot(const std::string& in_path, const std::string& out_path) {
    const auto records = ridgeless::read_csv(in_path);
    ridgeless::plot_risk_curves(records, out_path);
    std::printf("wrote %s\n", out_path.c_str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Laplace-kernel ridgeless regression laboratory"};
    app.set_version_flag("--version", ridgeless::version_string);
    app.require_subcommand(1);

    int d = 1;
    long long n = 100;
    double c = 1.0;
    std::uint64_t seed = 1;
    std::string f0 = "const_one";
    std::size_t m_test = 20000;
    double alpha = 0.4;
    auto* simulate = app.add_subcommand("simulate", "run one (d, n, c, seed) cell and print it");
    simulate->add_option("-d,--dim", d, "odd dimension");
    simulate->add_option("-n,--points", n, "sample size");
    simulate->add_option("-c,--bandwidth", c, "absolute kernel bandwidth");
    simulate->add_option("--seed", seed, "cell seed");
    simulate->add_option("--f0", f0, "target function id");
    simulate->add_option("--m-test", m_test, "Monte Carlo test points");
    simulate->add_option("--alpha", alpha, "witness bump scale in (0, 1/2)");

    std::string grid_path, csv_path, json_path;
    int jobs = 0;
    auto* sweep = app.add_subcommand("sweep", "run a grid of cells from a config file");
    sweep->add_option("--grid", grid_path, "flat key-value grid config")->required();
    sweep->add_option("--csv,--out", csv_path, "CSV output path");
    sweep->add_option("--json", json_path, "JSON output path");
    sweep->add_option("--jobs", jobs, "worker threads (default: hardware)");

    auto* verify = app.add_subcommand("verify", "run the numerical verification suites");
    (void)verify;

    std::string plot_in, plot_out;
    auto* plot = app.add_subcommand("plot", "render risk curves from a records CSV to SVG");
    plot->add_option("--in", plot_in, "records CSV")->required();
    plot->add_option("--out", plot_out, "SVG output path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help / --version
        app.exit(e);
        return 2;
    }

    try {
        if (simulate->parsed()) return cmd_simulate(d, n, c, seed, f0, m_test, alpha);
        if (sweep->parsed()) return cmd_sweep(grid_path, csv_path, json_path, jobs);
        if (verify->parsed()) return cmd_verify();
        if (plot->parsed()) return cmd_plot(plot_in, plot_out);
    } catch (const ridgeless::usage_error& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}

// waitlaw: reproducible experiment driver for waiting-time limit laws.
//
// Each subcommand runs one experiment family and writes manifest.json,
// report.json and any CSV outputs into --out. Identical config + seed gives
// byte-identical outputs, independent of --threads. Exit code 0 iff every
// configured pass band holds.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <string>
#include <vector>

#include "waitlaw/experiments.hpp"

namespace {

waitlaw::experiment_config load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read config file: " + path);
    waitlaw::json j = waitlaw::json::parse(in);
    return j.get<waitlaw::experiment_config>();
}

std::vector<std::pair<double, double>> parse_xy(const std::vector<std::string>& items) {
    std::vector<std::pair<double, double>> out;
    for (const auto& s : items) {
        auto colon = s.find(':');
        if (colon == std::string::npos)
            throw std::invalid_argument("--xy expects x:y pairs, got '" + s + "'");
        out.emplace_back(std::stod(s.substr(0, colon)), std::stod(s.substr(colon + 1)));
    }
    return out;
}

void print_report(const waitlaw::run_report& rep) {
    for (const auto& row : rep.rows) {
        std::string detail;
        if (row.extra.contains("alpha"))
            detail += " alpha=" + waitlaw::format_double(row.extra["alpha"].get<double>());
        if (row.extra.contains("x"))
            detail += " x=" + waitlaw::format_double(row.extra["x"].get<double>());
        if (row.extra.contains("y"))
            detail += " y=" + waitlaw::format_double(row.extra["y"].get<double>());
        std::printf("%s  n=%lld N=%lld%s  %s = %.6g", row.pass ? "pass" : "FAIL",
                    static_cast<long long>(row.n), static_cast<long long>(row.samples),
                    detail.c_str(), row.statistic.c_str(), row.value);
        if (!std::isnan(row.band)) std::printf("  (band %.4g)", row.band);
        std::printf("\n");
    }
}

void apply_defaults(waitlaw::experiment_config& cfg) {
    if (cfg.horizons.empty()) {
        if (cfg.experiment == "dynkin-lamperti") cfg.horizons = {100000};
        else if (cfg.experiment == "critical-thaler") cfg.horizons = {1000};
        else cfg.horizons = {1000, 31623, 1000000};
    }
    if (cfg.samples == 0) {
        if (cfg.experiment == "dynkin-lamperti") cfg.samples = 50000;
        else if (cfg.experiment == "critical-thaler") cfg.samples = 1000;
        else if (cfg.experiment == "critical-farey") cfg.samples = 10000;
        else if (cfg.experiment == "large-deviation") cfg.samples = 1000000;
        else cfg.samples = 1;
    }
    // every run leaves a manifest behind
    if (cfg.out_dir.empty()) cfg.out_dir = "waitlaw-out/" + cfg.experiment;
}

} // namespace

int main(int argc, char** argv) {
    try {
        waitlaw::experiment_config cfg;

        // --config is honored before flag parsing so that flags override it.
        for (int i = 1; i < argc; ++i) {
            std::string a = argv[i];
            if (a == "--config" && i + 1 < argc) cfg = load_config_file(argv[i + 1]);
            else if (a.rfind("--config=", 0) == 0) cfg = load_config_file(a.substr(9));
        }

        CLI::App app{"waiting-time process experiments for infinite-measure interval maps"};
        app.require_subcommand(0, 1);
        std::string config_path;
        app.add_option("--config", config_path, "JSON config file; flags override its fields");
        app.add_option("--experiment", cfg.experiment,
                       "experiment name (alternative to a subcommand)");

        std::vector<std::string> xy_raw;
        auto add_common = [&](CLI::App* sub) {
            sub->add_option("--map", cfg.map, "farey|lasota-yorke|thaler0|gauss");
            sub->add_option("--digit-source", cfg.digit_source, "chain|dyadic");
            sub->add_option("--alpha,--alphas", cfg.alphas, "tail exponent(s) in (0,1)")
                ->delimiter(',');
            sub->add_option("--horizon,--horizons", cfg.horizons, "process horizons n")
                ->delimiter(',');
            sub->add_option("--samples", cfg.samples, "Monte Carlo sample count");
            sub->add_option("--seed", cfg.seed, "64-bit seed");
            sub->add_option("--x", cfg.x_grid, "x grid for tail events")->delimiter(',');
            sub->add_option("--xy", xy_raw, "joint grid as x:y pairs")->delimiter(',');
            sub->add_option("--thaler-x", cfg.thaler_x, "evaluation points in (0,1]")
                ->delimiter(',');
            sub->add_option("--iter-cap", cfg.iter_cap, "orbit iteration cap");
            sub->add_option("--bit-cap", cfg.bit_cap, "dyadic stream precision cap (bits)");
            sub->add_option("--ks-samples", cfg.ks_samples, "subsample size for sigma KS rows");
            sub->add_option("--laws", cfg.laws, "law names for tables")->delimiter(',');
            sub->add_option("--grid-max", cfg.grid_max,
                            "table grid upper end (0 = per-law default)");
            sub->add_option("--grid-points", cfg.grid_points, "table grid size");
            sub->add_option("--threads", cfg.threads, "parallelism degree (0 = all cores)");
            sub->add_option("--out", cfg.out_dir, "output directory");
            sub->add_flag("--emit-records", cfg.emit_records, "write per-sample CSV records");
        };

        auto* dl = app.add_subcommand("dynkin-lamperti",
                                      "renewal surrogate: Y/n, V/n and the distorted processes "
                                      "against their alpha laws");
        auto* cf = app.add_subcommand("critical-farey",
                                      "farey digit engine: Lambda and Delta against Uniform[0,1]");
        auto* ct = app.add_subcommand("critical-thaler",
                                      "thaler0 orbit engine: censored CDF of log n / log V_n");
        auto* ld = app.add_subcommand("large-deviation",
                                      "farey digit engine: V, joint (Z,Y) and sigma tails");
        auto* tb = app.add_subcommand("tables", "tabulate (x, pdf, cdf) of the analytic laws");
        add_common(&app); // accepted at top level alongside --experiment
        for (auto* sub : {dl, cf, ct, ld, tb}) add_common(sub);

        CLI11_PARSE(app, argc, argv);

        if (!xy_raw.empty()) cfg.xy_grid = parse_xy(xy_raw);
        if (app.get_subcommands().size() == 1)
            cfg.experiment = app.get_subcommands().front()->get_name();
        if (cfg.experiment.empty())
            throw std::invalid_argument("no experiment: pass a subcommand or --config with an "
                                        "\"experiment\" field");
        apply_defaults(cfg);

        waitlaw::run_report rep = waitlaw::run_experiment(cfg);
        print_report(rep);
        if (!cfg.out_dir.empty()) {
            waitlaw::write_report(rep, cfg.out_dir);
            std::printf("wrote %s/report.json (%zu rows)\n", cfg.out_dir.c_str(), rep.rows.size());
        }
        std::printf("%s\n", rep.pass ? "ALL PASS" : "SOME CHECKS FAILED");
        return rep.pass ? 0 : 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}

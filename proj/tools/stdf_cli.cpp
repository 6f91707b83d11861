// stdf: Monte Carlo comparison of stable tail dependence estimators.
//
//   stdf simulate --dgp t4 --reps 200 --out results/
//   stdf plot --in results/t4.csv --out figures/
//   stdf estimate --data obs.csv --k 100 --points 1:1,0.3:0.7 --estimator dot

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "stdf/experiment_config.hpp"
#include "stdf/metrics_io.hpp"
#include "stdf/sample.hpp"
#include "stdf/simulation.hpp"
#include "stdf/svg_plot.hpp"

namespace fs = std::filesystem;

namespace {

// exit codes
constexpr int kOk = 0;
constexpr int kRuntime = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

unsigned default_workers() {
    if (const char* env = std::getenv("STDF_WORKERS")) {
        try {
            const long v = std::stol(env);
            if (v >= 1) return static_cast<unsigned>(v);
        } catch (const std::exception&) {
        }
        std::cerr << "warning: ignoring invalid STDF_WORKERS='" << env << "'\n";
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

struct SimulateArgs {
    std::string dgp;
    std::optional<std::size_t> n, reps;
    std::optional<std::uint64_t> seed;
    std::string out = ".";
    std::string estimators;
    std::string config;
    unsigned workers = 0;
    bool quiet = false;
};

int run_simulate(const SimulateArgs& a) {
    stdf::ExperimentConfig config;
    try {
        if (a.dgp.empty() && a.config.empty()) throw UsageError("simulate needs --dgp or --config");
        config = stdf::ExperimentConfig::defaults(stdf::dgp_from_name(a.dgp.empty() ? "cauchy" : a.dgp));
        if (!a.config.empty()) {
            if (!fs::exists(a.config)) throw UsageError("config file not found: " + a.config);
            config = stdf::load_config(a.config, config);
        }
        std::map<std::string, std::string> flags;
        if (!a.estimators.empty()) flags["experiment.estimators"] = a.estimators;
        if (!a.dgp.empty()) flags["experiment.dgp"] = a.dgp;
        stdf::apply_entries(config, flags);
        if (a.n) config.n = *a.n;
        if (a.reps) config.reps = *a.reps;
        if (a.seed) config.seed = *a.seed;
        config.validate();
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }

    const unsigned workers = a.workers ? a.workers : default_workers();
    try {
        fs::create_directories(a.out);
        if (!a.quiet) {
            std::cerr << "simulating " << config.dgp.name << ": n=" << config.n << " reps=" << config.reps
                      << " estimators=" << config.estimators.size() << " workers=" << workers << '\n';
        }
        const auto table = stdf::run_experiment(config, workers);
        const fs::path csv = fs::path(a.out) / (config.dgp.name + ".csv");
        const fs::path manifest = fs::path(a.out) / (config.dgp.name + ".manifest.json");
        stdf::write_metrics_csv(table, csv);
        stdf::write_manifest(manifest, config, workers, a.config);
        if (!a.quiet) std::cerr << "wrote " << csv.string() << " and " << manifest.string() << '\n';
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kRuntime;
    }
    return kOk;
}

int run_plot(const std::vector<std::string>& inputs, const std::string& out, bool log_y) {
    try {
        std::vector<stdf::MetricsRow> rows;
        for (const auto& in : inputs) {
            auto t = stdf::read_metrics_csv(in);
            rows.insert(rows.end(), t.rows.begin(), t.rows.end());
        }
        stdf::PlotOptions opt;
        opt.log_y = log_y;
        for (const auto& p : stdf::write_metric_plots(rows, out, opt)) std::cout << p.string() << '\n';
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kRuntime;
    }
    return kOk;
}

// Headerless comma-separated reals, one observation per line.
stdf::Sample read_data(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        std::vector<double> values;
        std::stringstream ss(line);
        std::string cell;
        std::size_t col = 0;
        while (std::getline(ss, cell, ',')) {
            ++col;
            std::size_t used = 0;
            double v = 0.0;
            bool ok = true;
            try {
                v = std::stod(cell, &used);
                ok = cell.find_first_not_of(" \t", used) == std::string::npos;
            } catch (const std::exception&) {
                ok = false;
            }
            if (!ok) {
                throw std::runtime_error(path + ": non-numeric value '" + cell + "' at row " + std::to_string(row) +
                                         ", column " + std::to_string(col));
            }
            values.push_back(v);
        }
        if (!rows.empty() && values.size() != rows.front().size()) {
            throw std::runtime_error(path + ": row " + std::to_string(row) + " has " +
                                     std::to_string(values.size()) + " columns, expected " +
                                     std::to_string(rows.front().size()));
        }
        rows.push_back(std::move(values));
    }
    if (rows.empty()) throw std::runtime_error(path + ": no data");
    return stdf::Sample::from_rows(rows);
}

struct EstimateArgs {
    std::string data;
    int k = 0;
    std::string points;
    std::string estimator = "empirical";
    std::string rho_method;
};

int run_estimate(const EstimateArgs& a) {
    stdf::EstimatorSpec spec;
    std::vector<stdf::Point> points;
    try {
        points = stdf::parse_points(a.points);
        if (points.empty()) throw std::invalid_argument("--points is empty");
        const bool is_table_id = [&] {
            for (const auto& e : stdf::table_estimators()) {
                if (e.id == a.estimator) return true;
            }
            return false;
        }();
        if (is_table_id && a.rho_method.empty()) {
            spec = stdf::estimator_from_id(a.estimator);
        } else {
            const auto method = stdf::parse_stdf_method(a.estimator);
            std::string rho = a.rho_method;
            if (rho.empty()) rho = method == stdf::StdfMethod::empirical ? "none" : "penalized-agg";
            spec = stdf::estimator_from_id(std::string(stdf::to_string(method)) + ":" + rho);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }

    try {
        const auto sample = read_data(a.data);
        for (const auto& x : points) {
            if (x.dim() != sample.d()) {
                throw std::runtime_error("point has " + std::to_string(x.dim()) + " coordinates but data has " +
                                         std::to_string(sample.d()) + " columns");
            }
        }
        const auto ranks = stdf::compute_ranks(sample);
        stdf::EstimationContext ctx(ranks);

        for (std::size_t j = 0; j < sample.d(); ++j) std::cout << 'x' << j + 1 << ',';
        std::cout << "estimate,rho\n";
        for (const auto& x : points) {
            const double v = stdf::evaluate_estimator(spec, ctx, a.k, x);
            for (std::size_t j = 0; j < x.dim(); ++j) std::cout << stdf::format_double(x[j]) << ',';
            std::cout << stdf::format_double(v) << ',';
            if (spec.rho != stdf::RhoMethod::none) std::cout << stdf::format_double(ctx.rho(spec, x));
            std::cout << '\n';
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kRuntime;
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Stable tail dependence function estimators and their simulation study"};
    app.require_subcommand(1);

    SimulateArgs sim;
    auto* simulate = app.add_subcommand("simulate", "Run the Monte Carlo study for one DGP");
    simulate->add_option("--dgp", sim.dgp, "DGP name");
    simulate->add_option("--n", sim.n, "Sample size")->check(CLI::PositiveNumber);
    simulate->add_option("--reps", sim.reps, "Number of replications")->check(CLI::PositiveNumber);
    simulate->add_option("--seed", sim.seed, "Base seed");
    simulate->add_option("--out", sim.out, "Output directory")->capture_default_str();
    simulate->add_option("--estimators", sim.estimators, "Comma-separated estimator ids");
    simulate->add_option("--config", sim.config, "Key-value config file or run manifest");
    simulate->add_option("--workers", sim.workers, "Worker threads (default: $STDF_WORKERS or all cores)")
        ->check(CLI::PositiveNumber);
    simulate->add_flag("--quiet,-q", sim.quiet, "No progress messages");

    std::vector<std::string> plot_in;
    std::string plot_out = ".";
    bool log_y = false;
    auto* plot = app.add_subcommand("plot", "Draw bias^2, variance and MSE against k as SVG");
    plot->add_option("--in", plot_in, "Metrics CSV files")->required();
    plot->add_option("--out", plot_out, "Output directory")->capture_default_str();
    plot->add_flag("--log-y", log_y, "Logarithmic y axis");

    EstimateArgs est;
    auto* estimate = app.add_subcommand("estimate", "Estimate the stdf from a data file");
    estimate->add_option("--data", est.data, "Headerless CSV, one observation per row")->required();
    estimate->add_option("--k", est.k, "Number of upper order statistics")->required()->check(CLI::PositiveNumber);
    estimate->add_option("--points", est.points, "Evaluation points, e.g. 1:1,0.3:0.7")->required();
    estimate->add_option("--estimator", est.estimator, "empirical, dot, dot-aggregated, beirlant or a catalogue id")
        ->capture_default_str();
    estimate->add_option("--rho-method", est.rho_method,
                         "fougeres-pointwise, fougeres-agg, beirlant-pointwise, goegebeur-pointwise, penalized-agg");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    if (*simulate) return run_simulate(sim);
    if (*plot) return run_plot(plot_in, plot_out, log_y);
    return run_estimate(est);
}
